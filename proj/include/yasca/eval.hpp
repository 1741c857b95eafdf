#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "yasca/partition.hpp"

namespace yasca {

/// Normalized mutual information with geometric-mean normalization,
/// I(a; b) / sqrt(H(a) H(b)), natural logarithms.
///
/// Two single-cluster partitions score 1; when exactly one side has zero
/// entropy the score is 0. Terms are summed in sorted order, so the result
/// is exactly symmetric and independent of community numbering.
double nmi(const Partition& a, const Partition& b);

/// Each node drawn uniformly from k labels, then normalized (empty labels
/// vanish). Requires 1 <= k <= n.
Partition random_partition(std::size_t n, std::size_t k, std::uint64_t rng_seed);

/// Node label -> community label, in file or node order.
struct LabeledPartition {
    std::vector<std::pair<std::string, std::string>> entries;

    friend bool operator==(const LabeledPartition&, const LabeledPartition&) = default;
};

/// Names community ids by their decimal value.
LabeledPartition label_partition(const Partition& p, std::span<const std::string> node_labels);

/// Inverse of label_partition: maps a labelled assignment onto the dense
/// node order. Throws a data error naming every node missing from, or
/// unknown to, node_labels.
Partition align_partition(const LabeledPartition& lp, std::span<const std::string> node_labels);

/// "node<TAB>community" lines; '#' starts a comment line. Any run of
/// whitespace is accepted as the separator.
LabeledPartition read_labeled_partition(std::istream& in);
void write_labeled_partition(std::ostream& out, const LabeledPartition& lp);

}  // namespace yasca
