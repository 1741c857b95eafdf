#pragma once

#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner loops, in a scalar reference form and SIMD variants.
// The dispatched entry points pick a variant once per process from the CPU
// features (override with YASCA_KERNELS=scalar|avx2). Every variant returns
// bit-identical results: integer kernels trivially, floating reductions by
// sharing one fixed summation order (four interleaved lanes, combined as
// (l0 + l1) + (l2 + l3), then the tail in index order).

namespace yasca::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
/// True when the variant was compiled in and the CPU can run it.
bool supported(Isa isa);
/// The variant used by the dispatched entry points.
Isa active_isa();

enum class BitOp { And, Xor };

/// Bit matrix over nodes, stored word-major: bits[w * n + v] holds bits
/// 64w..64w+63 of node v's row.
struct BitMatrixView {
    std::span<const std::uint64_t> bits;
    std::size_t nodes = 0;
    std::size_t words = 0;
};

/// out[v - v_begin] = popcount(row(u) OP row(v)) for v in [v_begin, nodes).
void pair_popcount(const BitMatrixView& m, std::size_t u, std::size_t v_begin, BitOp op,
                   std::span<std::uint32_t> out);

double sum(std::span<const double> xs);
double sum_squares(std::span<const double> xs);

namespace scalar {
void pair_popcount(const BitMatrixView& m, std::size_t u, std::size_t v_begin, BitOp op,
                   std::span<std::uint32_t> out);
double sum(std::span<const double> xs);
double sum_squares(std::span<const double> xs);
}  // namespace scalar

#if defined(YASCA_HAVE_AVX2)
namespace avx2 {
void pair_popcount(const BitMatrixView& m, std::size_t u, std::size_t v_begin, BitOp op,
                   std::span<std::uint32_t> out);
double sum(std::span<const double> xs);
double sum_squares(std::span<const double> xs);
}  // namespace avx2
#endif

}  // namespace yasca::kernels
