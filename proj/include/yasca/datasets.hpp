#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace yasca {

/// A benchmark network and where it is published.
struct DatasetInfo {
    std::string name;
    std::string file;  // file name expected after unpacking
    std::string url;   // archive containing `file`
    std::size_t nodes;
    std::size_t edges;
    std::string truth_note;  // where the known communities come from
};

/// Zachary karate club, Lusseau dolphins, Krebs political books.
const std::vector<DatasetInfo>& known_datasets();

struct DatasetCheck {
    std::string name;
    bool present = false;
    bool ok = false;
    std::string sha256;
    std::string message;
};

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// "sha256  file" lines as written by sha256sum.
std::map<std::string, std::string> read_checksums(const std::filesystem::path& path);

/// Checks a downloaded dataset: parses it, compares node and edge counts
/// with the published ones, and compares the SHA-256 when one is pinned.
DatasetCheck verify_dataset(const std::filesystem::path& dir, const DatasetInfo& info,
                            const std::optional<std::string>& expected_sha256);

}  // namespace yasca
