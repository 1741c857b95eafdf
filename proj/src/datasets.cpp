#include "yasca/datasets.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <sstream>

#include "yasca/error.hpp"
#include "yasca/graph_io.hpp"

namespace yasca {

namespace {
constexpr const char* kStage = "fetch-datasets";
}

const std::vector<DatasetInfo>& known_datasets() {
    static const std::vector<DatasetInfo> sets = {
        {"karate", "karate.gml", "http://www-personal.umich.edu/~mejn/netdata/karate.zip", 34, 78,
         "faction each member joined after the club split (Zachary 1977)"},
        {"dolphins", "dolphins.gml", "http://www-personal.umich.edu/~mejn/netdata/dolphins.zip", 62, 159,
         "the two groups the community split into (Lusseau et al. 2003)"},
        {"polbooks", "polbooks.gml", "http://www-personal.umich.edu/~mejn/netdata/polbooks.zip", 105, 441,
         "node 'value' attribute: l (liberal), n (neutral), c (conservative)"},
    };
    return sets;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error(kStage, "cannot open '" + path.string() + "'");

    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw invariant_error(kStage, "SHA-256 initialisation failed");
    }
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);

    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::map<std::string, std::string> read_checksums(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw usage_error(kStage, "cannot open checksum file '" + path.string() + "'");
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string sum;
        std::string file;
        if (!(fields >> sum) || sum.starts_with('#')) continue;
        if (!(fields >> file)) throw usage_error(kStage, "malformed checksum line '" + line + "'");
        if (file.starts_with('*')) file.erase(0, 1);
        out[file] = sum;
    }
    return out;
}

DatasetCheck verify_dataset(const std::filesystem::path& dir, const DatasetInfo& info,
                            const std::optional<std::string>& expected_sha256) {
    DatasetCheck check;
    check.name = info.name;
    const auto path = dir / info.file;
    if (!std::filesystem::exists(path)) {
        check.message = "missing " + path.string();
        return check;
    }
    check.present = true;
    check.sha256 = sha256_file(path);
    if (expected_sha256 && *expected_sha256 != check.sha256) {
        check.message = "checksum mismatch (expected " + *expected_sha256 + ")";
        return check;
    }
    try {
        const Graph g = load_graph(path);
        if (g.node_count() != info.nodes || g.edge_count() != info.edges) {
            check.message = "expected " + std::to_string(info.nodes) + " nodes / " + std::to_string(info.edges) +
                            " edges, found " + std::to_string(g.node_count()) + " / " +
                            std::to_string(g.edge_count());
            return check;
        }
    } catch (const Error& e) {
        check.message = e.what();
        return check;
    }
    check.ok = true;
    check.message = expected_sha256 ? "ok (checksum and structure)" : "ok (structure; no checksum pinned)";
    return check;
}

}  // namespace yasca
