#include <bit>

#include "yasca/kernels.hpp"

namespace yasca::kernels::scalar {

void pair_popcount(const BitMatrixView& m, std::size_t u, std::size_t v_begin, BitOp op,
                   std::span<std::uint32_t> out) {
    for (std::size_t v = v_begin; v < m.nodes; ++v) {
        std::uint32_t count = 0;
        for (std::size_t w = 0; w < m.words; ++w) {
            const std::uint64_t a = m.bits[w * m.nodes + u];
            const std::uint64_t b = m.bits[w * m.nodes + v];
            count += static_cast<std::uint32_t>(std::popcount(op == BitOp::And ? (a & b) : (a ^ b)));
        }
        out[v - v_begin] = count;
    }
}

namespace {

template <class Term>
double lane_sum(std::span<const double> xs, Term term) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t body = xs.size() & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        for (std::size_t j = 0; j < 4; ++j) lane[j] += term(xs[i + j]);
    }
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = body; i < xs.size(); ++i) total += term(xs[i]);
    return total;
}

}  // namespace

double sum(std::span<const double> xs) {
    return lane_sum(xs, [](double x) { return x; });
}

double sum_squares(std::span<const double> xs) {
    return lane_sum(xs, [](double x) { return x * x; });
}

}  // namespace yasca::kernels::scalar
