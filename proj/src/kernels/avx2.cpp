// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "yasca/kernels.hpp"

namespace yasca::kernels::avx2 {

namespace {

// Per-64-bit-lane popcount: nibble lookup through vpshufb, then vpsadbw
// folds the byte counts of each lane.
inline __m256i popcount_epi64(__m256i x) {
    const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                            0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(x, low);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(x, 4), low);
    const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
    return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

}  // namespace

void pair_popcount(const BitMatrixView& m, std::size_t u, std::size_t v_begin, BitOp op,
                   std::span<std::uint32_t> out) {
    const std::size_t n = m.nodes;
    const std::uint64_t* bits = m.bits.data();
    std::size_t v = v_begin;
    for (; v + 4 <= n; v += 4) {
        __m256i acc = _mm256_setzero_si256();
        for (std::size_t w = 0; w < m.words; ++w) {
            const __m256i a = _mm256_set1_epi64x(static_cast<long long>(bits[w * n + u]));
            const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bits + w * n + v));
            const __m256i x = op == BitOp::And ? _mm256_and_si256(a, b) : _mm256_xor_si256(a, b);
            acc = _mm256_add_epi64(acc, popcount_epi64(x));
        }
        alignas(32) std::uint64_t lanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
        for (std::size_t j = 0; j < 4; ++j) out[v - v_begin + j] = static_cast<std::uint32_t>(lanes[j]);
    }
    for (; v < n; ++v) {
        std::uint32_t count = 0;
        for (std::size_t w = 0; w < m.words; ++w) {
            const std::uint64_t a = bits[w * n + u];
            const std::uint64_t b = bits[w * n + v];
            count += static_cast<std::uint32_t>(std::popcount(op == BitOp::And ? (a & b) : (a ^ b)));
        }
        out[v - v_begin] = count;
    }
}

namespace {

template <bool Square>
double lane_sum(std::span<const double> xs) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t body = xs.size() & ~std::size_t{3};
    for (std::size_t i = 0; i < body; i += 4) {
        __m256d x = _mm256_loadu_pd(xs.data() + i);
        if constexpr (Square) x = _mm256_mul_pd(x, x);
        acc = _mm256_add_pd(acc, x);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = body; i < xs.size(); ++i) total += Square ? xs[i] * xs[i] : xs[i];
    return total;
}

}  // namespace

double sum(std::span<const double> xs) { return lane_sum<false>(xs); }

double sum_squares(std::span<const double> xs) { return lane_sum<true>(xs); }

}  // namespace yasca::kernels::avx2
