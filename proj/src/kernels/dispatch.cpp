#include <cstdlib>
#include <string>

#include "yasca/error.hpp"
#include "yasca/kernels.hpp"

namespace yasca::kernels {

namespace {

struct Table {
    Isa isa;
    void (*pair_popcount)(const BitMatrixView&, std::size_t, std::size_t, BitOp, std::span<std::uint32_t>);
    double (*sum)(std::span<const double>);
    double (*sum_squares)(std::span<const double>);
};

bool cpu_has_avx2() {
#if defined(YASCA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
    return false;
#endif
}

Table make_table(Isa isa) {
#if defined(YASCA_HAVE_AVX2)
    if (isa == Isa::Avx2) return {Isa::Avx2, avx2::pair_popcount, avx2::sum, avx2::sum_squares};
#endif
    (void)isa;
    return {Isa::Scalar, scalar::pair_popcount, scalar::sum, scalar::sum_squares};
}

Table select() {
    if (const char* forced = std::getenv("YASCA_KERNELS")) {
        const std::string name(forced);
        if (name == "scalar") return make_table(Isa::Scalar);
        if (name == "avx2") {
            if (!supported(Isa::Avx2)) throw usage_error("kernels", "YASCA_KERNELS=avx2 but AVX2 is unavailable");
            return make_table(Isa::Avx2);
        }
        throw usage_error("kernels", "unknown YASCA_KERNELS value '" + name + "'");
    }
    return make_table(supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar);
}

const Table& table() {
    static const Table t = select();
    return t;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool supported(Isa isa) {
    if (isa == Isa::Scalar) return true;
    static const bool avx2 = cpu_has_avx2();
    return avx2;
}

Isa active_isa() { return table().isa; }

void pair_popcount(const BitMatrixView& m, std::size_t u, std::size_t v_begin, BitOp op,
                   std::span<std::uint32_t> out) {
    table().pair_popcount(m, u, v_begin, op, out);
}

double sum(std::span<const double> xs) { return table().sum(xs); }

double sum_squares(std::span<const double> xs) { return table().sum_squares(xs); }

}  // namespace yasca::kernels
