#include "tcore/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace tcore {

NamedSeries tcore_series(std::int64_t t, std::size_t length, CoefficientRing ring) {
    if (t < 2)
        throw std::invalid_argument("tcore_series: t must be at least 2");
    TruncatedSeries num = euler_product(t, t, length, ring);
    TruncatedSeries den = euler_product(1, 1, length, ring);
    return NamedSeries{SeriesTag::ATCore, t, mul(num, reciprocal(den))};
}

NamedSeries b_series(std::size_t length, CoefficientRing ring) {
    if (length == 0)
        throw std::invalid_argument("series length must be at least 1");
    if (length == 1)
        return NamedSeries{SeriesTag::BSeries, 0, TruncatedSeries::zero(ring, 1)};
    TruncatedSeries prod = mul(euler_product(8, 1, length - 1, ring),
                               euler_product(16, 1, length - 1, ring));
    return NamedSeries{SeriesTag::BSeries, 0, shifted(prod, 1)};
}

NamedSeries c_series(std::size_t length, CoefficientRing ring) {
    return NamedSeries{SeriesTag::CSeries, 0, euler_product(1, 3, length, ring)};
}

NamedSeries das_product_series(std::size_t length, CoefficientRing ring) {
    return NamedSeries{SeriesTag::DasProduct, 0,
                       mul(euler_product(1, 1, length, ring),
                           euler_product(2, 1, length, ring))};
}

namespace {

// Integer square root with floating point start and exact correction.
std::uint64_t isqrt(std::uint64_t n) {
    if (n == 0)
        return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

// If n = k(k+1)/2, return k; otherwise return -1.
std::int64_t triangular_index(std::uint64_t n) {
    std::uint64_t m = 8 * n + 1;
    std::uint64_t s = isqrt(m);
    if (s * s != m)
        return -1;
    return static_cast<std::int64_t>((s - 1) / 2);
}

} // namespace

std::int64_t c_closed(std::uint64_t n) {
    std::int64_t k = triangular_index(n);
    if (k < 0)
        return 0;
    std::int64_t v = 2 * k + 1;
    return (k % 2 == 0) ? v : -v;
}

int a2_closed(std::uint64_t n) {
    return triangular_index(n) >= 0 ? 1 : 0;
}

} // namespace tcore
