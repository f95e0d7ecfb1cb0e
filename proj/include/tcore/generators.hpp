#pragma once

/// The handful of q-series the congruence machinery is built on:
///
///   a_t(n): number of t-core partitions of n, generated by
///           (q^t;q^t)^t / (q;q);
///   b(n):   coefficients of q (q^8;q^8)(q^16;q^16), a weight-one form;
///   c(n):   coefficients of (q;q)^3, supported on triangular numbers;
///   the product (q;q)(q^2;q^2), used as a comparison series mod 2.
///
/// b and c also have coefficient-level closed forms, exposed separately so
/// sweeps can reach arguments far beyond any storable series.

#include <cstdint>

#include "tcore/series.hpp"

namespace tcore {

enum class SeriesTag { ATCore, BSeries, CSeries, DasProduct };

/// A generating function together with what it counts.  For ATCore, t is
/// the core size; the other tags leave t = 0.
struct NamedSeries {
    SeriesTag tag;
    std::int64_t t;
    TruncatedSeries data;
};

/// Generating function of t-core partition counts, coefficients
/// a_t(0), ..., a_t(length - 1).  Requires t >= 2.
NamedSeries tcore_series(std::int64_t t, std::size_t length, CoefficientRing ring);

/// q (q^8;q^8)(q^16;q^16) = q - q^9 - q^17 + ...; coefficient 0 is 0 and
/// the shift is an index remap of the double product, not a multiplication.
NamedSeries b_series(std::size_t length, CoefficientRing ring);

/// (q;q)^3 = 1 - 3q + 5q^3 - 7q^6 + ...
NamedSeries c_series(std::size_t length, CoefficientRing ring);

/// (q;q)(q^2;q^2).
NamedSeries das_product_series(std::size_t length, CoefficientRing ring);

/// c(n) without the series: (-1)^k (2k+1) when n = k(k+1)/2, else 0.
std::int64_t c_closed(std::uint64_t n);

/// a_2(n) without the series: 1 when n is triangular, else 0.
int a2_closed(std::uint64_t n);

} // namespace tcore
