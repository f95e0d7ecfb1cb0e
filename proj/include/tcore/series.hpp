#pragma once

/// Truncated formal power series over an exact (arbitrary precision) or
/// modular coefficient ring.
///
/// A series stores coefficients c(0), ..., c(len-1) of a formal power series
/// in q, truncated at order len.  Truncation length is part of the value:
/// binary operations produce a result of length min(lhs, rhs) and never
/// zero-extend.  Within the stored prefix every operation is exact -- the
/// modular rings reduce coefficients, they never drop cross terms.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tcore {

using BigInt = boost::multiprecision::cpp_int;

/// Coefficient domain: the integers, or the integers mod m (m >= 2).
class CoefficientRing {
public:
    static CoefficientRing exact() { return CoefficientRing(0); }

    static CoefficientRing mod(std::uint32_t m);

    bool is_exact() const { return m_ == 0; }
    bool is_mod() const { return m_ != 0; }

    /// The modulus; only meaningful for modular rings.
    std::uint32_t modulus() const;

    /// Canonical representative of x in this ring (x itself, or x mod m in
    /// [0, m)).
    BigInt canonical(const BigInt& x) const;

    friend bool operator==(const CoefficientRing& a, const CoefficientRing& b) {
        return a.m_ == b.m_;
    }
    friend bool operator!=(const CoefficientRing& a, const CoefficientRing& b) {
        return !(a == b);
    }

private:
    explicit CoefficientRing(std::uint32_t m) : m_(m) {}

    std::uint32_t m_; // 0 = exact
};

class TruncatedSeries {
public:
    /// Build from explicit coefficients (reduced into the ring).  The list
    /// must be non-empty: a series always carries at least c(0).
    TruncatedSeries(CoefficientRing ring, const std::vector<BigInt>& coeffs);

    static TruncatedSeries zero(CoefficientRing ring, std::size_t length);
    static TruncatedSeries one(CoefficientRing ring, std::size_t length);

    CoefficientRing ring() const { return ring_; }
    std::size_t length() const { return len_; }

    /// c(n) as a canonical ring representative.  n must be < length().
    BigInt coeff(std::size_t n) const;

    /// All stored coefficients, canonical representatives.
    std::vector<BigInt> coeffs() const;

    std::size_t nonzero_count() const;

    bool operator==(const TruncatedSeries& other) const;
    bool operator!=(const TruncatedSeries& other) const { return !(*this == other); }

private:
    TruncatedSeries(CoefficientRing ring, std::size_t len);

    enum class Backend { Exact, Word, Bits };
    Backend backend() const;

    CoefficientRing ring_;
    std::size_t len_;
    // Exactly one of these is populated, selected by the ring: arbitrary
    // precision integers, one machine word per residue (m > 2), or a bit
    // per residue (m == 2).
    std::vector<BigInt> exact_;
    std::vector<std::uint32_t> words_;
    std::vector<std::uint64_t> bits_;

    friend TruncatedSeries add(const TruncatedSeries&, const TruncatedSeries&);
    friend TruncatedSeries sub(const TruncatedSeries&, const TruncatedSeries&);
    friend TruncatedSeries mul(const TruncatedSeries&, const TruncatedSeries&);
    friend TruncatedSeries reciprocal(const TruncatedSeries&);
    friend TruncatedSeries reduce_mod(const TruncatedSeries&, std::uint32_t);
    friend TruncatedSeries shifted(const TruncatedSeries&, std::size_t);
    friend TruncatedSeries euler_product(std::int64_t, std::int64_t, std::size_t,
                                         CoefficientRing);
};

/// Coefficient-wise sum / difference, truncated to the shorter operand.
TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g);

/// Cauchy product truncated to min(f.length(), g.length()).  Every
/// coefficient of the result is the full convolution sum; sparsity is only
/// used to skip zero terms.
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);

/// Multiplicative inverse of f as a power series.  Requires c(0) to be a
/// unit in the ring; throws std::invalid_argument otherwise.
TruncatedSeries reciprocal(const TruncatedSeries& f);

/// f / g, i.e. mul(f, reciprocal(g)).
TruncatedSeries div(const TruncatedSeries& f, const TruncatedSeries& g);

/// Reduce an exact or modular series to the ring mod m.  For a modular
/// source the new modulus must divide the old one.
TruncatedSeries reduce_mod(const TruncatedSeries& f, std::uint32_t m);

/// q^k * f as an index remap: coefficient n of the result is coefficient
/// n - k of f.  The length grows by k.
TruncatedSeries shifted(const TruncatedSeries& f, std::size_t k);

/// The Euler product (q^a; q^a)_infty^e = prod_{k>=1} (1 - q^{a k})^e,
/// truncated to `length` coefficients over `ring`.  e may be negative
/// (inverse powers) or zero (the constant series 1).
TruncatedSeries euler_product(std::int64_t a, std::int64_t e, std::size_t length,
                              CoefficientRing ring);

} // namespace tcore
