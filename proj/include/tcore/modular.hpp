#pragma once

/// Number-theoretic support: Kronecker symbol, eta-quotient admissibility
/// and cusp orders, the index of Gamma_0(N), the Hecke operator T_p, and a
/// numerical eigenform check on truncated q-expansions.

#include <cstdint>
#include <map>

#include <boost/rational.hpp>

#include "tcore/series.hpp"

namespace tcore {

using Rational = boost::rational<std::int64_t>;

/// Deterministic trial-division primality; intended for p up to ~10^9.
bool is_prime(std::uint64_t n);

/// Kronecker symbol (a/n) extended to all integers: (a/1) = 1, (a/0) = 1
/// exactly when a = +-1, (a/2) by the mod-8 rule, multiplicative in n, and
/// (a/-1) = -1 for negative a.
int kronecker(const BigInt& a, const BigInt& n);
int kronecker(std::int64_t a, std::int64_t n);

/// [SL2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p).
std::uint64_t gamma0_index(std::uint64_t N);

/// prod_{delta | N} eta(delta z)^{r_delta}.  Exponents may be negative;
/// zero exponents are not stored.
struct EtaQuotient {
    EtaQuotient(std::uint64_t level, std::map<std::uint64_t, std::int64_t> exponents);

    std::uint64_t level;
    std::map<std::uint64_t, std::int64_t> exponents; // delta -> r_delta
};

/// The nebentypus attached to an admissible eta-quotient: chi(d) is the
/// Kronecker symbol ((-1)^k s / d) with s = prod delta^{r_delta}.  When
/// negative exponents make s a fraction num/den, the symbol is evaluated on
/// (-1)^k num den, which differs from s by the square den^2.
struct CharacterSpec {
    std::int64_t weight = 0;
    BigInt s_num = 1;
    BigInt s_den = 1;
    BigInt discriminant = 1;

    int chi(const BigInt& d) const { return kronecker(discriminant, d); }
};

struct AdmissibilityResult {
    bool weight_integral = false;
    std::int64_t twice_weight = 0;
    bool cond_A = false; // sum delta r_delta = 0 mod 24
    bool cond_B = false; // sum (N/delta) r_delta = 0 mod 24
    CharacterSpec character; // meaningful only when weight_integral
    std::map<std::uint64_t, Rational> cusp_orders; // one cusp per divisor d of N
    Rational min_cusp_order = 0;
    bool holomorphic_at_cusps = false;

    bool admissible() const { return weight_integral && cond_A && cond_B; }
};

/// Evaluate every admissibility condition; nothing throws, failures are
/// flags in the result.
AdmissibilityResult admissibility_check(const EtaQuotient& eq);

/// Order of vanishing at the cusp c/d of Gamma_0(N):
/// (N/24) sum_{delta | N} gcd(d, delta)^2 r_delta / (gcd(d, N/d) d delta).
/// The numerator c never enters the formula and is ignored.
Rational cusp_order(const EtaQuotient& eq, std::uint64_t d, std::uint64_t c = 1);

/// T_p on a truncated q-expansion of weight k and character chi:
/// coefficient n of the result is a(pn) + chi(p) p^{k-1} a(n/p), where
/// a(n/p) = 0 unless p | n.  Result length is floor((len-1)/p) + 1.
TruncatedSeries hecke_Tp(const TruncatedSeries& f, std::uint64_t p, std::int64_t k,
                         const CharacterSpec& chi);

struct EigenCheckResult {
    bool is_eigenform = false;
    BigInt lambda = 0;
    std::size_t verified_count = 0; // coefficients of T_p f compared
    std::size_t first_mismatch = 0; // meaningful only when !is_eigenform
};

/// Check T_p f = a(p) f on the overlapping truncation.  Requires f to be
/// normalized: coefficient 0 is 0 and coefficient 1 is 1.
EigenCheckResult eigen_check(const TruncatedSeries& f, std::uint64_t p,
                             std::int64_t k, const CharacterSpec& chi);

} // namespace tcore
