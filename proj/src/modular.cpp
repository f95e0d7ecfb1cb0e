#include "tcore/modular.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcore {

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

int kronecker(const BigInt& a_in, const BigInt& n_in) {
    BigInt a = a_in, n = n_in;
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    // Split off the even part of n; each factor of 2 contributes (a/2).
    if (n % 2 == 0) {
        if (a % 2 == 0)
            return 0;
        unsigned twos = 0;
        while (n % 2 == 0) {
            n /= 2;
            ++twos;
        }
        if (twos % 2 == 1) {
            BigInt am8 = a % 8;
            if (am8 < 0)
                am8 += 8;
            if (am8 == 3 || am8 == 5)
                result = -result;
        }
    }
    // Now n is odd and positive; run quadratic reciprocity.
    a %= n;
    if (a < 0)
        a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            BigInt nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int kronecker(std::int64_t a, std::int64_t n) {
    return kronecker(BigInt(a), BigInt(n));
}

std::uint64_t gamma0_index(std::uint64_t N) {
    if (N == 0)
        throw std::invalid_argument("gamma0_index: level must be positive");
    std::uint64_t index = N, rest = N;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0)
            continue;
        index = index / p * (p + 1);
        while (rest % p == 0)
            rest /= p;
    }
    if (rest > 1)
        index = index / rest * (rest + 1);
    return index;
}

EtaQuotient::EtaQuotient(std::uint64_t lvl, std::map<std::uint64_t, std::int64_t> exps)
    : level(lvl), exponents(std::move(exps)) {
    if (level == 0)
        throw std::invalid_argument("eta quotient level must be positive");
    for (const auto& [delta, r] : exponents) {
        if (delta == 0 || level % delta != 0)
            throw std::invalid_argument("eta quotient factor delta = " +
                                        std::to_string(delta) +
                                        " does not divide the level");
        if (r == 0)
            throw std::invalid_argument("eta quotient exponents must be nonzero");
    }
}

namespace {

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        small.push_back(d);
        if (d != n / d)
            large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

BigInt pow_big(std::uint64_t base, std::uint64_t exp) {
    BigInt r = 1, b = base;
    while (exp > 0) {
        if (exp & 1)
            r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

} // namespace

Rational cusp_order(const EtaQuotient& eq, std::uint64_t d, std::uint64_t /*c*/) {
    std::uint64_t N = eq.level;
    if (d == 0 || N % d != 0)
        throw std::invalid_argument("cusp_order: d = " + std::to_string(d) +
                                    " does not divide the level " +
                                    std::to_string(N));
    std::uint64_t g2 = std::gcd(d, N / d);
    Rational sum = 0;
    for (const auto& [delta, r] : eq.exponents) {
        std::uint64_t g = std::gcd(d, delta);
        sum += Rational(static_cast<std::int64_t>(g * g) * r,
                        static_cast<std::int64_t>(g2 * d * delta));
    }
    return Rational(static_cast<std::int64_t>(N), 24) * sum;
}

AdmissibilityResult admissibility_check(const EtaQuotient& eq) {
    AdmissibilityResult res;
    std::uint64_t N = eq.level;

    std::int64_t sum_r = 0;
    BigInt sum_a = 0, sum_b = 0;
    BigInt s_num = 1, s_den = 1;
    for (const auto& [delta, r] : eq.exponents) {
        sum_r += r;
        sum_a += BigInt(delta) * r;
        sum_b += BigInt(N / delta) * r;
        if (r > 0)
            s_num *= pow_big(delta, static_cast<std::uint64_t>(r));
        else
            s_den *= pow_big(delta, static_cast<std::uint64_t>(-r));
    }
    res.twice_weight = sum_r;
    res.weight_integral = (sum_r % 2 == 0);
    res.cond_A = (sum_a % 24 == 0);
    res.cond_B = (sum_b % 24 == 0);

    res.character.weight = sum_r / 2;
    res.character.s_num = s_num;
    res.character.s_den = s_den;
    res.character.discriminant =
        (res.character.weight % 2 == 0 ? s_num : -s_num) * s_den;

    bool first = true;
    for (std::uint64_t d : divisors_of(N)) {
        Rational ord = cusp_order(eq, d);
        res.cusp_orders.emplace(d, ord);
        if (first || ord < res.min_cusp_order) {
            res.min_cusp_order = ord;
            first = false;
        }
    }
    res.holomorphic_at_cusps = res.min_cusp_order >= 0;
    return res;
}

TruncatedSeries hecke_Tp(const TruncatedSeries& f, std::uint64_t p, std::int64_t k,
                         const CharacterSpec& chi) {
    if (!is_prime(p))
        throw std::invalid_argument("hecke_Tp: p = " + std::to_string(p) +
                                    " is not prime");
    if (k < 1)
        throw std::invalid_argument("hecke_Tp: weight must be a positive integer");
    std::size_t out_len = (f.length() - 1) / p + 1;
    BigInt scale = BigInt(chi.chi(BigInt(p))) * pow_big(p, static_cast<std::uint64_t>(k - 1));
    std::vector<BigInt> out(out_len);
    for (std::size_t n = 0; n < out_len; ++n) {
        BigInt v = f.coeff(n * p);
        if (scale != 0 && n % p == 0)
            v += scale * f.coeff(n / p);
        out[n] = v;
    }
    return TruncatedSeries(f.ring(), out);
}

EigenCheckResult eigen_check(const TruncatedSeries& f, std::uint64_t p,
                             std::int64_t k, const CharacterSpec& chi) {
    if (f.length() < 2 || f.coeff(0) != 0 ||
        f.coeff(1) != f.ring().canonical(BigInt(1)))
        throw std::invalid_argument(
            "eigen_check: series must be normalized (a(0)=0, a(1)=1)");
    if (f.length() <= p)
        throw std::invalid_argument(
            "eigen_check: series too short to read the eigenvalue a(p)");

    EigenCheckResult res;
    res.lambda = f.coeff(static_cast<std::size_t>(p));
    TruncatedSeries tp = hecke_Tp(f, p, k, chi);
    res.verified_count = tp.length();
    for (std::size_t n = 0; n < tp.length(); ++n) {
        BigInt want = f.ring().canonical(res.lambda * f.coeff(n));
        if (tp.coeff(n) != want) {
            res.is_eigenform = false;
            res.first_mismatch = n;
            return res;
        }
    }
    res.is_eigenform = true;
    return res;
}

} // namespace tcore
