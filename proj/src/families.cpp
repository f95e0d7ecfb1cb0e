#include "tcore/families.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "tcore/modular.hpp"

namespace tcore {

// ---------------------------------------------------------------------------
// names
// ---------------------------------------------------------------------------

namespace {

struct FamilyNameEntry {
    FamilyId id;
    const char* name;
};

constexpr FamilyNameEntry kFamilyNames[] = {
    {FamilyId::HS3, "HS3"},
    {FamilyId::Eq5711, "Eq5711"},
    {FamilyId::GranvilleOno, "GranvilleOno"},
    {FamilyId::Lem4e2, "Lem4e2"},
    {FamilyId::Lem4e3, "Lem4e3"},
    {FamilyId::Lem4e6, "Lem4e6"},
    {FamilyId::Lem4e7, "Lem4e7"},
    {FamilyId::Lem4e8, "Lem4e8"},
    {FamilyId::Lem4e9, "Lem4e9"},
    {FamilyId::Lem4e10, "Lem4e10"},
    {FamilyId::Lem4e11, "Lem4e11"},
    {FamilyId::Das, "Das"},
    {FamilyId::Chain4e13, "Chain4e13"},
    {FamilyId::Chain4e18, "Chain4e18"},
    {FamilyId::Thm1i, "Thm1i"},
    {FamilyId::Thm1ii, "Thm1ii"},
    {FamilyId::Coro2i, "Coro2i"},
    {FamilyId::Coro2ii, "Coro2ii"},
    {FamilyId::Thm3i, "Thm3i"},
    {FamilyId::Thm3ii, "Thm3ii"},
    {FamilyId::Coro4i, "Coro4i"},
    {FamilyId::Coro4ii, "Coro4ii"},
};

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto la = static_cast<char>(std::tolower(static_cast<unsigned char>(a[i])));
        const auto lb = static_cast<char>(std::tolower(static_cast<unsigned char>(b[i])));
        if (la != lb) return false;
    }
    return true;
}

} // namespace

const char* family_id_name(FamilyId id) {
    for (const auto& entry : kFamilyNames)
        if (entry.id == id) return entry.name;
    throw std::logic_error("unknown family id");
}

std::optional<FamilyId> family_id_from_string(std::string_view name) {
    for (const auto& entry : kFamilyNames)
        if (iequals(entry.name, name)) return entry.id;
    return std::nullopt;
}

std::vector<FamilyId> all_family_ids() {
    std::vector<FamilyId> ids;
    for (const auto& entry : kFamilyNames) ids.push_back(entry.id);
    return ids;
}

// ---------------------------------------------------------------------------
// arithmetic helpers
// ---------------------------------------------------------------------------

namespace {

// Progression arguments are capped well below 2^63 so that 8*arg + 1 and
// friends can never overflow inside the closed-form evaluators.
constexpr std::int64_t kMaxArg = std::int64_t{1} << 59;

void require(bool ok, const std::string& message) {
    if (!ok) throw hypothesis_error(message);
}

void internal_check(bool ok, const char* what) {
    if (!ok) throw std::logic_error(what);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    const __int128 wide = static_cast<__int128>(a) * static_cast<__int128>(b);
    require(wide >= 0 && wide <= static_cast<__int128>(kMaxArg),
            "progression parameters exceed the supported argument range");
    return static_cast<std::int64_t>(wide);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    const __int128 wide = static_cast<__int128>(a) + static_cast<__int128>(b);
    require(wide >= -static_cast<__int128>(kMaxArg) && wide <= static_cast<__int128>(kMaxArg),
            "progression parameters exceed the supported argument range");
    return static_cast<std::int64_t>(wide);
}

std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
    std::int64_t out = 1;
    for (std::int64_t i = 0; i < exp; ++i) out = checked_mul(out, base);
    return out;
}

// Least positive inverse of a modulo m (m >= 2, gcd(a, m) = 1).
std::int64_t inv_mod_i64(std::int64_t a, std::int64_t m) {
    std::int64_t r0 = m, r1 = ((a % m) + m) % m;
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
    }
    internal_check(r0 == 1, "inverse does not exist");
    return ((s0 % m) + m) % m;
}

bool is_perfect_square(std::int64_t v) {
    if (v < 0) return false;
    const auto u = static_cast<std::uint64_t>(v);
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(u)));
    while (r > 0 && r * r > u) --r;
    while ((r + 1) * (r + 1) <= u) ++r;
    return r * r == u;
}

// ---------------------------------------------------------------------------
// claim construction
// ---------------------------------------------------------------------------

std::string linear_term(std::int64_t a, std::int64_t b) {
    std::ostringstream os;
    if (a == 1)
        os << "n";
    else
        os << a << "n";
    if (b > 0) os << " + " << b;
    return os.str();
}

std::string atn_term(std::int64_t t, std::int64_t a, std::int64_t b) {
    return "a_" + std::to_string(t) + "(" + linear_term(a, b) + ")";
}

std::string series_term(const SeriesSpec& spec) {
    switch (spec.kind) {
    case SeriesSpec::Kind::ATn:
        return atn_term(spec.t, spec.stride, spec.offset);
    case SeriesSpec::Kind::BSeries:
        return "b(" + linear_term(spec.stride, spec.offset) + ")";
    case SeriesSpec::Kind::CSeries:
        return "c(" + linear_term(spec.stride, spec.offset) + ")";
    case SeriesSpec::Kind::DasProduct:
        return "[(q;q)(q^2;q^2)]_{" + linear_term(spec.stride, spec.offset) + "}";
    case SeriesSpec::Kind::HS3Indicator:
        return "[3n + 1 is a square]";
    }
    throw std::logic_error("unknown series kind");
}

// Number of sweep values once the argument cap is applied: the largest
// count <= n_max with a*(count-1) + b <= cap.
std::int64_t capped_count(std::int64_t n_max, std::int64_t a, std::int64_t b, std::int64_t cap) {
    if (cap <= 0) return n_max;
    if (b > cap) return 0;
    internal_check(a > 0, "progression stride must be positive");
    return std::min(n_max, (cap - b) / a + 1);
}

CompiledClaim make_vanishing(std::int64_t t, std::int64_t a, std::int64_t b, std::uint32_t m,
                             std::int64_t n_count) {
    CompiledClaim c;
    c.kind = CompiledClaim::Kind::Vanishing;
    c.t = t;
    c.lhs_a = a;
    c.lhs_b = b;
    c.modulus = m;
    c.n_count = n_count;
    c.label = atn_term(t, a, b) + " = 0 (mod " + std::to_string(m) + ")";
    return c;
}

CompiledClaim make_relation(std::int64_t t, std::int64_t la, std::int64_t lb, int sign,
                            std::int64_t ra, std::int64_t rb, std::uint32_t m,
                            std::int64_t n_count) {
    CompiledClaim c;
    c.kind = CompiledClaim::Kind::Relation;
    c.t = t;
    c.lhs_a = la;
    c.lhs_b = lb;
    c.sign = sign;
    c.rhs_a = ra;
    c.rhs_b = rb;
    c.modulus = m;
    c.n_count = n_count;
    c.label = atn_term(t, la, lb) + " = " + (sign < 0 ? "-" : "") + atn_term(t, ra, rb) +
              " (mod " + std::to_string(m) + ")";
    return c;
}

CompiledClaim make_congruence(const SeriesSpec& lhs, const SeriesSpec& rhs, std::uint32_t m,
                              std::int64_t n_count) {
    CompiledClaim c;
    c.kind = CompiledClaim::Kind::SeriesCongruence;
    c.lhs_series = lhs;
    c.rhs_series = rhs;
    c.modulus = m;
    c.n_count = n_count;
    c.label = series_term(lhs) + " = " + series_term(rhs) + " (mod " + std::to_string(m) + ")";
    return c;
}

// ---------------------------------------------------------------------------
// per-family parameter validation
// ---------------------------------------------------------------------------

std::string fam_prefix(FamilyId id) { return std::string(family_id_name(id)) + ": "; }

std::int64_t single_prime(const FamilyInstance& inst) {
    require(inst.primes.size() == 1, fam_prefix(inst.id) + "exactly one prime parameter expected");
    const std::uint64_t p = inst.primes[0];
    require(is_prime(p), fam_prefix(inst.id) + "p must be prime");
    return static_cast<std::int64_t>(p);
}

std::int64_t single_odd_prime(const FamilyInstance& inst) {
    const std::int64_t p = single_prime(inst);
    require(p != 2, fam_prefix(inst.id) + "p must be an odd prime");
    return p;
}

// Families quantified over j with p not dividing j: an explicit positive j,
// or j = 0 meaning "all residues 1..p-1".
std::vector<std::int64_t> j_sweep(const FamilyInstance& inst, std::int64_t p) {
    if (inst.j == 0) {
        std::vector<std::int64_t> js;
        for (std::int64_t v = 1; v < p; ++v) js.push_back(v);
        return js;
    }
    require(inst.j >= 1, fam_prefix(inst.id) + "j must be positive");
    require(inst.j % p != 0, fam_prefix(inst.id) + "j must not be divisible by p");
    return {inst.j};
}

std::int64_t require_exponent_j(const FamilyInstance& inst) {
    require(inst.j >= 1, fam_prefix(inst.id) + "power exponent j must be at least 1");
    return inst.j;
}

void require_no_primes(const FamilyInstance& inst) {
    require(inst.primes.empty(), fam_prefix(inst.id) + "family takes no prime parameter");
}

std::uint32_t modulus_u32(const FamilyInstance& inst, std::int64_t m) {
    require(m >= 2 && m <= std::numeric_limits<std::int32_t>::max(),
            fam_prefix(inst.id) + "modulus must fit in 32 bits");
    return static_cast<std::uint32_t>(m);
}

} // namespace

// ---------------------------------------------------------------------------
// selectors
// ---------------------------------------------------------------------------

std::int64_t epsilon_p(std::uint64_t p) {
    require(p != 2 && is_prime(p), "epsilon(p) is defined for odd primes only");
    return p % 8 == 1 ? 8 : 1;
}

std::int64_t delta_p_selector(std::uint64_t p) {
    require(p != 2 && is_prime(p), "delta(p) is defined for odd primes only");
    if (p % 8 == 1) return static_cast<std::int64_t>(p);
    return -kronecker(std::int64_t{-2}, static_cast<std::int64_t>(p));
}

// ---------------------------------------------------------------------------
// compile
// ---------------------------------------------------------------------------

std::vector<CompiledClaim> compile(const FamilyInstance& inst) {
    require(inst.n_max >= 1, fam_prefix(inst.id) + "n_max must be at least 1");
    require(inst.arg_cap >= 0, fam_prefix(inst.id) + "arg_cap must be nonnegative");

    const std::int64_t n_max = inst.n_max;
    const std::int64_t cap = inst.arg_cap;
    std::vector<CompiledClaim> claims;

    switch (inst.id) {
    case FamilyId::HS3: {
        require_no_primes(inst);
        SeriesSpec lhs{SeriesSpec::Kind::ATn, 3, 1, 0};
        SeriesSpec rhs{SeriesSpec::Kind::HS3Indicator, 0, 1, 0};
        claims.push_back(make_congruence(lhs, rhs, 2, capped_count(n_max, 1, 0, cap)));
        break;
    }

    case FamilyId::Eq5711: {
        const std::int64_t p = single_prime(inst);
        require(p == 5 || p == 7 || p == 11, fam_prefix(inst.id) + "p must be one of 5, 7, 11");
        const std::int64_t j = require_exponent_j(inst);
        const std::int64_t pj = checked_pow(p, j);
        const std::int64_t delta = (p * p - 1) / 24;
        const std::int64_t b = pj - delta;
        require(b >= 0, fam_prefix(inst.id) + "offset p^j - (p^2-1)/24 must be nonnegative");
        claims.push_back(
            make_vanishing(p, pj, b, modulus_u32(inst, pj), capped_count(n_max, pj, b, cap)));
        break;
    }

    case FamilyId::GranvilleOno: {
        const std::int64_t p = single_prime(inst);
        require(p == 5 || p == 7 || p == 11, fam_prefix(inst.id) + "p must be one of 5, 7, 11");
        const std::int64_t j = require_exponent_j(inst);
        const std::int64_t pj = checked_pow(p, j);
        // Arguments satisfy 24 arg = 1 mod p^j, so the offset is the least
        // positive inverse of 24 (classically 5n+4, 7n+5, 11n+6 at j = 1).
        const std::int64_t b = inv_mod_i64(24, pj);
        const std::int64_t m = p == 7 ? checked_pow(7, j / 2 + 1) : pj;
        claims.push_back(
            make_vanishing(pj, pj, b, modulus_u32(inst, m), capped_count(n_max, pj, b, cap)));
        break;
    }

    case FamilyId::Lem4e2: {
        const std::int64_t p = single_odd_prime(inst);
        require(p % 8 != 1, fam_prefix(inst.id) + "p must not be congruent to 1 mod 8");
        CompiledClaim c;
        c.kind = CompiledClaim::Kind::ScaledIdentity;
        c.target = CompiledClaim::Target::B;
        c.rhs_form = CompiledClaim::RhsForm::DivByP;
        c.p = static_cast<std::uint64_t>(p);
        c.factor = -kronecker(std::int64_t{-2}, p);
        c.lhs_a = p;
        c.lhs_b = 0;
        c.n_count = capped_count(n_max, p, 0, cap);
        c.label = "b(" + std::to_string(p) + "n) = " + (c.factor < 0 ? "-" : "") + "b(n/" +
                  std::to_string(p) + ")";
        claims.push_back(std::move(c));
        break;
    }

    case FamilyId::Lem4e3: {
        const std::int64_t p = single_odd_prime(inst);
        require(p % 8 != 1, fam_prefix(inst.id) + "p must not be congruent to 1 mod 8");
        for (const std::int64_t j : j_sweep(inst, p)) {
            CompiledClaim c;
            c.kind = CompiledClaim::Kind::ScaledIdentity;
            c.target = CompiledClaim::Target::B;
            c.rhs_form = CompiledClaim::RhsForm::Zero;
            c.p = static_cast<std::uint64_t>(p);
            c.lhs_a = checked_mul(p, p);
            c.lhs_b = checked_mul(p, j);
            c.n_count = capped_count(n_max, c.lhs_a, c.lhs_b, cap);
            c.label = "b(" + linear_term(c.lhs_a, c.lhs_b) + ") = 0";
            claims.push_back(std::move(c));
        }
        break;
    }

    case FamilyId::Lem4e6: {
        const std::int64_t p = single_prime(inst);
        require(p % 4 == 1, fam_prefix(inst.id) + "p must be congruent to 1 mod 4");
        CompiledClaim c;
        c.kind = CompiledClaim::Kind::ScaledIdentity;
        c.target = CompiledClaim::Target::C;
        c.rhs_form = CompiledClaim::RhsForm::Affine;
        c.p = static_cast<std::uint64_t>(p);
        c.factor = p;
        c.lhs_a = checked_mul(p, p);
        c.lhs_b = (p * p - 1) / 8;
        c.n_count = capped_count(n_max, c.lhs_a, c.lhs_b, cap);
        c.label = "c(" + linear_term(c.lhs_a, c.lhs_b) + ") = " + std::to_string(p) + " c(n)";
        claims.push_back(std::move(c));
        break;
    }

    case FamilyId::Lem4e7: {
        const std::int64_t p = single_prime(inst);
        require(p % 4 == 1, fam_prefix(inst.id) + "p must be congruent to 1 mod 4");
        CompiledClaim c;
        c.kind = CompiledClaim::Kind::ScaledIdentity;
        c.target = CompiledClaim::Target::C;
        c.rhs_form = CompiledClaim::RhsForm::Zero;
        c.p = static_cast<std::uint64_t>(p);
        c.skip_p_multiples = true;
        c.lhs_a = p;
        c.lhs_b = (p * p - 1) / 8;
        c.n_count = capped_count(n_max, c.lhs_a, c.lhs_b, cap);
        c.label = "c(" + linear_term(c.lhs_a, c.lhs_b) + ") = 0 for n not divisible by " +
                  std::to_string(p);
        claims.push_back(std::move(c));
        break;
    }

    case FamilyId::Lem4e8: {
        const std::int64_t p = single_odd_prime(inst);
        for (const std::int64_t j : j_sweep(inst, p)) {
            const std::int64_t a = checked_mul(p, p);
            const std::int64_t b = checked_add(checked_mul(p, j), (p * p - 1) / 8);
            claims.push_back(make_vanishing(2, a, b, 2, capped_count(n_max, a, b, cap)));
        }
        break;
    }

    case FamilyId::Lem4e9: {
        const std::int64_t p = single_odd_prime(inst);
        const int sign = p % 8 == 1 ? 1 : static_cast<int>(-kronecker(std::int64_t{-2}, p));
        const std::int64_t a = checked_mul(p, p);
        const std::int64_t b = (p * p - 1) / 8;
        claims.push_back(make_relation(2, a, b, sign, 1, 0, 2, capped_count(n_max, a, b, cap)));
        break;
    }

    case FamilyId::Lem4e10: {
        const std::int64_t p = single_odd_prime(inst);
        const std::int64_t eps = epsilon_p(static_cast<std::uint64_t>(p));
        for (const std::int64_t j : j_sweep(inst, p)) {
            const std::int64_t a = checked_mul(104, checked_mul(p, p));
            const std::int64_t b =
                checked_add(checked_mul(checked_mul(13, p), checked_add(checked_mul(eps, j), p)), -7);
            claims.push_back(make_vanishing(13, a, b, 2, capped_count(n_max, a, b, cap)));
        }
        break;
    }

    case FamilyId::Lem4e11: {
        const std::int64_t p = single_odd_prime(inst);
        const int sign = p % 8 == 1 ? 1 : static_cast<int>(-kronecker(std::int64_t{-2}, p));
        const std::int64_t a = checked_mul(104, checked_mul(p, p));
        const std::int64_t b = 13 * p * p - 7;
        const std::int64_t count =
            std::min(capped_count(n_max, a, b, cap), capped_count(n_max, 104, 6, cap));
        claims.push_back(make_relation(13, a, b, sign, 104, 6, 2, count));
        break;
    }

    case FamilyId::Das: {
        require_no_primes(inst);
        SeriesSpec lhs{SeriesSpec::Kind::ATn, 13, 104, 6};
        SeriesSpec rhs{SeriesSpec::Kind::DasProduct, 0, 1, 0};
        const std::int64_t count =
            std::min(capped_count(n_max, 104, 6, cap), capped_count(n_max, 1, 0, cap));
        claims.push_back(make_congruence(lhs, rhs, 2, count));
        break;
    }

    case FamilyId::Chain4e13:
    case FamilyId::Chain4e18: {
        require_no_primes(inst);
        SeriesSpec a2{SeriesSpec::Kind::ATn, 2, 1, 0};
        SeriesSpec a13{SeriesSpec::Kind::ATn, 13, 104, 6};
        const SeriesSpec tail = inst.id == FamilyId::Chain4e13
                                    ? SeriesSpec{SeriesSpec::Kind::BSeries, 0, 8, 1}
                                    : SeriesSpec{SeriesSpec::Kind::CSeries, 0, 1, 0};
        auto pair_count = [&](const SeriesSpec& l, const SeriesSpec& r) {
            return std::min(capped_count(n_max, l.stride, l.offset, cap),
                            capped_count(n_max, r.stride, r.offset, cap));
        };
        claims.push_back(make_congruence(a2, a13, 2, pair_count(a2, a13)));
        claims.push_back(make_congruence(a13, tail, 2, pair_count(a13, tail)));
        claims.push_back(make_congruence(a2, tail, 2, pair_count(a2, tail)));
        break;
    }

    case FamilyId::Thm1i:
    case FamilyId::Thm1ii: {
        require(!inst.primes.empty(), fam_prefix(inst.id) + "at least one prime expected");
        for (const std::uint64_t p : inst.primes)
            require(is_prime(p) && p >= 5, fam_prefix(inst.id) + "all primes must be at least 5");
        const auto q = static_cast<std::int64_t>(inst.primes.back());
        require(inst.j >= 1, fam_prefix(inst.id) + "j must be positive");
        require(inst.j % q != 0, fam_prefix(inst.id) + "j must not be divisible by the last prime");
        std::int64_t head = 1; // product of the squares of all primes but the last
        for (std::size_t i = 0; i + 1 < inst.primes.size(); ++i) {
            const auto pi = static_cast<std::int64_t>(inst.primes[i]);
            head = checked_mul(head, checked_mul(pi, pi));
        }
        if (inst.id == FamilyId::Thm1i) {
            const std::int64_t a = checked_mul(head, checked_mul(q, q));
            const std::int64_t num =
                checked_add(checked_mul(checked_mul(head, q), checked_add(checked_mul(8, inst.j), q)), -1);
            internal_check(num % 8 == 0, "progression offset is not integral");
            const std::int64_t b = num / 8;
            claims.push_back(make_vanishing(2, a, b, 2, capped_count(n_max, a, b, cap)));
        } else {
            const std::int64_t eps = epsilon_p(static_cast<std::uint64_t>(q));
            const std::int64_t a = checked_mul(104, checked_mul(head, checked_mul(q, q)));
            const std::int64_t b = checked_add(
                checked_mul(checked_mul(13, checked_mul(head, q)),
                            checked_add(checked_mul(eps, inst.j), q)),
                -7);
            claims.push_back(make_vanishing(13, a, b, 2, capped_count(n_max, a, b, cap)));
        }
        break;
    }

    case FamilyId::Coro2i:
    case FamilyId::Coro2ii: {
        const std::int64_t p = single_prime(inst);
        require(p >= 5, fam_prefix(inst.id) + "p must be at least 5");
        require(inst.k >= 0, fam_prefix(inst.id) + "k must be nonnegative");
        require(inst.j >= 1, fam_prefix(inst.id) + "j must be positive");
        require(inst.j % p != 0, fam_prefix(inst.id) + "j must not be divisible by p");
        const std::int64_t p_even = checked_pow(p, 2 * inst.k + 2);
        const std::int64_t p_odd = checked_pow(p, 2 * inst.k + 1);
        if (inst.id == FamilyId::Coro2i) {
            const std::int64_t a = p_even;
            const std::int64_t b = checked_add(checked_mul(p_odd, inst.j), (p_even - 1) / 8);
            claims.push_back(make_vanishing(2, a, b, 2, capped_count(n_max, a, b, cap)));
        } else {
            const std::int64_t eps = epsilon_p(static_cast<std::uint64_t>(p));
            const std::int64_t a = checked_mul(104, p_even);
            const std::int64_t b = checked_add(
                checked_mul(checked_mul(13, eps), checked_mul(p_odd, inst.j)),
                checked_add(checked_mul(13, p_even), -7));
            claims.push_back(make_vanishing(13, a, b, 2, capped_count(n_max, a, b, cap)));
        }
        break;
    }

    case FamilyId::Thm3i:
    case FamilyId::Thm3ii: {
        const std::int64_t p = single_prime(inst);
        require(p % 8 == 7, fam_prefix(inst.id) + "p must be congruent to 7 mod 8");
        require(inst.k >= 1, fam_prefix(inst.id) + "k must be at least 1");
        require(inst.r >= 0, fam_prefix(inst.id) + "r must be nonnegative");
        require((8 * inst.r + 7) % p == 0, fam_prefix(inst.id) + "8r + 7 must be divisible by p");
        const auto sign = static_cast<int>(-kronecker(std::int64_t{-2}, p));
        const std::int64_t up = checked_pow(p, inst.k + 1);
        const std::int64_t down = checked_pow(p, inst.k - 1);
        if (inst.id == FamilyId::Thm3i) {
            const std::int64_t lb = checked_add(checked_mul(p, inst.r), (7 * p - 1) / 8);
            const std::int64_t rb_num = 8 * inst.r + 7 - p;
            internal_check(rb_num % (8 * p) == 0, "descent offset is not integral");
            const std::int64_t rb = rb_num / (8 * p);
            const std::int64_t count = std::min(capped_count(n_max, up, lb, cap),
                                                capped_count(n_max, down, rb, cap));
            claims.push_back(make_relation(2, up, lb, sign, down, rb, 2, count));
        } else {
            const std::int64_t la = checked_mul(104, up);
            const std::int64_t lb =
                checked_add(checked_mul(checked_mul(104, p), inst.r), 91 * p - 7);
            const std::int64_t ra = checked_mul(104, down);
            internal_check((104 * inst.r + 91) % p == 0, "descent offset is not integral");
            const std::int64_t rb = (104 * inst.r + 91) / p - 7;
            const std::int64_t count = std::min(capped_count(n_max, la, lb, cap),
                                                capped_count(n_max, ra, rb, cap));
            claims.push_back(make_relation(13, la, lb, sign, ra, rb, 2, count));
        }
        break;
    }

    case FamilyId::Coro4i:
    case FamilyId::Coro4ii: {
        const std::int64_t p = single_prime(inst);
        require(p % 8 == 7, fam_prefix(inst.id) + "p must be congruent to 7 mod 8");
        require(inst.k >= 1, fam_prefix(inst.id) + "k must be at least 1");
        const std::int64_t base = -kronecker(std::int64_t{-2}, p);
        const int sign = (base < 0 && inst.k % 2 == 1) ? -1 : 1;
        const std::int64_t pk = checked_pow(p, 2 * inst.k);
        if (inst.id == FamilyId::Coro4i) {
            const std::int64_t b = (pk - 1) / 8;
            const std::int64_t count =
                std::min(capped_count(n_max, pk, b, cap), capped_count(n_max, 1, 0, cap));
            claims.push_back(make_relation(2, pk, b, sign, 1, 0, 2, count));
        } else {
            const std::int64_t a = checked_mul(104, pk);
            const std::int64_t b = checked_add(checked_mul(13, pk), -7);
            const std::int64_t count =
                std::min(capped_count(n_max, a, b, cap), capped_count(n_max, 104, 6, cap));
            claims.push_back(make_relation(13, a, b, sign, 104, 6, 2, count));
        }
        break;
    }
    }

    internal_check(!claims.empty(), "family compiled to no claims");
    // Validate every argument the sweeps will touch while still in checked
    // arithmetic; evaluation then runs on plain int64.
    for (const auto& c : claims) {
        if (c.n_count <= 0) continue;
        checked_add(checked_mul(c.lhs_a, c.n_count - 1), c.lhs_b);
        if (c.kind == CompiledClaim::Kind::Relation)
            checked_add(checked_mul(c.rhs_a, c.n_count - 1), c.rhs_b);
        if (c.kind == CompiledClaim::Kind::SeriesCongruence) {
            checked_add(checked_mul(c.lhs_series.stride, c.n_count - 1), c.lhs_series.offset);
            checked_add(checked_mul(c.rhs_series.stride, c.n_count - 1), c.rhs_series.offset);
        }
    }
    return claims;
}

// ---------------------------------------------------------------------------
// series cache
// ---------------------------------------------------------------------------

namespace {

TruncatedSeries build_series(SeriesSpec::Kind kind, std::int64_t t, CoefficientRing ring,
                             std::size_t length) {
    switch (kind) {
    case SeriesSpec::Kind::ATn:
        return tcore_series(t, length, ring).data;
    case SeriesSpec::Kind::BSeries:
        return b_series(length, ring).data;
    case SeriesSpec::Kind::CSeries:
        return c_series(length, ring).data;
    case SeriesSpec::Kind::DasProduct:
        return das_product_series(length, ring).data;
    case SeriesSpec::Kind::HS3Indicator:
        break;
    }
    throw std::logic_error("indicator streams are not materialized");
}

} // namespace

std::shared_ptr<const TruncatedSeries> SeriesCache::get(SeriesSpec::Kind kind, std::int64_t t,
                                                        CoefficientRing ring, std::size_t length) {
    if (length == 0) length = 1;
    const std::uint32_t m = ring.is_exact() ? 0 : ring.modulus();
    const std::tuple<int, std::int64_t, std::uint32_t> key{
        static_cast<int>(kind), kind == SeriesSpec::Kind::ATn ? t : 0, m};

    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end() && it->second->length() >= length) return it->second;
    if (it != entries_.end()) length = std::max(length, it->second->length());
    auto built = std::make_shared<const TruncatedSeries>(build_series(kind, t, ring, length));
    entries_[key] = built;
    return built;
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

namespace {

struct Need {
    SeriesSpec::Kind kind;
    std::int64_t t;
    std::uint32_t mod; // 0 = exact coefficients
    std::int64_t max_index;
};

std::int64_t progression_max(std::int64_t a, std::int64_t b, std::int64_t count) {
    return a * (count - 1) + b;
}

std::vector<Need> collect_needs(const CompiledClaim& c) {
    std::vector<Need> needs;
    if (c.n_count <= 0) return needs;
    switch (c.kind) {
    case CompiledClaim::Kind::Vanishing:
        needs.push_back({SeriesSpec::Kind::ATn, c.t, c.modulus,
                         progression_max(c.lhs_a, c.lhs_b, c.n_count)});
        break;
    case CompiledClaim::Kind::Relation:
        needs.push_back({SeriesSpec::Kind::ATn, c.t, c.modulus,
                         progression_max(c.lhs_a, c.lhs_b, c.n_count)});
        needs.push_back({SeriesSpec::Kind::ATn, c.t, c.modulus,
                         progression_max(c.rhs_a, c.rhs_b, c.n_count)});
        break;
    case CompiledClaim::Kind::SeriesCongruence:
        for (const SeriesSpec* side : {&c.lhs_series, &c.rhs_series}) {
            if (side->kind == SeriesSpec::Kind::HS3Indicator) continue;
            needs.push_back({side->kind, side->t, c.modulus,
                             progression_max(side->stride, side->offset, c.n_count)});
        }
        break;
    case CompiledClaim::Kind::ScaledIdentity: {
        const SeriesSpec::Kind kind = c.target == CompiledClaim::Target::B
                                          ? SeriesSpec::Kind::BSeries
                                          : SeriesSpec::Kind::CSeries;
        std::int64_t max_index = 0;
        switch (c.rhs_form) {
        case CompiledClaim::RhsForm::Zero:
            max_index = progression_max(c.lhs_a, c.lhs_b, c.n_count);
            break;
        case CompiledClaim::RhsForm::DivByP:
            max_index = progression_max(c.lhs_a, c.lhs_b, c.n_count);
            break;
        case CompiledClaim::RhsForm::Affine:
            max_index = std::max(progression_max(c.lhs_a, c.lhs_b, c.n_count), c.n_count - 1);
            break;
        }
        needs.push_back({kind, 0, 0, max_index});
        break;
    }
    }
    return needs;
}

enum class EvalMode { Series, Closed };

// Decide whether the claim can be swept from materialized series under the
// budget.  Progressions on a_2 and identities on c have closed coefficient
// formulas to fall back on; everything else over budget is an error.
EvalMode decide_mode(const CompiledClaim& c, const Budget& budget) {
    bool over = false;
    std::int64_t worst = 0;
    for (const Need& need : collect_needs(c)) {
        const std::int64_t limit = need.mod != 0 ? budget.max_mod_index : budget.max_exact_index;
        if (need.max_index > limit) {
            over = true;
            worst = std::max(worst, need.max_index + 1);
        }
    }
    if (!over) return EvalMode::Series;
    const bool progression_on_a2 = (c.kind == CompiledClaim::Kind::Vanishing ||
                                    c.kind == CompiledClaim::Kind::Relation) &&
                                   c.t == 2;
    const bool identity_on_c = c.kind == CompiledClaim::Kind::ScaledIdentity &&
                               c.target == CompiledClaim::Target::C;
    if (progression_on_a2 || identity_on_c) return EvalMode::Closed;
    throw budget_error("claim \"" + c.label + "\" needs series length " + std::to_string(worst) +
                           ", beyond the configured budget",
                       worst);
}

void sweep_claim(const CompiledClaim& c, std::size_t claim_index, EvalMode mode,
                 const Budget& budget, SeriesCache& cache, VerificationReport& rep) {
    std::int64_t kept = 0;
    auto record = [&](std::int64_t n, BigInt lhs, BigInt rhs) {
        ++rep.failures_per_claim[claim_index];
        if (kept < 10) {
            rep.counterexamples.push_back({claim_index, n, std::move(lhs), std::move(rhs)});
            ++kept;
        }
    };
    if (c.n_count <= 0) return;
    (void)budget;

    switch (c.kind) {
    case CompiledClaim::Kind::Vanishing:
    case CompiledClaim::Kind::Relation: {
        const auto m = static_cast<std::int64_t>(c.modulus);
        std::shared_ptr<const TruncatedSeries> series;
        if (mode == EvalMode::Series) {
            std::size_t len = 0;
            for (const Need& need : collect_needs(c))
                len = std::max(len, static_cast<std::size_t>(need.max_index) + 1);
            series = cache.get(SeriesSpec::Kind::ATn, c.t, CoefficientRing::mod(c.modulus), len);
        }
        auto value_at = [&](std::int64_t arg) -> std::int64_t {
            if (mode == EvalMode::Closed)
                return a2_closed(static_cast<std::uint64_t>(arg)) % m;
            return series->coeff(static_cast<std::size_t>(arg)).convert_to<std::int64_t>();
        };
        for (std::int64_t n = 0; n < c.n_count; ++n) {
            ++rep.n_checked;
            const std::int64_t lhs = value_at(c.lhs_a * n + c.lhs_b);
            if (c.kind == CompiledClaim::Kind::Vanishing) {
                if (lhs != 0) record(n, lhs, 0);
            } else {
                const std::int64_t rhs = value_at(c.rhs_a * n + c.rhs_b);
                const std::int64_t want = c.sign > 0 ? rhs : (m - rhs) % m;
                if (lhs != want) record(n, lhs, want);
            }
        }
        break;
    }

    case CompiledClaim::Kind::SeriesCongruence: {
        const auto m = static_cast<std::int64_t>(c.modulus);
        std::shared_ptr<const TruncatedSeries> sides[2];
        const SeriesSpec* specs[2] = {&c.lhs_series, &c.rhs_series};
        for (int s = 0; s < 2; ++s) {
            if (specs[s]->kind == SeriesSpec::Kind::HS3Indicator) continue;
            const auto len = static_cast<std::size_t>(
                progression_max(specs[s]->stride, specs[s]->offset, c.n_count) + 1);
            sides[s] = cache.get(specs[s]->kind, specs[s]->t, CoefficientRing::mod(c.modulus), len);
        }
        auto value_at = [&](int s, std::int64_t n) -> std::int64_t {
            const SeriesSpec& spec = *specs[s];
            const std::int64_t arg = spec.stride * n + spec.offset;
            if (spec.kind == SeriesSpec::Kind::HS3Indicator)
                return is_perfect_square(3 * arg + 1) ? 1 % m : 0;
            return sides[s]->coeff(static_cast<std::size_t>(arg)).convert_to<std::int64_t>();
        };
        for (std::int64_t n = 0; n < c.n_count; ++n) {
            ++rep.n_checked;
            const std::int64_t lhs = value_at(0, n);
            const std::int64_t rhs = value_at(1, n);
            if (lhs != rhs) record(n, lhs, rhs);
        }
        break;
    }

    case CompiledClaim::Kind::ScaledIdentity: {
        std::shared_ptr<const TruncatedSeries> series;
        if (mode == EvalMode::Series) {
            const Need need = collect_needs(c).front();
            series = cache.get(need.kind, 0, CoefficientRing::exact(),
                               static_cast<std::size_t>(need.max_index) + 1);
        }
        auto value_at = [&](std::int64_t arg) -> BigInt {
            if (mode == EvalMode::Closed)
                return BigInt(c_closed(static_cast<std::uint64_t>(arg)));
            return series->coeff(static_cast<std::size_t>(arg));
        };
        const auto p = static_cast<std::int64_t>(c.p);
        for (std::int64_t n = 0; n < c.n_count; ++n) {
            switch (c.rhs_form) {
            case CompiledClaim::RhsForm::Zero: {
                if (c.skip_p_multiples && n % p == 0) continue;
                ++rep.n_checked;
                BigInt lhs = value_at(c.lhs_a * n + c.lhs_b);
                if (lhs != 0) record(n, std::move(lhs), 0);
                break;
            }
            case CompiledClaim::RhsForm::DivByP: {
                ++rep.n_checked;
                BigInt lhs = value_at(p * n);
                BigInt rhs = n % p == 0 ? BigInt(c.factor * value_at(n / p)) : BigInt(0);
                if (lhs != rhs) record(n, std::move(lhs), std::move(rhs));
                break;
            }
            case CompiledClaim::RhsForm::Affine: {
                ++rep.n_checked;
                BigInt lhs = value_at(c.lhs_a * n + c.lhs_b);
                BigInt rhs = c.factor * value_at(n);
                if (lhs != rhs) record(n, std::move(lhs), std::move(rhs));
                break;
            }
            }
        }
        break;
    }
    }
}

} // namespace

VerificationReport verify_claims(const FamilyInstance& meta, std::vector<CompiledClaim> claims,
                                 const Budget& budget, SeriesCache& cache) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.instance = meta;
    rep.claims = std::move(claims);
    rep.failures_per_claim.assign(rep.claims.size(), 0);
    std::vector<EvalMode> modes;
    modes.reserve(rep.claims.size());
    for (const auto& claim : rep.claims) {
        const EvalMode mode = decide_mode(claim, budget);
        modes.push_back(mode);
        rep.claim_eval.emplace_back(mode == EvalMode::Series ? "series" : "closed-form");
    }
    rep.n_requested = static_cast<std::int64_t>(rep.claims.size()) * meta.n_max;
    for (std::size_t i = 0; i < rep.claims.size(); ++i)
        sweep_claim(rep.claims[i], i, modes[i], budget, cache, rep);
    rep.pass = std::all_of(rep.failures_per_claim.begin(), rep.failures_per_claim.end(),
                           [](std::int64_t f) { return f == 0; });
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

VerificationReport verify(const FamilyInstance& inst, const Budget& budget, SeriesCache& cache) {
    return verify_claims(inst, compile(inst), budget, cache);
}

VerificationReport verify(const FamilyInstance& inst) {
    SeriesCache cache;
    return verify(inst, Budget{}, cache);
}

// ---------------------------------------------------------------------------
// the default suite
// ---------------------------------------------------------------------------

std::vector<FamilyInstance> default_suite() {
    std::vector<FamilyInstance> suite;
    auto add = [&suite](FamilyId id, std::vector<std::uint64_t> primes, std::int64_t j,
                        std::int64_t k, std::int64_t r, std::int64_t n_max, std::int64_t cap) {
        suite.push_back({id, std::move(primes), j, k, r, n_max, cap});
    };
    constexpr std::int64_t kExactCap = 50000;
    constexpr std::int64_t kModCap = 200000;

    add(FamilyId::HS3, {}, 0, 0, 0, 2000, 0);
    for (const std::uint64_t p : {5u, 7u, 11u}) {
        add(FamilyId::Eq5711, {p}, 1, 0, 0, 300, 0);
        add(FamilyId::Eq5711, {p}, 2, 0, 0, 50, 0);
    }
    for (const std::uint64_t p : {5u, 7u, 11u}) {
        add(FamilyId::GranvilleOno, {p}, 1, 0, 0, 300, 0);
        add(FamilyId::GranvilleOno, {p}, 2, 0, 0, 50, 0);
    }
    for (const std::uint64_t p : {3u, 5u, 7u, 11u, 13u, 19u, 23u})
        add(FamilyId::Lem4e2, {p}, 0, 0, 0, 20000, kExactCap);
    for (const std::uint64_t p : {3u, 5u, 7u, 11u, 13u, 19u, 23u})
        for (const std::int64_t j : {1, 2})
            add(FamilyId::Lem4e3, {p}, j, 0, 0, 8000, kExactCap);
    for (const std::uint64_t p : {5u, 13u, 17u, 29u})
        add(FamilyId::Lem4e6, {p}, 0, 0, 0, 4000, kExactCap);
    for (const std::uint64_t p : {5u, 13u, 17u, 29u})
        add(FamilyId::Lem4e7, {p}, 0, 0, 0, 20000, kExactCap);
    for (const std::uint64_t p : {3u, 5u, 7u, 17u})
        for (const std::int64_t j : {1, 2})
            add(FamilyId::Lem4e8, {p}, j, 0, 0, 200, 0);
    for (const std::uint64_t p : {3u, 5u, 7u, 17u})
        add(FamilyId::Lem4e9, {p}, 0, 0, 0, 200, 0);
    for (const std::uint64_t p : {3u, 5u, 7u, 17u})
        for (const std::int64_t j : {1, 2})
            add(FamilyId::Lem4e10, {p}, j, 0, 0, 200, kModCap);
    for (const std::uint64_t p : {3u, 5u, 7u, 17u})
        add(FamilyId::Lem4e11, {p}, 0, 0, 0, 200, kModCap);
    add(FamilyId::Das, {}, 0, 0, 0, 201, 0);
    add(FamilyId::Chain4e13, {}, 0, 0, 0, 201, 0);
    add(FamilyId::Chain4e18, {}, 0, 0, 0, 201, 0);
    for (const std::int64_t j : {1, 2, 3, 4}) add(FamilyId::Thm1i, {5}, j, 0, 0, 200, 0);
    for (const std::int64_t j : {1, 2, 3, 4, 5, 6}) add(FamilyId::Thm1i, {7}, j, 0, 0, 200, 0);
    for (const std::int64_t j : {1, 2}) add(FamilyId::Thm1i, {5, 7}, j, 0, 0, 40, 0);
    for (const std::int64_t j : {1, 2}) add(FamilyId::Thm1ii, {5}, j, 0, 0, 15, 0);
    add(FamilyId::Thm1ii, {17}, 1, 0, 0, 5, 0);
    for (const std::int64_t k : {0, 1})
        for (const std::int64_t j : {1, 2}) add(FamilyId::Coro2i, {5}, j, k, 0, 200, kModCap);
    for (const std::int64_t k : {0, 1})
        for (const std::int64_t j : {1, 2}) add(FamilyId::Coro2ii, {5}, j, k, 0, 200, kModCap);
    const std::pair<std::uint64_t, std::int64_t> rows[] = {{7, 0}, {23, 2}, {31, 3}};
    for (const auto& [p, r0] : rows)
        for (const std::int64_t k : {1, 2})
            for (const std::int64_t r : {r0, r0 + static_cast<std::int64_t>(p)})
                add(FamilyId::Thm3i, {p}, 0, k, r, 300, kModCap);
    for (const auto& [p, r0] : rows)
        for (const std::int64_t k : {1, 2})
            for (const std::int64_t r : {r0, r0 + static_cast<std::int64_t>(p)})
                add(FamilyId::Thm3ii, {p}, 0, k, r, 300, kModCap);
    for (const std::uint64_t p : {7u, 23u, 31u})
        for (const std::int64_t k : {1, 2}) add(FamilyId::Coro4i, {p}, 0, k, 0, 500, 0);
    add(FamilyId::Coro4ii, {7}, 0, 1, 0, 300, kModCap);
    add(FamilyId::Coro4ii, {7}, 0, 2, 0, 300, kModCap);
    add(FamilyId::Coro4ii, {23}, 0, 1, 0, 300, kModCap);
    add(FamilyId::Coro4ii, {31}, 0, 1, 0, 300, kModCap);
    return suite;
}

// ---------------------------------------------------------------------------
// batched verification
// ---------------------------------------------------------------------------

std::vector<VerificationReport> verify_all(const std::vector<FamilyInstance>& instances,
                                           const Budget& budget, SeriesCache& cache,
                                           unsigned threads) {
    // Materialize every series any claim will read before going parallel, so
    // worker threads only take cache hits.  This pass also surfaces
    // hypothesis and budget errors deterministically, in input order.
    for (const FamilyInstance& inst : instances) {
        for (const CompiledClaim& claim : compile(inst)) {
            if (decide_mode(claim, budget) != EvalMode::Series) continue;
            for (const Need& need : collect_needs(claim)) {
                const CoefficientRing ring =
                    need.mod != 0 ? CoefficientRing::mod(need.mod) : CoefficientRing::exact();
                cache.get(need.kind, need.t, ring, static_cast<std::size_t>(need.max_index) + 1);
            }
        }
    }

    std::vector<VerificationReport> reports(instances.size());
    const unsigned worker_count = std::clamp(threads, 1u, 64u);
    if (worker_count == 1) {
        for (std::size_t i = 0; i < instances.size(); ++i)
            reports[i] = verify(instances[i], budget, cache);
        return reports;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < instances.size();
                     i = next.fetch_add(1))
                    reports[i] = verify(instances[i], budget, cache);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& worker : workers) worker.join();
    for (const auto& error : errors)
        if (error) std::rethrow_exception(error);
    return reports;
}

} // namespace tcore
