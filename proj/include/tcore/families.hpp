#pragma once

/// The congruence catalog.  Every identity family the library knows about
/// is named by a FamilyId; an instance binds the family's free parameters
/// (primes, exponents, offsets, sweep size).  compile() turns an instance
/// into explicit arithmetic-progression claims with all divisions carried
/// out and all hypotheses validated; verify() sweeps the claims against the
/// generating functions and reports counterexamples.
///
/// Catalog overview (a_t is the t-core counting function, b and c the named
/// series from generators.hpp):
///
///   HS3          a_3(n) odd exactly when 3n+1 is a perfect square
///   Eq5711       a_p(p^j n - (p^2-1)/24) = 0 mod p^j for p in {5,7,11}
///   GranvilleOno a_{p^j}(p^j n - delta) = 0 mod p^j (7: mod 7^(j/2+1))
///   Lem4e2       b(pn) = -(-2/p) b(n/p), exact, p not 1 mod 8
///   Lem4e3       b(p^2 n + pj) = 0, exact
///   Lem4e6       c(p^2 n + (p^2-1)/8) = p c(n), exact, p = 1 mod 4
///   Lem4e7       c(pn + (p^2-1)/8) = 0 when p does not divide n, exact
///   Lem4e8/4e9   a_2 progressions mod 2 (vanishing / self-relation)
///   Lem4e10/4e11 a_13 progressions mod 2 (vanishing / self-relation)
///   Das          a_13(104n+6) = coefficients of (q;q)(q^2;q^2) mod 2
///   Chain4e13    a_2(n) = a_13(104n+6) = b(8n+1) mod 2, pairwise
///   Chain4e18    a_2(n) = a_13(104n+6) = c(n) mod 2, pairwise
///   Thm1i/Thm1ii multi-prime vanishing for a_2 / a_13 mod 2
///   Coro2i/ii    the single-prime power specialization of Thm1*
///   Thm3i/ii     multiplicative relations for p = 7 mod 8
///   Coro4i/ii    the iterated k-fold specialization of Thm3*

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <optional>
#include <vector>

#include "tcore/errors.hpp"
#include "tcore/generators.hpp"
#include "tcore/series.hpp"

namespace tcore {

enum class FamilyId {
    HS3,
    Eq5711,
    GranvilleOno,
    Lem4e2,
    Lem4e3,
    Lem4e6,
    Lem4e7,
    Lem4e8,
    Lem4e9,
    Lem4e10,
    Lem4e11,
    Das,
    Chain4e13,
    Chain4e18,
    Thm1i,
    Thm1ii,
    Coro2i,
    Coro2ii,
    Thm3i,
    Thm3ii,
    Coro4i,
    Coro4ii,
};

const char* family_id_name(FamilyId id);
std::optional<FamilyId> family_id_from_string(std::string_view name);
std::vector<FamilyId> all_family_ids();

/// A family with its parameters bound.
///
///   primes  the prime list p_1..p_{k+1} (most families use one prime)
///   j       residue parameter, or the power exponent for Eq5711 and
///           GranvilleOno; j = 0 where a family quantifies over
///           j not divisible by p means "expand all j in 1..p-1"
///   k       iteration depth where the family has one
///   r       offset parameter of the p = 7 mod 8 relations
///   n_max   number of n values swept per claim
///   arg_cap when positive, claims are trimmed so progression arguments
///           stay at most arg_cap (the sweep shortens, never errors)
struct FamilyInstance {
    FamilyId id;
    std::vector<std::uint64_t> primes;
    std::int64_t j = 0;
    std::int64_t k = 0;
    std::int64_t r = 0;
    std::int64_t n_max = 0;
    std::int64_t arg_cap = 0;
};

/// epsilon(p) = 1 for p not 1 mod 8, 8 for p = 1 mod 8.  Defined for odd
/// primes only.
std::int64_t epsilon_p(std::uint64_t p);

/// delta(p) = -(-2/p) for p not 1 mod 8, p itself for p = 1 mod 8.  Always
/// odd, so it collapses to 1 in mod-2 claims.
std::int64_t delta_p_selector(std::uint64_t p);

/// A coefficient stream n -> value(A n + B) drawn from one of the named
/// series, or the indicator of 3n+1 being a perfect square.
struct SeriesSpec {
    enum class Kind { ATn, BSeries, CSeries, DasProduct, HS3Indicator };
    Kind kind = Kind::ATn;
    std::int64_t t = 0; // core size, ATn only
    std::int64_t stride = 1;
    std::int64_t offset = 0;
};

struct CompiledClaim {
    enum class Kind { Vanishing, Relation, SeriesCongruence, ScaledIdentity };
    Kind kind;
    std::string label;
    std::int64_t n_count = 0;

    // Vanishing: a_t(lhs_a n + lhs_b) = 0 mod modulus.
    // Relation: a_t(lhs_a n + lhs_b) = sign * a_t(rhs_a n + rhs_b) mod modulus.
    std::int64_t t = 0;
    std::int64_t lhs_a = 1;
    std::int64_t lhs_b = 0;
    int sign = 1;
    std::int64_t rhs_a = 0;
    std::int64_t rhs_b = 0;
    std::uint32_t modulus = 2;

    // SeriesCongruence: lhs_series(n) = rhs_series(n) mod modulus.
    SeriesSpec lhs_series;
    SeriesSpec rhs_series;

    // ScaledIdentity: exact integer identities on the b or c series.
    //   Zero:    series(lhs_a n + lhs_b) = 0
    //   DivByP:  series(p n) = factor * series(n / p), 0 when p does not
    //            divide n
    //   Affine:  series(lhs_a n + lhs_b) = factor * series(n)
    enum class Target { None, B, C } target = Target::None;
    enum class RhsForm { Zero, DivByP, Affine } rhs_form = RhsForm::Zero;
    std::uint64_t p = 0;
    std::int64_t factor = 0;
    bool skip_p_multiples = false;
};

/// Compile an instance to explicit claims.  Throws hypothesis_error when a
/// parameter violates the family's hypotheses (wrong residue class, j
/// divisible by p, and so on); the message names the violated condition.
std::vector<CompiledClaim> compile(const FamilyInstance& instance);

/// Series length ceilings, expressed as the largest coefficient index a
/// sweep may demand: one for modular rings, one for exact coefficients.
struct Budget {
    std::int64_t max_mod_index = 200000;
    std::int64_t max_exact_index = 50000;
};

/// Materialized generating functions, shared across claims and reused
/// between instances.  Series are grown monotonically; get() hands out
/// shared ownership so concurrent readers stay valid if another thread
/// triggers a regrow.
class SeriesCache {
public:
    std::shared_ptr<const TruncatedSeries> get(SeriesSpec::Kind kind, std::int64_t t,
                                               CoefficientRing ring,
                                               std::size_t length);

private:
    std::map<std::tuple<int, std::int64_t, std::uint32_t>,
             std::shared_ptr<const TruncatedSeries>>
        entries_;
    std::mutex mutex_;
};

struct Counterexample {
    std::size_t claim_index = 0;
    std::int64_t n = 0;
    BigInt lhs = 0;
    BigInt rhs = 0;
};

struct VerificationReport {
    FamilyInstance instance;
    std::vector<CompiledClaim> claims;
    std::vector<std::string> claim_eval; // "series" or "closed-form" per claim
    std::vector<std::int64_t> failures_per_claim; // total, not capped
    std::vector<Counterexample> counterexamples; // at most 10 kept per claim
    std::int64_t n_requested = 0;
    std::int64_t n_checked = 0;
    bool pass = false;
    double wall_seconds = 0.0; // informational; never serialized
};

/// Sweep every compiled claim of the instance.  Mod-2 progressions on a_2
/// whose arguments exceed the modular budget fall back to the closed
/// triangular-number form (reported in claim_eval); identities on c can
/// likewise fall back to its closed form.  Anything else over budget
/// throws budget_error carrying the length that would have been needed.
VerificationReport verify(const FamilyInstance& instance, const Budget& budget,
                          SeriesCache& cache);
VerificationReport verify(const FamilyInstance& instance);

/// Sweep an explicit claim list under the given instance metadata.  This is
/// the building block verify() rests on, exposed for harnesses that
/// assemble their own claims.
VerificationReport verify_claims(const FamilyInstance& meta, std::vector<CompiledClaim> claims,
                                 const Budget& budget, SeriesCache& cache);

/// The fixed verification suite, in catalog order.
std::vector<FamilyInstance> default_suite();

/// Verify a list of instances, optionally with a thread pool.  Reports come
/// back in input order regardless of scheduling; all series are
/// materialized up front so worker threads only read.
std::vector<VerificationReport> verify_all(const std::vector<FamilyInstance>& instances,
                                           const Budget& budget, SeriesCache& cache,
                                           unsigned threads = 1);

} // namespace tcore
