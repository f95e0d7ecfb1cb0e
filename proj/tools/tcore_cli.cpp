/** @file
 * tcore: compute t-core partition counts and verify the congruence catalog.
 *
 * Subcommands:
 *   atn      evaluate a_t(n) at a point or over a half-open range
 *   verify   sweep one congruence family, or the whole default suite
 *   eta      admissibility and cusp-order report for an eta-quotient
 *   hecke    apply T_p to a named series, or run the eigenform check
 *   expand   dump a named series or a raw product of Euler factors
 *
 * Exit codes, everywhere: 0 all checks pass, 1 a counterexample or failed
 * check, 2 usage, hypothesis, or budget error.  JSON output is canonical
 * (sorted keys, no floats, big integers as decimal strings) and identical
 * across runs and thread counts.
 */

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "tcore/families.hpp"
#include "tcore/generators.hpp"
#include "tcore/modular.hpp"
#include "tcore/report.hpp"
#include "tcore/series.hpp"

namespace {

using namespace tcore;
using nlohmann::json;

// ------------------------------------------------------------------
// shared option plumbing
// ------------------------------------------------------------------

struct CommonFlags {
    bool as_json = false;
    bool as_csv = false;
};

void add_format_flags(CLI::App* cmd, CommonFlags& flags) {
    auto* j = cmd->add_flag("--json", flags.as_json, "Emit a canonical JSON document");
    auto* c = cmd->add_flag("--csv", flags.as_csv, "Emit CSV");
    j->excludes(c);
    c->excludes(j);
}

Budget make_budget(std::int64_t override_value) {
    Budget budget;
    if (override_value > 0) {
        budget.max_mod_index = override_value;
        budget.max_exact_index = override_value;
    }
    return budget;
}

json budget_parameters(const Budget& budget) {
    return {
        {"max_exact_index", budget.max_exact_index},
        {"max_mod_index", budget.max_mod_index},
    };
}

CoefficientRing ring_from_mod(std::uint32_t mod) {
    return mod == 0 ? CoefficientRing::exact() : CoefficientRing::mod(mod);
}

std::string ring_name(const CoefficientRing& ring) {
    return ring.is_exact() ? "exact" : "mod " + std::to_string(ring.modulus());
}

/// Largest coefficient index the budget allows for the ring.
std::int64_t budget_cap(const Budget& budget, const CoefficientRing& ring) {
    return ring.is_exact() ? budget.max_exact_index : budget.max_mod_index;
}

void require_within_budget(const Budget& budget, const CoefficientRing& ring,
                           std::int64_t max_index) {
    const auto cap = budget_cap(budget, ring);
    if (max_index > cap)
        throw budget_error("coefficient index " + std::to_string(max_index) +
                               " exceeds the configured budget of " + std::to_string(cap) +
                               " (" + ring_name(ring) + ")",
                           max_index + 1);
}

/// "A..B" -> half-open [A, B).
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos)
        throw std::invalid_argument("range must look like A..B, got '" + text + "'");
    const auto lo = std::stoll(text.substr(0, sep));
    const auto hi = std::stoll(text.substr(sep + 2));
    if (lo < 0 || hi < lo)
        throw std::invalid_argument("range bounds must satisfy 0 <= A <= B, got '" + text +
                                    "'");
    return {lo, hi};
}

/// "a:e" with positive a and signed e.
std::pair<std::int64_t, std::int64_t> parse_factor(const std::string& text) {
    const auto sep = text.find(':');
    if (sep == std::string::npos)
        throw std::invalid_argument("factor must look like a:e, got '" + text + "'");
    const auto a = std::stoll(text.substr(0, sep));
    const auto e = std::stoll(text.substr(sep + 1));
    if (a <= 0) throw std::invalid_argument("factor base must be positive in '" + text + "'");
    return {a, e};
}

std::string rational_text(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void emit_series_values(const std::vector<BigInt>& values, std::int64_t first_n,
                        const CommonFlags& flags, const std::string& command,
                        json parameters) {
    if (flags.as_json) {
        std::cout << render(make_document(command, std::move(parameters),
                                          series_values_json(values, first_n), {}));
    } else {
        std::cout << series_values_csv(values, first_n);
    }
}

// ------------------------------------------------------------------
// atn
// ------------------------------------------------------------------

struct AtnOptions {
    std::int64_t t = 0;
    std::int64_t n = -1;
    std::string range;
    std::uint32_t mod = 0;
    CommonFlags flags;
};

int run_atn(const AtnOptions& opt, const Budget& budget) {
    if (opt.t < 2)
        throw std::invalid_argument("atn: t must be at least 2, got " +
                                    std::to_string(opt.t));
    const bool have_n = opt.n >= 0;
    const bool have_range = !opt.range.empty();
    if (have_n == have_range)
        throw std::invalid_argument("atn: give exactly one of --n or --range");

    const auto ring = ring_from_mod(opt.mod);
    std::int64_t lo = opt.n, hi = opt.n + 1;
    if (have_range) std::tie(lo, hi) = parse_range(opt.range);
    if (lo == hi) {
        emit_series_values({}, lo, opt.flags, "atn",
                           {{"t", opt.t}, {"range", opt.range}, {"ring", ring_name(ring)}});
        return 0;
    }
    require_within_budget(budget, ring, hi - 1);

    const auto series = tcore_series(opt.t, static_cast<std::size_t>(hi), ring).data;
    std::vector<BigInt> values;
    values.reserve(static_cast<std::size_t>(hi - lo));
    for (std::int64_t n = lo; n < hi; ++n)
        values.push_back(series.coeff(static_cast<std::size_t>(n)));

    if (have_n && !opt.flags.as_json && !opt.flags.as_csv) {
        std::cout << values.front().str() << "\n"; // bare value for a point query
        return 0;
    }
    json parameters = {{"t", opt.t}, {"ring", ring_name(ring)}};
    if (have_range)
        parameters["range"] = opt.range;
    else
        parameters["n"] = opt.n;
    emit_series_values(values, lo, opt.flags, "atn", std::move(parameters));
    return 0;
}

// ------------------------------------------------------------------
// verify
// ------------------------------------------------------------------

struct VerifyOptions {
    std::string target;
    std::vector<std::uint64_t> primes;
    std::int64_t j = 0;
    std::int64_t k = 0;
    std::int64_t r = 0;
    std::int64_t n_max = 200;
    std::int64_t arg_cap = 0;
    unsigned threads = 1;
    CommonFlags flags;
};

int run_verify(const VerifyOptions& opt, const Budget& budget) {
    SeriesCache cache;
    std::vector<VerificationReport> reports;
    json parameters;

    if (opt.target == "suite") {
        reports = verify_all(default_suite(), budget, cache, opt.threads);
        parameters = {{"target", "suite"}, {"budget", budget_parameters(budget)}};
    } else {
        const auto id = family_id_from_string(opt.target);
        if (!id)
            throw std::invalid_argument("unknown family '" + opt.target +
                                        "' (use a catalog id or 'suite')");
        const FamilyInstance inst{*id,   opt.primes, opt.j,      opt.k,
                                  opt.r, opt.n_max,  opt.arg_cap};
        reports.push_back(verify(inst, budget, cache));
        json primes = json::array();
        for (const auto p : opt.primes) primes.push_back(p);
        parameters = {
            {"family", family_id_name(*id)}, {"primes", std::move(primes)},
            {"j", opt.j},                    {"k", opt.k},
            {"r", opt.r},                    {"n_max", opt.n_max},
            {"arg_cap", opt.arg_cap},        {"budget", budget_parameters(budget)},
        };
    }

    bool all_pass = true;
    for (const auto& report : reports) all_pass = all_pass && report.pass;

    if (opt.flags.as_csv)
        std::cout << reports_csv(reports);
    else
        std::cout << render(make_document("verify", std::move(parameters), reports));
    return all_pass ? 0 : 1;
}

// ------------------------------------------------------------------
// eta
// ------------------------------------------------------------------

struct EtaOptions {
    std::uint64_t level = 0;
    std::vector<std::string> exponents;
    CommonFlags flags;
};

int run_eta(const EtaOptions& opt) {
    if (opt.exponents.empty())
        throw std::invalid_argument("eta: give at least one --exp delta:r factor");
    std::map<std::uint64_t, std::int64_t> exps;
    for (const auto& text : opt.exponents) {
        const auto [delta, r] = parse_factor(text);
        exps[static_cast<std::uint64_t>(delta)] += r;
    }
    for (auto it = exps.begin(); it != exps.end();)
        it = it->second == 0 ? exps.erase(it) : std::next(it);
    if (exps.empty())
        throw std::invalid_argument("eta: all exponents cancelled to zero");

    const EtaQuotient quotient(opt.level, exps); // throws if some delta does not divide N
    const auto result = admissibility_check(quotient);
    const bool verdict = result.admissible() && result.holomorphic_at_cusps;

    const std::string weight_text =
        result.weight_integral ? std::to_string(result.twice_weight / 2)
                               : std::to_string(result.twice_weight) + "/2";
    const std::string s_text =
        result.character.s_den == 1
            ? result.character.s_num.str()
            : result.character.s_num.str() + "/" + result.character.s_den.str();

    if (opt.flags.as_json) {
        json exponents = json::array();
        for (const auto& [delta, r] : exps) exponents.push_back({{"delta", delta}, {"r", r}});
        json cusps = json::array();
        for (const auto& [d, order] : result.cusp_orders)
            cusps.push_back({{"d", d}, {"order", rational_text(order)}});
        const json doc = {
            {"level", opt.level},
            {"exponents", std::move(exponents)},
            {"weight", weight_text},
            {"weight_integral", result.weight_integral},
            {"cond_a", result.cond_A},
            {"cond_b", result.cond_B},
            {"character",
             {{"s", s_text}, {"discriminant", big_to_string(result.character.discriminant)}}},
            {"cusp_orders", std::move(cusps)},
            {"min_cusp_order", rational_text(result.min_cusp_order)},
            {"holomorphic_at_cusps", result.holomorphic_at_cusps},
        };
        DocumentSummary summary;
        (verdict ? summary.pass_count : summary.fail_count) += 1;
        std::cout << render(make_document("eta", {{"level", opt.level}},
                                          json::array({doc}), summary));
        return verdict ? 0 : 1;
    }

    std::cout << "level " << opt.level << " quotient:";
    for (const auto& [delta, r] : exps) {
        std::cout << " eta(" << delta << "z)";
        if (r != 1) std::cout << "^" << r;
    }
    std::cout << "\n";
    std::cout << "weight: " << weight_text
              << (result.weight_integral ? "" : " (half-integral; admissibility needs an integer)")
              << "\n";
    std::cout << "condition A (sum delta*r = 0 mod 24): "
              << (result.cond_A ? "holds" : "fails") << "\n";
    std::cout << "condition B (sum (N/delta)*r = 0 mod 24): "
              << (result.cond_B ? "holds" : "fails") << "\n";
    if (result.weight_integral)
        std::cout << "character: chi(d) = kronecker("
                  << big_to_string(result.character.discriminant) << ", d), s = " << s_text
                  << "\n";
    std::cout << "cusp orders by divisor d of N:\n";
    for (const auto& [d, order] : result.cusp_orders)
        std::cout << "  d = " << d << ": order " << rational_text(order) << "\n";
    std::cout << "minimum cusp order: " << rational_text(result.min_cusp_order) << "\n";
    std::cout << "holomorphic at every cusp: " << (result.holomorphic_at_cusps ? "yes" : "no")
              << "\n";
    std::cout << "verdict: " << (verdict ? "admissible holomorphic form" : "not admissible")
              << "\n";
    return verdict ? 0 : 1;
}

// ------------------------------------------------------------------
// hecke / expand share a series selector
// ------------------------------------------------------------------

struct SeriesSelector {
    std::string name; // b | c | das, or empty when --t is used
    std::int64_t t = 0;
};

NamedSeries load_series(const SeriesSelector& sel, std::size_t length, CoefficientRing ring) {
    if (sel.t != 0) {
        if (!sel.name.empty())
            throw std::invalid_argument("give either --series or --t, not both");
        return tcore_series(sel.t, length, ring);
    }
    if (sel.name == "b") return b_series(length, ring);
    if (sel.name == "c") return c_series(length, ring);
    if (sel.name == "das") return das_product_series(length, ring);
    throw std::invalid_argument("unknown series '" + sel.name +
                                "' (choose b, c, das, or --t T)");
}

std::string selector_name(const SeriesSelector& sel) {
    return sel.t != 0 ? "a_" + std::to_string(sel.t) : sel.name;
}

struct HeckeOptions {
    std::uint64_t p = 0;
    SeriesSelector selector;
    std::int64_t weight = 0; // 0 = natural default for the series
    std::size_t length = 4097;
    std::uint32_t mod = 0;
    bool check_eigen = false;
    CommonFlags flags;
};

int run_hecke(const HeckeOptions& opt, const Budget& budget) {
    if (!is_prime(opt.p))
        throw std::invalid_argument("hecke: p = " + std::to_string(opt.p) +
                                    " is not prime");
    const auto ring = ring_from_mod(opt.mod);
    require_within_budget(budget, ring, static_cast<std::int64_t>(opt.length) - 1);

    const bool is_b = opt.selector.t == 0 && opt.selector.name == "b";
    const std::int64_t weight = opt.weight != 0 ? opt.weight : 1;
    // The weight-one attachment of b comes with its character; anything else
    // is transformed formally with a trivial character.
    const CharacterSpec chi = is_b && opt.weight == 0
                                  ? CharacterSpec{1, 128, 1, -128}
                                  : CharacterSpec{weight, 1, 1, 1};

    const auto source = load_series(opt.selector, opt.length, ring);
    const std::string name = selector_name(opt.selector);

    if (opt.check_eigen) {
        const auto result = eigen_check(source.data, opt.p, chi.weight, chi);
        if (opt.flags.as_json) {
            json doc = {
                {"series", name},
                {"p", opt.p},
                {"weight", chi.weight},
                {"eigenform", result.is_eigenform},
                {"lambda", big_to_string(result.lambda)},
                {"verified", result.verified_count},
            };
            if (!result.is_eigenform) doc["first_mismatch"] = result.first_mismatch;
            DocumentSummary summary;
            (result.is_eigenform ? summary.pass_count : summary.fail_count) += 1;
            std::cout << render(make_document(
                "hecke", {{"p", opt.p}, {"series", name}, {"check_eigen", true}},
                json::array({std::move(doc)}), summary));
        } else if (result.is_eigenform) {
            std::cout << "T_" << opt.p << " on " << name << ": eigenform, eigenvalue "
                      << result.lambda.str() << "\n"
                      << "verified " << result.verified_count << " coefficients\n";
        } else {
            std::cout << "T_" << opt.p << " on " << name
                      << ": not an eigenform; first mismatch at coefficient "
                      << result.first_mismatch << " (candidate eigenvalue "
                      << result.lambda.str() << ")\n";
        }
        return result.is_eigenform ? 0 : 1;
    }

    const auto transformed = hecke_Tp(source.data, opt.p, chi.weight, chi);
    emit_series_values(transformed.coeffs(), 0, opt.flags, "hecke",
                       {{"p", opt.p},
                        {"series", name},
                        {"weight", chi.weight},
                        {"ring", ring_name(ring)}});
    return 0;
}

// ------------------------------------------------------------------
// expand
// ------------------------------------------------------------------

struct ExpandOptions {
    std::vector<std::string> factors;
    SeriesSelector selector;
    std::size_t length = 50;
    std::uint32_t mod = 0;
    CommonFlags flags;
};

int run_expand(const ExpandOptions& opt, const Budget& budget) {
    const auto ring = ring_from_mod(opt.mod);
    require_within_budget(budget, ring, static_cast<std::int64_t>(opt.length) - 1);

    const bool named = !opt.selector.name.empty() || opt.selector.t != 0;
    if (named == !opt.factors.empty())
        throw std::invalid_argument(
            "expand: give either --factor terms or a named series, not both or neither");

    json parameters = {{"ring", ring_name(ring)}, {"len", opt.length}};
    TruncatedSeries product = TruncatedSeries::one(ring, opt.length);
    if (named) {
        product = load_series(opt.selector, opt.length, ring).data;
        parameters["series"] = selector_name(opt.selector);
    } else {
        json factor_list = json::array();
        for (const auto& text : opt.factors) {
            const auto [a, e] = parse_factor(text);
            product = mul(product, euler_product(a, e, opt.length, ring));
            factor_list.push_back({{"a", a}, {"e", e}});
        }
        parameters["factors"] = std::move(factor_list);
    }
    emit_series_values(product.coeffs(), 0, opt.flags, "expand", std::move(parameters));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"t-core partition counts and congruence verification"};
    app.require_subcommand(1);

    std::int64_t budget_override = 0;
    app.add_option("--budget", budget_override,
                   "Max coefficient index for sweeps (default 200000 modular, 50000 exact)")
        ->envname("TCORE_BUDGET");

    AtnOptions atn;
    auto* cmd_atn = app.add_subcommand("atn", "Evaluate t-core counts a_t(n)");
    cmd_atn->fallthrough();
    cmd_atn->add_option("--t", atn.t, "Core size, at least 2")->required();
    cmd_atn->add_option("--n", atn.n, "Single index n");
    cmd_atn->add_option("--range", atn.range, "Half-open index range A..B");
    cmd_atn->add_option("--mod", atn.mod, "Reduce values mod M");
    add_format_flags(cmd_atn, atn.flags);

    VerifyOptions verify;
    auto* cmd_verify =
        app.add_subcommand("verify", "Check a congruence family or the whole suite");
    cmd_verify->fallthrough();
    cmd_verify->add_option("family", verify.target, "Catalog family id, or 'suite'")
        ->required();
    cmd_verify->add_option("--primes", verify.primes, "Prime list p1,p2,...")
        ->delimiter(',');
    cmd_verify->add_option("--j", verify.j, "Residue or exponent parameter");
    cmd_verify->add_option("--k", verify.k, "Iteration depth");
    cmd_verify->add_option("--r", verify.r, "Offset parameter");
    cmd_verify->add_option("--nmax", verify.n_max, "Values of n per claim (default 200)");
    cmd_verify->add_option("--arg-cap", verify.arg_cap,
                           "Trim sweeps so progression arguments stay at most this");
    cmd_verify->add_option("--threads", verify.threads,
                           "Worker threads for suite verification");
    add_format_flags(cmd_verify, verify.flags);

    EtaOptions eta;
    auto* cmd_eta = app.add_subcommand("eta", "Eta-quotient admissibility report");
    cmd_eta->fallthrough();
    cmd_eta->add_option("--level", eta.level, "Level N")->required();
    cmd_eta->add_option("--exp", eta.exponents, "Factor delta:r (repeatable)");
    add_format_flags(cmd_eta, eta.flags);

    HeckeOptions hecke;
    auto* cmd_hecke =
        app.add_subcommand("hecke", "Apply T_p to a named series or check an eigenform");
    cmd_hecke->fallthrough();
    cmd_hecke->add_option("--p", hecke.p, "Prime index of the operator")->required();
    cmd_hecke->add_option("--series", hecke.selector.name, "Named series: b, c, das");
    cmd_hecke->add_option("--t", hecke.selector.t, "Use the t-core series instead");
    cmd_hecke->add_option("--weight", hecke.weight,
                          "Weight for the formal operator (default: natural weight)");
    cmd_hecke->add_option("--len", hecke.length, "Source truncation length");
    cmd_hecke->add_option("--mod", hecke.mod, "Work mod M");
    cmd_hecke->add_flag("--check-eigen", hecke.check_eigen,
                        "Compare T_p f against a(p) f and report");
    add_format_flags(cmd_hecke, hecke.flags);

    ExpandOptions expand;
    auto* cmd_expand =
        app.add_subcommand("expand", "Dump a named series or a product of Euler factors");
    cmd_expand->fallthrough();
    cmd_expand->add_option("--factor", expand.factors,
                           "Euler factor a:e for (q^a;q^a)^e (repeatable)");
    cmd_expand->add_option("--series", expand.selector.name, "Named series: b, c, das");
    cmd_expand->add_option("--t", expand.selector.t, "Use the t-core series instead");
    cmd_expand->add_option("--len", expand.length, "Coefficients to print (default 50)");
    cmd_expand->add_option("--mod", expand.mod, "Work mod M");
    add_format_flags(cmd_expand, expand.flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version print cleanly; bad usage is 2
    }

    try {
        const Budget budget = make_budget(budget_override);
        if (app.got_subcommand(cmd_atn)) return run_atn(atn, budget);
        if (app.got_subcommand(cmd_verify)) return run_verify(verify, budget);
        if (app.got_subcommand(cmd_eta)) return run_eta(eta);
        if (app.got_subcommand(cmd_hecke)) return run_hecke(hecke, budget);
        if (app.got_subcommand(cmd_expand)) return run_expand(expand, budget);
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << " (required length "
                  << e.required_length << ")\n";
        return 2;
    } catch (const hypothesis_error& e) {
        std::cerr << "hypothesis error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2; // no subcommand dispatched; require_subcommand should prevent this
}
