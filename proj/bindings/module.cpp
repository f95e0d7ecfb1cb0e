/** @file
 * Python bindings for the computation and verification surface.
 *
 * Arbitrary-precision coefficients cross the boundary as native Python
 * ints; structured results (verification reports, admissibility checks,
 * eigen reports) cross as the same canonical JSON the command line tool
 * emits, parsed into dicts on the Python side.
 */

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tcore/families.hpp"
#include "tcore/generators.hpp"
#include "tcore/modular.hpp"
#include "tcore/report.hpp"
#include "tcore/series.hpp"

namespace py = pybind11;
using namespace tcore;

namespace {

py::object to_py_int(const BigInt& v) {
    const std::string text = v.str();
    PyObject* raw = PyLong_FromString(text.c_str(), nullptr, 10);
    if (raw == nullptr) throw py::error_already_set();
    return py::reinterpret_steal<py::object>(raw);
}

py::list to_py_values(const std::vector<BigInt>& values) {
    py::list out;
    for (const auto& v : values) out.append(to_py_int(v));
    return out;
}

CoefficientRing ring_of(std::uint32_t mod) {
    return mod == 0 ? CoefficientRing::exact() : CoefficientRing::mod(mod);
}

Budget budget_of(std::int64_t value) {
    Budget budget;
    if (value > 0) {
        budget.max_mod_index = value;
        budget.max_exact_index = value;
    }
    return budget;
}

NamedSeries named_series(const std::string& name, std::int64_t t, std::size_t length,
                         CoefficientRing ring) {
    if (t != 0) {
        if (!name.empty())
            throw std::invalid_argument("give either a series name or t, not both");
        return tcore_series(t, length, ring);
    }
    if (name == "b") return b_series(length, ring);
    if (name == "c") return c_series(length, ring);
    if (name == "das") return das_product_series(length, ring);
    throw std::invalid_argument("unknown series '" + name + "' (choose b, c, das, or t)");
}

std::string verify_json(const std::string& family, const std::vector<std::uint64_t>& primes,
                        std::int64_t j, std::int64_t k, std::int64_t r, std::int64_t n_max,
                        std::int64_t arg_cap, std::int64_t budget) {
    const auto id = family_id_from_string(family);
    if (!id) throw std::invalid_argument("unknown family '" + family + "'");
    SeriesCache cache;
    const FamilyInstance inst{*id, primes, j, k, r, n_max, arg_cap};
    return render(to_json(verify(inst, budget_of(budget), cache)));
}

std::string suite_json(unsigned threads, std::int64_t budget) {
    SeriesCache cache;
    const auto reports = verify_all(default_suite(), budget_of(budget), cache, threads);
    return render(make_document("verify", {{"target", "suite"}}, reports));
}

std::string eta_json(std::uint64_t level,
                     const std::map<std::uint64_t, std::int64_t>& exponents) {
    const EtaQuotient quotient(level, exponents);
    const auto result = admissibility_check(quotient);
    nlohmann::json cusps = nlohmann::json::array();
    for (const auto& [d, order] : result.cusp_orders) {
        cusps.push_back({{"d", d},
                         {"numerator", order.numerator()},
                         {"denominator", order.denominator()}});
    }
    const nlohmann::json doc = {
        {"level", level},
        {"weight_integral", result.weight_integral},
        {"twice_weight", result.twice_weight},
        {"cond_a", result.cond_A},
        {"cond_b", result.cond_B},
        {"character",
         {{"s_num", big_to_string(result.character.s_num)},
          {"s_den", big_to_string(result.character.s_den)},
          {"discriminant", big_to_string(result.character.discriminant)}}},
        {"cusp_orders", std::move(cusps)},
        {"min_order_numerator", result.min_cusp_order.numerator()},
        {"min_order_denominator", result.min_cusp_order.denominator()},
        {"holomorphic_at_cusps", result.holomorphic_at_cusps},
        {"admissible", result.admissible()},
    };
    return render(doc);
}

std::string hecke_eigen_json(std::uint64_t p, const std::string& series, std::int64_t t,
                             std::size_t length) {
    const bool is_b = t == 0 && series == "b";
    const CharacterSpec chi =
        is_b ? CharacterSpec{1, 128, 1, -128} : CharacterSpec{1, 1, 1, 1};
    const auto source = named_series(series, t, length, CoefficientRing::exact());
    const auto result = eigen_check(source.data, p, chi.weight, chi);
    nlohmann::json doc = {
        {"eigenform", result.is_eigenform},
        {"lambda", big_to_string(result.lambda)},
        {"verified", result.verified_count},
    };
    if (!result.is_eigenform) doc["first_mismatch"] = result.first_mismatch;
    return render(doc);
}

py::list hecke_apply(std::uint64_t p, const std::string& series, std::int64_t t,
                     std::int64_t weight, std::size_t length, std::uint32_t mod) {
    const bool is_b = t == 0 && series == "b";
    const CharacterSpec chi = is_b && weight == 0
                                  ? CharacterSpec{1, 128, 1, -128}
                                  : CharacterSpec{weight != 0 ? weight : 1, 1, 1, 1};
    const auto source = named_series(series, t, length, ring_of(mod));
    return to_py_values(hecke_Tp(source.data, p, chi.weight, chi).coeffs());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "t-core partition counts and congruence verification (native core)";
    m.attr("__version__") = "1.0.0";

    py::register_exception<hypothesis_error>(m, "HypothesisError", PyExc_ValueError);
    py::register_exception<budget_error>(m, "BudgetError", PyExc_ValueError);

    m.def(
        "atn",
        [](std::int64_t t, std::int64_t n) {
            if (n < 0) throw std::invalid_argument("n must be nonnegative");
            const auto series =
                tcore_series(t, static_cast<std::size_t>(n) + 1, CoefficientRing::exact());
            return to_py_int(series.data.coeff(static_cast<std::size_t>(n)));
        },
        py::arg("t"), py::arg("n"), "Number of t-core partitions of n.");

    m.def(
        "atn_range",
        [](std::int64_t t, std::int64_t lo, std::int64_t hi, std::uint32_t mod) {
            if (lo < 0 || hi < lo) throw std::invalid_argument("need 0 <= lo <= hi");
            const auto series =
                tcore_series(t, static_cast<std::size_t>(hi), ring_of(mod));
            py::list out;
            for (std::int64_t n = lo; n < hi; ++n)
                out.append(to_py_int(series.data.coeff(static_cast<std::size_t>(n))));
            return out;
        },
        py::arg("t"), py::arg("lo"), py::arg("hi"), py::arg("mod") = 0,
        "a_t(n) for n in the half-open range [lo, hi), optionally mod m.");

    m.def(
        "a2_closed", [](std::uint64_t n) { return a2_closed(n); }, py::arg("n"),
        "a_2(n) via the triangular-number characterization.");

    m.def(
        "c_closed", [](std::uint64_t n) { return c_closed(n); }, py::arg("n"),
        "Coefficient n of (q;q)^3 in closed form.");

    m.def(
        "series_values",
        [](const std::string& name, std::int64_t t, std::size_t length, std::uint32_t mod) {
            return to_py_values(named_series(name, t, length, ring_of(mod)).data.coeffs());
        },
        py::arg("name") = "", py::arg("t") = 0, py::arg("length") = 32, py::arg("mod") = 0,
        "Coefficients of a named series (b, c, das) or the t-core series.");

    m.def(
        "expand",
        [](const std::vector<std::pair<std::int64_t, std::int64_t>>& factors,
           std::size_t length, std::uint32_t mod) {
            const auto ring = ring_of(mod);
            auto product = TruncatedSeries::one(ring, length);
            for (const auto& [a, e] : factors)
                product = mul(product, euler_product(a, e, length, ring));
            return to_py_values(product.coeffs());
        },
        py::arg("factors"), py::arg("length") = 32, py::arg("mod") = 0,
        "Expand a product of Euler factors (q^a;q^a)^e given as (a, e) pairs.");

    m.def(
        "kronecker",
        [](std::int64_t a, std::int64_t n) { return kronecker(a, n); }, py::arg("a"),
        py::arg("n"), "Kronecker symbol (a/n).");

    m.def("verify_json", &verify_json, py::arg("family"),
          py::arg("primes") = std::vector<std::uint64_t>{}, py::arg("j") = 0,
          py::arg("k") = 0, py::arg("r") = 0, py::arg("n_max") = 200,
          py::arg("arg_cap") = 0, py::arg("budget") = 0,
          "Verify one family instance; returns the canonical report as JSON text.");

    m.def("suite_json", &suite_json, py::arg("threads") = 1, py::arg("budget") = 0,
          "Run the default verification suite; returns the full document as JSON text.");

    m.def("eta_json", &eta_json, py::arg("level"), py::arg("exponents"),
          "Admissibility report for prod eta(delta z)^r as JSON text.");

    m.def("hecke_eigen_json", &hecke_eigen_json, py::arg("p"), py::arg("series") = "b",
          py::arg("t") = 0, py::arg("length") = 4097,
          "Eigenform check for T_p on a named series as JSON text.");

    m.def("hecke_apply", &hecke_apply, py::arg("p"), py::arg("series") = "b",
          py::arg("t") = 0, py::arg("weight") = 0, py::arg("length") = 1025,
          py::arg("mod") = 0, "Coefficients of T_p applied to a named series.");
}
