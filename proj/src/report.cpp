#include "tcore/report.hpp"

#include <sstream>

namespace tcore {

namespace {

const char* kSchemaVersion = "1";

nlohmann::json instance_parameters(const FamilyInstance& inst) {
    nlohmann::json primes = nlohmann::json::array();
    for (const auto p : inst.primes) primes.push_back(p);
    return {
        {"primes", std::move(primes)}, {"j", inst.j},         {"k", inst.k},
        {"r", inst.r},                 {"n_max", inst.n_max}, {"arg_cap", inst.arg_cap},
    };
}

} // namespace

std::string big_to_string(const BigInt& v) { return v.str(); }

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json claims = nlohmann::json::array();
    for (std::size_t i = 0; i < report.claims.size(); ++i) {
        const auto& claim = report.claims[i];
        claims.push_back({
            {"label", claim.label},
            {"modulus", claim.modulus},
            {"n_count", claim.n_count},
            {"evaluation", i < report.claim_eval.size() ? report.claim_eval[i] : ""},
            {"failures", i < report.failures_per_claim.size() ? report.failures_per_claim[i]
                                                              : 0},
        });
    }

    nlohmann::json counterexamples = nlohmann::json::array();
    for (const auto& ce : report.counterexamples) {
        counterexamples.push_back({
            {"claim", ce.claim_index},
            {"n", ce.n},
            {"lhs", big_to_string(ce.lhs)},
            {"rhs", big_to_string(ce.rhs)},
        });
    }

    return {
        {"family", family_id_name(report.instance.id)},
        {"parameters", instance_parameters(report.instance)},
        {"claims", std::move(claims)},
        {"counterexamples", std::move(counterexamples)},
        {"n_requested", report.n_requested},
        {"n_checked", report.n_checked},
        {"pass", report.pass},
    };
}

nlohmann::json series_values_json(const std::vector<BigInt>& values, std::int64_t first_n) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.push_back({
            {"n", first_n + static_cast<std::int64_t>(i)},
            {"value", big_to_string(values[i])},
        });
    }
    return out;
}

std::string series_values_csv(const std::vector<BigInt>& values, std::int64_t first_n) {
    std::ostringstream out;
    out << "n,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << first_n + static_cast<std::int64_t>(i) << ',' << values[i].str() << '\n';
    return out.str();
}

std::string reports_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream out;
    out << "family,claim,evaluation,checked,failures,pass\n";
    for (const auto& report : reports) {
        for (std::size_t i = 0; i < report.claims.size(); ++i) {
            const auto failures =
                i < report.failures_per_claim.size() ? report.failures_per_claim[i] : 0;
            out << family_id_name(report.instance.id) << ',' << report.claims[i].label << ','
                << (i < report.claim_eval.size() ? report.claim_eval[i] : "") << ','
                << report.n_checked << ',' << failures << ','
                << (failures == 0 ? "true" : "false") << '\n';
        }
    }
    return out.str();
}

nlohmann::json make_document(const std::string& command, nlohmann::json parameters,
                             nlohmann::json results, const DocumentSummary& summary) {
    return {
        {"schema_version", kSchemaVersion},
        {"command", command},
        {"parameters", std::move(parameters)},
        {"results", std::move(results)},
        {"summary",
         {
             {"pass_count", summary.pass_count},
             {"fail_count", summary.fail_count},
             {"error_count", summary.error_count},
         }},
    };
}

nlohmann::json make_document(const std::string& command, nlohmann::json parameters,
                             const std::vector<VerificationReport>& reports) {
    DocumentSummary summary;
    nlohmann::json results = nlohmann::json::array();
    for (const auto& report : reports) {
        (report.pass ? summary.pass_count : summary.fail_count) += 1;
        results.push_back(to_json(report));
    }
    return make_document(command, std::move(parameters), std::move(results), summary);
}

std::string render(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

} // namespace tcore
