#pragma once

/// Machine-readable output documents.
///
/// Everything the tool emits as JSON funnels through make_document() and
/// render(), which pin a canonical form: keys sorted, no floating point
/// anywhere, and any integer that can outgrow 64 bits carried as a decimal
/// string.  Rendering the parse of a rendered document reproduces it byte
/// for byte, and the content never depends on thread count or timing.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "tcore/families.hpp"
#include "tcore/series.hpp"

namespace tcore {

/// Decimal-string form of an arbitrary-precision integer.
std::string big_to_string(const BigInt& v);

/// One verification report as a JSON object: family name, bound parameters,
/// per-claim outcomes (label, modulus, evaluation route, failure count),
/// counterexamples, and the overall verdict.  Timing is deliberately
/// omitted.
nlohmann::json to_json(const VerificationReport& report);

/// Coefficient values as [{"n": ..., "value": "..."}, ...] starting at
/// first_n.
nlohmann::json series_values_json(const std::vector<BigInt>& values,
                                  std::int64_t first_n = 0);

/// The same values as CSV with the fixed header row "n,value".
std::string series_values_csv(const std::vector<BigInt>& values,
                              std::int64_t first_n = 0);

/// Per-claim CSV summary of verification reports; one row per claim.
std::string reports_csv(const std::vector<VerificationReport>& reports);

struct DocumentSummary {
    std::int64_t pass_count = 0;
    std::int64_t fail_count = 0;
    std::int64_t error_count = 0;
};

/// Top-level document: schema_version, the command that produced it, its
/// parameters, the result list, and a pass/fail/error tally.
nlohmann::json make_document(const std::string& command, nlohmann::json parameters,
                             nlohmann::json results, const DocumentSummary& summary);

/// Convenience overload: serialize the reports and tally the summary from
/// their verdicts.
nlohmann::json make_document(const std::string& command, nlohmann::json parameters,
                             const std::vector<VerificationReport>& reports);

/// The one serialization point: two-space indent plus a trailing newline.
std::string render(const nlohmann::json& doc);

} // namespace tcore
