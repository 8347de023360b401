#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eurqm/bounds.hpp"
#include "eurqm/verify.hpp"
#include "eurqm_cli/descriptors.hpp"

namespace eurqm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolations = 2;
inline constexpr const char* kToolVersion = "0.1.0";

// Report fields ---------------------------------------------------------------

/// lhs_eur, L1, Lopt, eur_total, lhs_iep, U1, Uopt, iep_dep, iep_indep
std::vector<std::string> default_scan_fields();
std::vector<std::string> known_report_fields();
/// Throws UsageError for unknown names.
double report_field(const BoundReport& r, const std::string& name);

nlohmann::json report_to_json(const BoundReport& r);
nlohmann::json suite_to_json(const SuiteReport& r, const SuiteConfig& config);

/// %.12g
std::string format_value(double v);

// bound -----------------------------------------------------------------------

struct BoundOptions {
    std::string state;
    std::vector<std::string> measurements;
};
nlohmann::json run_bound(const BoundOptions& opts, const SearchLimits& limits = {});

// scan ------------------------------------------------------------------------

struct GridAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

struct ScanSpec {
    std::string state;
    std::vector<std::string> measurements;
    std::vector<GridAxis> grid;
    std::vector<std::string> outputs;  // empty: default_scan_fields()
};

inline constexpr int kDefaultAxisCount = 61;

/// "theta=0:pi:61" (inclusive endpoints); "theta=0:pi" uses kDefaultAxisCount.
GridAxis parse_axis(const std::string& text);
ScanSpec scan_spec_from_json(const nlohmann::json& j);
nlohmann::json scan_spec_to_json(const ScanSpec& spec);

/// Grid counts >= 2, at most two axes, every axis bound by exactly one
/// measurement descriptor and every free descriptor parameter swept.
void validate(const ScanSpec& spec);

struct ScanResult {
    std::string csv;
    nlohmann::json metadata;
};

/// One CSV row per grid point, first axis outermost.
ScanResult run_scan(const ScanSpec& spec, unsigned threads = 0, const SearchLimits& limits = {});

/// "NAME=PATH": appends a column of externally computed values (one number
/// per line, one line per grid row) so other published bounds can sit next
/// to ours in the same CSV.
void append_external_column(ScanResult& result, const std::string& name_and_path);

// verify / lemma --------------------------------------------------------------

/// "2x2,3x3"
std::vector<Dims> parse_dims_list(const std::string& text);
/// "2,3,4"
std::vector<int> parse_int_list(const std::string& text, const std::string& field);

struct LemmaOptions {
    SuiteConfig config;
    std::vector<int> ordering;  // 1-based; empty means identity order
    bool product_only = false;
};

struct LemmaSummary {
    nlohmann::json json;
    bool all_hold = true;
};

/// Per-trial lemma gaps. In product-only mode every trial also carries the
/// gap computed from single-system quantities, and the summary reports the
/// largest deviation between the two.
LemmaSummary run_lemma(const LemmaOptions& opts);

}  // namespace eurqm::cli
