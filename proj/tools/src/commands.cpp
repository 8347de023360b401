#include "eurqm_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "eurqm/bases.hpp"
#include "eurqm/named_states.hpp"
#include "eurqm/parallel.hpp"

namespace eurqm::cli {

namespace {

using Json = nlohmann::json;

// FNV-1a, used only to fingerprint scan specs in sidecar metadata.
std::string fingerprint(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<int> one_based(const std::vector<int>& v) {
    std::vector<int> out;
    for (int i : v) out.push_back(i + 1);
    return out;
}

Json cover_to_json(const PairCover& c) {
    Json edges = Json::array();
    for (auto [i, j] : c.edges) edges.push_back({i + 1, j + 1});
    return Json{{"degree", c.degree}, {"edges", edges}};
}

double axis_value(const GridAxis& a, int i) {
    if (i == a.count - 1) return a.stop;
    return a.start + (a.stop - a.start) * static_cast<double>(i) / static_cast<double>(a.count - 1);
}

double json_angle(const Json& v, const std::string& field) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_angle(v.get<std::string>());
    throw UsageError(field + ": expected a number or angle expression");
}

MeasurementSet instantiate_all(const std::vector<MeasurementTemplate>& templates,
                               const std::map<std::string, double>& bindings) {
    std::vector<ProjectiveMeasurement> ms;
    for (const auto& t : templates) ms.push_back(t.instantiate(bindings));
    try {
        return MeasurementSet(std::move(ms));
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("measurements: ") + e.what());
    }
}

}  // namespace

std::vector<std::string> default_scan_fields() {
    return {"lhs_eur", "L1", "Lopt", "eur_total", "lhs_iep", "U1", "Uopt", "iep_dep", "iep_indep"};
}

std::vector<std::string> known_report_fields() {
    return {"lhs_eur",  "lhs_iep",  "L1",         "Lopt",       "eur_total",     "B_tilde",
            "U1",       "Uopt",     "U1_tilde",   "U2_tilde",   "Uopt_tilde",    "iep_total_dep",
            "iep_dep",  "iep_indep", "iep_total_indep", "H_AB_cond"};
}

double report_field(const BoundReport& r, const std::string& name) {
    if (name == "lhs_eur") return r.lhs_eur;
    if (name == "lhs_iep") return r.lhs_iep;
    if (name == "L1") return r.l1;
    if (name == "Lopt") return r.lopt;
    if (name == "eur_total") return r.eur_total;
    if (name == "B_tilde") return r.b_tilde;
    if (name == "U1") return r.u1;
    if (name == "Uopt") return r.uopt;
    if (name == "U1_tilde") return r.u1_tilde;
    if (name == "U2_tilde") return r.u2_tilde;
    if (name == "Uopt_tilde") return r.uopt_tilde;
    if (name == "iep_dep" || name == "iep_total_dep") return r.iep_total_dep;
    if (name == "iep_indep" || name == "iep_total_indep") return r.iep_total_indep;
    if (name == "H_AB_cond") return r.h_ab_cond;
    throw UsageError("unknown report field '" + name + "'");
}

Json report_to_json(const BoundReport& r) {
    Json labels = Json::array();
    for (const auto& m : r.best_ordering_eur.sequence) labels.push_back(m.label());
    return Json{
        {"lhs_eur", r.lhs_eur},
        {"lhs_iep", r.lhs_iep},
        {"L1", r.l1},
        {"Lopt", r.lopt},
        {"eur_total", r.eur_total},
        {"B_tilde", r.b_tilde},
        {"U1", r.u1},
        {"Uopt", r.uopt},
        {"U1_tilde", r.u1_tilde},
        {"U2_tilde", r.u2_tilde},
        {"Uopt_tilde", r.uopt_tilde},
        {"iep_total_dep", r.iep_total_dep},
        {"iep_total_indep", r.iep_total_indep},
        {"H_AB_cond", r.h_ab_cond},
        {"best_ordering_eur", {{"permutation", one_based(r.best_ordering_eur.permutation)}, {"labels", labels}}},
        {"best_cover", cover_to_json(r.best_cover)},
    };
}

Json suite_to_json(const SuiteReport& r, const SuiteConfig& config) {
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        violations.push_back({{"seed", v.seed}, {"instance", v.instance}, {"margin", v.margin}});
    }
    Json dims = Json::array();
    for (const auto& d : config.dims) dims.push_back(std::to_string(d.a) + "x" + std::to_string(d.b));
    return Json{
        {"total", r.total},
        {"checks", r.checks},
        {"violations", violations},
        {"worst_margin", r.worst_margin},
        {"lemma_infinite_rhs", r.lemma_infinite},
        {"oracle_checks", r.oracle_checks},
        {"config",
         {{"trials", config.trials},
          {"seed", config.seed},
          {"dims", dims},
          {"n_meas", config.n_measurements},
          {"tolerance", config.tolerance}}},
    };
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Json run_bound(const BoundOptions& opts, const SearchLimits& limits) {
    if (opts.measurements.size() < 2) throw UsageError("--meas: at least two measurements are required");
    const auto state = parse_state(opts.state);
    std::vector<MeasurementTemplate> templates;
    for (const auto& d : opts.measurements) {
        templates.push_back(MeasurementTemplate::parse(d));
        if (!templates.back().free_parameters().empty()) {
            throw UsageError("--meas '" + d + "': parameter '" + templates.back().free_parameters().front() +
                             "' needs a value (sweeps belong to the scan command)");
        }
    }
    const auto ms = instantiate_all(templates, {});
    if (ms.dim() != state.dim_a()) {
        throw UsageError("--meas: measurement dimension " + std::to_string(ms.dim()) +
                         " does not match the state's subsystem A dimension " + std::to_string(state.dim_a()));
    }
    Json j = report_to_json(compute_report(state, ms, limits));
    Json labels = Json::array();
    for (const auto& m : ms) labels.push_back(m.label());
    j["state"] = opts.state;
    j["measurements"] = labels;
    return j;
}

GridAxis parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw UsageError("--axis '" + text + "': expected NAME=START:STOP[:COUNT]");
    GridAxis a;
    a.name = text.substr(0, eq);
    const std::string rest = text.substr(eq + 1);
    std::vector<std::string> parts;
    std::stringstream ss(rest);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3 || a.name.empty()) {
        throw UsageError("--axis '" + text + "': expected NAME=START:STOP[:COUNT]");
    }
    a.start = parse_angle(parts[0]);
    a.stop = parse_angle(parts[1]);
    if (parts.size() == 2) {
        a.count = kDefaultAxisCount;
        return a;
    }
    try {
        std::size_t used = 0;
        a.count = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    } catch (const std::exception&) {
        throw UsageError("--axis '" + text + "': count must be an integer");
    }
    return a;
}

ScanSpec scan_spec_from_json(const Json& j) {
    if (!j.is_object()) throw UsageError("scan spec: expected a JSON object");
    ScanSpec s;
    if (!j.contains("state") || !j["state"].is_string()) throw UsageError("scan spec: 'state' must be a descriptor string");
    s.state = j["state"].get<std::string>();
    if (!j.contains("measurements") || !j["measurements"].is_array()) {
        throw UsageError("scan spec: 'measurements' must be an array of descriptor strings");
    }
    for (const auto& m : j["measurements"]) {
        if (!m.is_string()) throw UsageError("scan spec: 'measurements' entries must be strings");
        s.measurements.push_back(m.get<std::string>());
    }
    if (!j.contains("grid") || !j["grid"].is_array()) throw UsageError("scan spec: 'grid' must be an array of axes");
    for (const auto& a : j["grid"]) {
        if (!a.is_object() || !a.contains("name") || !a.contains("start") || !a.contains("stop")) {
            throw UsageError("scan spec: each grid axis needs name, start and stop");
        }
        GridAxis axis;
        axis.name = a["name"].get<std::string>();
        axis.start = json_angle(a["start"], "scan spec grid '" + axis.name + "' start");
        axis.stop = json_angle(a["stop"], "scan spec grid '" + axis.name + "' stop");
        const Json count = a.value("count", Json(kDefaultAxisCount));
        if (!count.is_number_integer()) throw UsageError("scan spec grid '" + axis.name + "': count must be an integer");
        axis.count = count.get<int>();
        s.grid.push_back(axis);
    }
    if (j.contains("outputs")) {
        for (const auto& o : j["outputs"]) s.outputs.push_back(o.get<std::string>());
    }
    return s;
}

Json scan_spec_to_json(const ScanSpec& spec) {
    Json grid = Json::array();
    for (const auto& a : spec.grid) {
        grid.push_back({{"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"count", a.count}});
    }
    return Json{{"state", spec.state},
                {"measurements", spec.measurements},
                {"grid", grid},
                {"outputs", spec.outputs.empty() ? default_scan_fields() : spec.outputs}};
}

void validate(const ScanSpec& spec) {
    if (spec.measurements.size() < 2) throw UsageError("scan: at least two measurements are required");
    if (spec.grid.empty() || spec.grid.size() > 2) throw UsageError("scan: the grid needs one or two axes");
    std::map<std::string, int> owners;
    for (const auto& d : spec.measurements) {
        for (const auto& p : MeasurementTemplate::parse(d).free_parameters()) ++owners[p];
    }
    std::set<std::string> axis_names;
    for (const auto& a : spec.grid) {
        if (a.count < 2) throw UsageError("scan: axis '" + a.name + "' needs a count of at least 2");
        if (!axis_names.insert(a.name).second) throw UsageError("scan: axis '" + a.name + "' is listed twice");
        const auto it = owners.find(a.name);
        if (it == owners.end()) throw UsageError("scan: axis '" + a.name + "' is not a parameter of any measurement");
        if (it->second != 1) throw UsageError("scan: axis '" + a.name + "' appears in more than one measurement");
    }
    for (const auto& [name, count] : owners) {
        if (!axis_names.count(name)) throw UsageError("scan: measurement parameter '" + name + "' has no grid axis");
    }
    for (const auto& f : spec.outputs) (void)report_field(BoundReport{}, f);
}

ScanResult run_scan(const ScanSpec& spec, unsigned threads, const SearchLimits& limits) {
    validate(spec);
    const auto fields = spec.outputs.empty() ? default_scan_fields() : spec.outputs;
    const auto state = parse_state(spec.state);
    std::vector<MeasurementTemplate> templates;
    for (const auto& d : spec.measurements) templates.push_back(MeasurementTemplate::parse(d));

    const int outer = spec.grid[0].count;
    const int inner = spec.grid.size() > 1 ? spec.grid[1].count : 1;
    const std::size_t points = static_cast<std::size_t>(outer) * inner;

    // Fail on dimension mismatch before spawning workers.
    {
        std::map<std::string, double> probe;
        for (const auto& a : spec.grid) probe[a.name] = a.start;
        const auto ms = instantiate_all(templates, probe);
        if (ms.dim() != state.dim_a()) {
            throw UsageError("scan: measurement dimension " + std::to_string(ms.dim()) +
                             " does not match the state's subsystem A dimension " + std::to_string(state.dim_a()));
        }
    }

    std::vector<std::string> rows(points);
    parallel_for(points, threads, [&](std::size_t k) {
        std::map<std::string, double> bindings;
        std::vector<double> coords;
        const int i = static_cast<int>(k / inner);
        coords.push_back(axis_value(spec.grid[0], i));
        bindings[spec.grid[0].name] = coords.back();
        if (spec.grid.size() > 1) {
            coords.push_back(axis_value(spec.grid[1], static_cast<int>(k % inner)));
            bindings[spec.grid[1].name] = coords.back();
        }
        const auto report = compute_report(state, instantiate_all(templates, bindings), limits);
        std::string line;
        for (double c : coords) line += format_value(c) + ",";
        for (std::size_t f = 0; f < fields.size(); ++f) {
            line += format_value(report_field(report, fields[f]));
            line += f + 1 < fields.size() ? "," : "\n";
        }
        rows[k] = std::move(line);
    });

    ScanResult result;
    for (const auto& a : spec.grid) result.csv += a.name + ",";
    for (std::size_t f = 0; f < fields.size(); ++f) result.csv += fields[f] + (f + 1 < fields.size() ? "," : "\n");
    for (const auto& r : rows) result.csv += r;

    const Json canonical = scan_spec_to_json(spec);
    result.metadata = Json{{"spec", canonical},
                           {"spec_hash", fingerprint(canonical.dump())},
                           {"seed", nullptr},
                           {"grid", canonical["grid"]},
                           {"rows", points},
                           {"ordering", "row-major, first axis outermost, inclusive endpoints"},
                           {"tool_version", kToolVersion}};
    return result;
}

void append_external_column(ScanResult& result, const std::string& name_and_path) {
    const auto eq = name_and_path.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--compare '" + name_and_path + "': expected NAME=PATH");
    const std::string name = name_and_path.substr(0, eq);
    const std::string path = name_and_path.substr(eq + 1);
    std::ifstream in(path);
    if (!in) throw UsageError("--compare: cannot open '" + path + "'");
    std::vector<std::string> values;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        try {
            values.push_back(format_value(std::stod(line)));
        } catch (const std::exception&) {
            throw UsageError("--compare: '" + path + "' has a non-numeric line '" + line + "'");
        }
    }
    std::vector<std::string> lines;
    std::stringstream ss(result.csv);
    for (std::string line; std::getline(ss, line);) lines.push_back(line);
    if (values.size() + 1 != lines.size()) {
        throw UsageError("--compare: '" + path + "' has " + std::to_string(values.size()) + " values for " +
                         std::to_string(lines.size() - 1) + " grid rows");
    }
    std::string csv = lines[0] + "," + name + "\n";
    for (std::size_t i = 0; i < values.size(); ++i) csv += lines[i + 1] + "," + values[i] + "\n";
    result.csv = std::move(csv);
    result.metadata["external_columns"].push_back({{"name", name}, {"path", path}});
}

std::vector<Dims> parse_dims_list(const std::string& text) {
    std::vector<Dims> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto x = item.find('x');
        try {
            if (x == std::string::npos) throw std::invalid_argument(item);
            std::size_t ua = 0, ub = 0;
            const std::string sa = item.substr(0, x), sb = item.substr(x + 1);
            Dims d{std::stoi(sa, &ua), std::stoi(sb, &ub)};
            if (ua != sa.size() || ub != sb.size()) throw std::invalid_argument(item);
            out.push_back(d);
        } catch (const std::exception&) {
            throw UsageError("--dims: expected entries like 2x2, got '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("--dims: empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& field) {
    std::vector<int> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(field + ": expected a comma-separated list of integers, got '" + text + "'");
        }
    }
    if (out.empty()) throw UsageError(field + ": empty list");
    return out;
}

LemmaSummary run_lemma(const LemmaOptions& opts) {
    const auto& cfg = opts.config;
    try {
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::vector<int> ordering;
    for (int i : opts.ordering) ordering.push_back(i - 1);
    if (!ordering.empty()) {
        for (int n : cfg.n_measurements) {
            if (static_cast<int>(ordering.size()) != n) {
                throw UsageError("--ordering: has " + std::to_string(ordering.size()) + " entries but --n-meas includes " +
                                 std::to_string(n));
            }
        }
        std::vector<int> sorted = ordering;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
            if (sorted[i] != i) throw UsageError("--ordering: must be a permutation of 1..N");
        }
    }

    struct Job {
        Dims dims;
        int n;
    };
    std::vector<Job> jobs;
    for (const auto& d : cfg.dims) {
        for (int n : cfg.n_measurements) jobs.push_back({d, n});
    }
    const std::size_t per_job = static_cast<std::size_t>(cfg.trials);
    const std::size_t total = jobs.size() * per_job;
    std::vector<Json> trials(total);

    parallel_for(total, cfg.threads, [&](std::size_t k) {
        const auto& job = jobs[k / per_job];
        const std::uint64_t seed = cfg.seed + k;
        std::mt19937_64 rng(seed);
        std::optional<BipartiteState> state;
        ComplexMatrix rho_a;
        if (opts.product_only) {
            rho_a = random_density_matrix(job.dims.a, rng());
            state = product_state(rho_a, random_density_matrix(job.dims.b, rng()));
        } else {
            state = random_state(job.dims.a, job.dims.b, rng());
        }
        std::vector<ProjectiveMeasurement> bases;
        for (int i = 0; i < job.n; ++i) bases.push_back(random_basis(job.dims.a, rng()));
        const MeasurementSet ms(std::move(bases));
        std::vector<int> perm = ordering;
        if (perm.empty()) {
            perm.resize(job.n);
            std::iota(perm.begin(), perm.end(), 0);
        }
        const auto ord = make_ordering(ms, perm);
        const auto r = lemma_check(*state, ms, ord, cfg.tolerance);

        Json t{{"seed", seed},
               {"dims", std::to_string(job.dims.a) + "x" + std::to_string(job.dims.b)},
               {"n", job.n},
               {"ordering", one_based(perm)},
               {"lhs", r.lhs},
               {"rhs", r.rhs_infinite ? Json(nullptr) : Json(r.rhs)},
               {"gap", r.rhs_infinite ? Json(nullptr) : Json(r.lhs - r.rhs)},
               {"rhs_infinite", r.rhs_infinite},
               {"holds", r.holds}};

        if (opts.product_only) {
            // Product input: sigma = tau_A (x) rho_B, so the gap reduces to
            // single-system entropies and a relative entropy on A.
            double lhs_a = -static_cast<double>(job.n) * von_neumann_entropy(rho_a);
            for (const auto& m : ms) lhs_a += shannon_entropy(outcome_distribution(rho_a, m));
            RealMatrix transfer = ord.overlaps.front();
            for (std::size_t n = 1; n < ord.overlaps.size(); ++n) transfer = transfer * ord.overlaps[n];
            const auto q = outcome_distribution(rho_a, ord.sequence.front()).probabilities;
            ComplexMatrix tau = ComplexMatrix::Zero(job.dims.a, job.dims.a);
            for (int an = 0; an < job.dims.a; ++an) {
                double w = 0.0;
                for (int a1 = 0; a1 < job.dims.a; ++a1) w += q[a1] * transfer(a1, an);
                tau += w * ord.sequence.back().projector(an);
            }
            const double d_a = relative_entropy(rho_a, tau);
            t["analytic_gap"] = std::isinf(d_a) ? Json(nullptr) : Json(lhs_a - d_a);
        }
        trials[k] = std::move(t);
    });

    LemmaSummary summary;
    std::size_t infinite = 0, failures = 0;
    double worst = std::numeric_limits<double>::infinity();
    double max_dev = 0.0;
    Json list = Json::array();
    for (auto& t : trials) {
        if (t["rhs_infinite"].get<bool>()) {
            ++infinite;
        } else {
            const double gap = t["gap"].get<double>();
            worst = std::min(worst, gap);
            if (!t["holds"].get<bool>()) ++failures;
            if (opts.product_only && t["analytic_gap"].is_number()) {
                max_dev = std::max(max_dev, std::abs(gap - t["analytic_gap"].get<double>()));
            }
        }
        list.push_back(std::move(t));
    }
    summary.all_hold = failures == 0;
    summary.json = Json{{"total", total},
                        {"infinite_rhs", infinite},
                        {"failures", failures},
                        {"worst_finite_gap", std::isinf(worst) ? Json(nullptr) : Json(worst)},
                        {"tolerance", cfg.tolerance},
                        {"product_only", opts.product_only},
                        {"trials", list}};
    if (opts.product_only) summary.json["max_analytic_deviation"] = max_dev;
    return summary;
}

}  // namespace eurqm::cli
