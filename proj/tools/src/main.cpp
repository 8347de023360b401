#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eurqm_cli/commands.hpp"

namespace {

using namespace eurqm;
using namespace eurqm::cli;

constexpr const char* kDescriptorHelp = R"(
State descriptors (--state):
  werner:ETA            two-qubit Werner state, ETA in [0,1]
  horodecki:ALPHA       3x3 bound entangled state, ALPHA in (0,1)
  bell:D                maximally entangled DxD state
  random:DA,DB,SEED     seeded random mixed state
  file:PATH.json        {"dims":[dA,dB],"rho":[[[re,im],...],...]}

Measurement descriptors (--meas, at least two):
  qubit:THETA,PHI       qubit basis at polar THETA, azimuth PHI (radians)
  qutritx:THETA,PHI     qutrit basis rotating levels 0,1
  y2 | z2               fixed qubit bases
  groupK.y | groupK.z   fixed qutrit bases, K in 1..3
  random:D,SEED         seeded Haar-like basis
  file:PATH.json        {"label":"..","vectors":[[[re,im],...],...],"orthonormalize":false}

Angles accept numbers and multiples of pi: 0.5, pi/8, -pi/2, 3*pi/4.
In scan mode a measurement parameter may be a name (qubit:theta,phi) bound by --axis.
)";

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out.flush());
}

SearchLimits limits_from(int max_ordering) {
    SearchLimits l;
    l.max_ordering_size = max_ordering;
    return l;
}

struct SuiteFlags {
    int trials = 10000;
    std::uint64_t seed = 42;
    std::string dims = "2x2";
    std::string n_meas = "3";
    double tolerance = 1e-9;
    unsigned threads = 0;

    void attach(CLI::App* app) {
        app->add_option("--trials", trials, "random instances per (dims, N) combination")->capture_default_str();
        app->add_option("--seed", seed, "base seed; trial k uses seed + k")->capture_default_str();
        app->add_option("--dims", dims, "comma-separated dA x dB list, e.g. 2x2,3x3")->capture_default_str();
        app->add_option("--n-meas", n_meas, "comma-separated measurement counts, e.g. 2,3")->capture_default_str();
        app->add_option("--tolerance", tolerance, "violation threshold in bits")->capture_default_str();
        app->add_option("--threads", threads, "worker threads, 0 for all cores")->capture_default_str();
    }

    SuiteConfig config() const {
        if (trials < 1) throw UsageError("--trials: must be at least 1");
        if (!(tolerance > 0.0)) throw UsageError("--tolerance: must be positive");
        SuiteConfig c;
        c.trials = trials;
        c.seed = seed;
        c.dims = parse_dims_list(dims);
        c.n_measurements = parse_int_list(n_meas, "--n-meas");
        c.tolerance = tolerance;
        c.threads = threads;
        try {
            validate(c);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return c;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic uncertainty and information exclusion bounds with quantum memory"};
    app.footer(kDescriptorHelp);
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    int max_ordering = SearchLimits{}.max_ordering_size;
    app.add_option("--max-ordering", max_ordering, "largest N for exhaustive ordering search")->capture_default_str();

    // bound
    BoundOptions bound_opts;
    auto* bound = app.add_subcommand("bound", "report every bound for one state and measurement set");
    bound->add_option("--state", bound_opts.state, "state descriptor")->required();
    bound->add_option("--meas", bound_opts.measurements, "measurement descriptor (repeat, order matters)")->required();

    // scan
    std::string spec_path, out_path;
    ScanSpec cli_spec;
    std::vector<std::string> axes, compare;
    std::string fields;
    unsigned scan_threads = 0;
    auto* scan = app.add_subcommand("scan", "evaluate report fields over a one- or two-axis parameter grid");
    scan->add_option("--spec", spec_path, "scan spec JSON: {state, measurements, grid:[{name,start,stop,count}], outputs}")
        ->check(CLI::ExistingFile);
    scan->add_option("--state", cli_spec.state, "state descriptor");
    scan->add_option("--meas", cli_spec.measurements, "measurement descriptor (repeat)");
    scan->add_option("--axis", axes, "NAME=START:STOP[:COUNT], inclusive endpoints, count defaults to 61 (repeat, first is outermost)");
    scan->add_option("--fields", fields, "comma-separated report fields");
    scan->add_option("--compare", compare, "NAME=PATH: append an externally computed column, one value per row");
    scan->add_option("--out", out_path, "CSV output path; metadata goes to PATH.meta.json")->required();
    scan->add_option("--threads", scan_threads, "worker threads, 0 for all cores");
    scan->get_option("--state")->excludes("--spec");
    scan->get_option("--meas")->excludes("--spec");
    scan->get_option("--axis")->excludes("--spec");

    // verify
    SuiteFlags verify_flags;
    auto* verify = app.add_subcommand("verify", "randomized validity checks; exit 2 if any check is violated");
    verify_flags.attach(verify);

    // lemma
    SuiteFlags lemma_flags;
    lemma_flags.trials = 1000;
    lemma_flags.n_meas = "2,3";
    std::string ordering;
    bool product_only = false;
    auto* lemma = app.add_subcommand("lemma", "relative-entropy inequality behind the chain bound, per trial");
    lemma_flags.attach(lemma);
    lemma->add_option("--ordering", ordering, "1-based measurement order, e.g. 2,1,3");
    lemma->add_flag("--product", product_only, "draw product states only and compare to the single-system gap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (max_ordering < 2) throw UsageError("--max-ordering: must be at least 2");
        const auto limits = limits_from(max_ordering);

        if (*bound) {
            print_json(run_bound(bound_opts, limits));
            return kExitOk;
        }

        if (*scan) {
            ScanSpec spec;
            if (!spec_path.empty()) {
                std::ifstream in(spec_path);
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(in);
                } catch (const nlohmann::json::exception& e) {
                    throw UsageError("--spec: '" + spec_path + "' is not valid JSON: " + e.what());
                }
                spec = scan_spec_from_json(j);
            } else {
                if (cli_spec.state.empty()) throw UsageError("scan: --state is required without --spec");
                spec = cli_spec;
                for (const auto& a : axes) spec.grid.push_back(parse_axis(a));
            }
            if (!fields.empty()) {
                spec.outputs.clear();
                std::string cur;
                for (char c : fields + ",") {
                    if (c == ',') {
                        if (!cur.empty()) spec.outputs.push_back(cur);
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
            }
            auto result = run_scan(spec, scan_threads, limits);
            for (const auto& c : compare) append_external_column(result, c);
            if (!write_file(out_path, result.csv)) {
                std::cerr << "error: --out: cannot write '" << out_path << "'\n";
                return kExitUsage;
            }
            if (!write_file(out_path + ".meta.json", result.metadata.dump(2) + "\n")) {
                std::cerr << "error: --out: cannot write '" << out_path << ".meta.json'\n";
                return kExitUsage;
            }
            return kExitOk;
        }

        if (*verify) {
            auto config = verify_flags.config();
            config.limits = limits;
            const auto report = run_suite(config);
            print_json(suite_to_json(report, config));
            return report.violations.empty() ? kExitOk : kExitViolations;
        }

        if (*lemma) {
            LemmaOptions opts;
            opts.config = lemma_flags.config();
            opts.config.limits = limits;
            if (!ordering.empty()) opts.ordering = parse_int_list(ordering, "--ordering");
            opts.product_only = product_only;
            const auto summary = run_lemma(opts);
            print_json(summary.json);
            return summary.all_hold ? kExitOk : kExitViolations;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
