// Acceptance suite: one PASS/FAIL line per criterion.
//   eurqm_acceptance            run everything
//   eurqm_acceptance --only 7   run one criterion
// Exit status is the number of failed criteria (capped at 255).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eurqm/bases.hpp"
#include "eurqm/bounds.hpp"
#include "eurqm/covers.hpp"
#include "eurqm/named_states.hpp"
#include "eurqm/parallel.hpp"
#include "eurqm/verify.hpp"
#include "eurqm_cli/commands.hpp"

using namespace eurqm;

namespace {

// Pinned tolerances.
constexpr double kValidityTol = 1e-9;
constexpr double kCollapseTol = 1e-12;
constexpr double kSaturationTol = 1e-12;
constexpr double kOracleTol = 1e-12;
constexpr double kLemmaTol = 1e-9;
constexpr double kMonotoneTol = 1e-9;
constexpr double kClosedFormTol = 5e-4;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-12;
constexpr double kPptTol = 1e-10;
constexpr double kReductionTol = 1e-10;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<ProjectiveMeasurement> random_bases(int d, int n, std::mt19937_64& rng) {
    std::vector<ProjectiveMeasurement> out;
    for (int i = 0; i < n; ++i) out.push_back(random_basis(d, rng()));
    return out;
}

ProjectiveMeasurement qubit_x() { return qubit_basis(std::numbers::pi / 2, 0.0); }

// Criteria 1 and 2 share their instances.
struct ValidityPass {
    std::size_t instances = 0;
    double eur = std::numeric_limits<double>::infinity();
    double u1 = std::numeric_limits<double>::infinity();
    double uopt = std::numeric_limits<double>::infinity();
    double u1t = std::numeric_limits<double>::infinity();
    double u2t = std::numeric_limits<double>::infinity();
};

const ValidityPass& validity_pass() {
    static std::optional<ValidityPass> cached;
    if (cached) return *cached;
    struct Config {
        int d, n;
    };
    const std::vector<Config> configs{{2, 2}, {2, 3}, {2, 4}, {3, 3}};
    constexpr std::size_t kTrials = 10000;
    ValidityPass pass;
    std::mutex mu;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        const auto cfg = configs[c];
        parallel_for(kTrials, 0, [&](std::size_t k) {
            std::mt19937_64 rng(1000003ull * (c + 1) + k);
            const auto st = random_state(cfg.d, cfg.d, rng());
            const MeasurementSet ms(random_bases(cfg.d, cfg.n, rng));
            const auto r = compute_report(st, ms);
            std::lock_guard<std::mutex> lock(mu);
            pass.eur = std::min(pass.eur, r.lhs_eur - r.eur_total);
            pass.u1 = std::min(pass.u1, r.u1 - r.lhs_iep);
            pass.uopt = std::min(pass.uopt, r.uopt - r.lhs_iep);
            pass.u1t = std::min(pass.u1t, r.u1_tilde - r.lhs_iep);
            pass.u2t = std::min(pass.u2t, r.u2_tilde - r.lhs_iep);
            ++pass.instances;
        });
    }
    cached = pass;
    return *cached;
}

Outcome criterion_1() {
    const auto& p = validity_pass();
    return {p.eur >= -kValidityTol,
            "EUR validity over " + std::to_string(p.instances) + " instances, worst lhs-bound margin " + fmt("%.3e", p.eur)};
}

Outcome criterion_2() {
    const auto& p = validity_pass();
    const double worst = std::min({p.u1, p.uopt, p.u1t, p.u2t});
    return {worst >= -kValidityTol, "IEP validity over " + std::to_string(p.instances) + " instances, worst margins U1 " +
                                        fmt("%.3e", p.u1) + " Uopt " + fmt("%.3e", p.uopt) + " U1~ " + fmt("%.3e", p.u1t) +
                                        " U2~ " + fmt("%.3e", p.u2t)};
}

Outcome criterion_3() {
    double worst = 0.0;
    std::mutex mu;
    parallel_for(1000, 0, [&](std::size_t k) {
        std::mt19937_64 rng(3000000 + k);
        const int d = 2 + static_cast<int>(k % 2);
        const auto st = random_state(d, 2, rng());
        const MeasurementSet ms(random_bases(d, 2, rng));
        const double diff =
            std::abs(eur_l1(st, ms).value - (conditional_entropy(st) + pair_complementarity(st, ms, 0, 1).value));
        std::lock_guard<std::mutex> lock(mu);
        worst = std::max(worst, diff);
    });
    // MUB qubit pair: the ordering term is exactly one bit on any state.
    double mub = 0.0;
    const MeasurementSet zx({qubit_z(), qubit_x()});
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto st = random_state(2, 2, 3100000 + s);
        for (const auto& perm : {std::vector<int>{0, 1}, std::vector<int>{1, 0}}) {
            mub = std::max(mub, std::abs(ell_u(st, make_ordering(zx, perm)) - 1.0));
        }
        mub = std::max(mub, std::abs(eur_l1(st, zx).value - conditional_entropy(st) - 1.0));
    }
    return {worst <= kCollapseTol && mub <= kCollapseTol,
            "N=2 collapse max |L1 - (H(A|B)+C12)| " + fmt("%.3e", worst) + " on 1000 instances; MUB ell-1 max " +
                fmt("%.3e", mub)};
}

Outcome criterion_4() {
    const ComplexMatrix mixed = ComplexMatrix::Identity(2, 2) / 2.0;
    const MeasurementSet zx({qubit_z(), qubit_x()});
    const double bound = eur_no_memory(mixed, zx);
    const double lhs = shannon_entropy(outcome_distribution(mixed, zx[0])) +
                       shannon_entropy(outcome_distribution(mixed, zx[1]));
    const double gap = std::max(std::abs(bound - 2.0), std::abs(lhs - bound));
    return {gap < kSaturationTol, "bound " + fmt("%.15f", bound) + " lhs " + fmt("%.15f", lhs)};
}

Outcome criterion_5() {
    double worst = 0.0;
    std::size_t sets = 0;
    for (int d = 2; d <= 3; ++d) {
        for (int n = 2; n <= 4; ++n) {
            for (std::uint64_t s = 0; s < 1000; ++s) {
                std::mt19937_64 rng(5000000 + 10000 * (10 * d + n) + s);
                const MeasurementSet ms(random_bases(d, n, rng));
                std::vector<int> perm(n);
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                const auto o = make_ordering(ms, perm);
                worst = std::max(worst, (chain_coefficients(o).b - chain_bruteforce(o).b).cwiseAbs().maxCoeff());
                ++sets;
            }
        }
    }
    return {worst <= kOracleTol, "chain vs brute force over " + std::to_string(sets) + " sets, max diff " + fmt("%.3e", worst)};
}

Outcome criterion_6() {
    const std::size_t c2 = enumerate_pair_covers(2).size();
    const std::size_t c3 = enumerate_pair_covers(3).size();
    const std::size_t c4 = enumerate_pair_covers(4).size();
    return {c2 == 1 && c3 == 1 && c4 == 7,
            "cover counts N=2,3,4: " + std::to_string(c2) + ", " + std::to_string(c3) + ", " + std::to_string(c4)};
}

Outcome criterion_7() {
    std::size_t fails = 0, infinite = 0, total = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int n : {2, 3}) {
        for (std::uint64_t s = 0; s < 1000; ++s) {
            std::mt19937_64 rng(7000000 + 100000 * n + s);
            const auto st = random_state(2, 2, rng());
            const MeasurementSet ms(random_bases(2, n, rng));
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            const auto r = lemma_check(st, ms, make_ordering(ms, perm), kLemmaTol);
            ++total;
            if (r.rhs_infinite) {
                ++infinite;
                continue;
            }
            worst = std::min(worst, r.lhs - r.rhs);
            if (!r.holds) ++fails;
        }
    }
    return {fails == 0 && total > infinite, "lemma on " + std::to_string(total) + " instances: " + std::to_string(fails) +
                                                " failures, " + std::to_string(infinite) + " infinite rhs, worst gap " +
                                                fmt("%.3e", worst)};
}

Outcome criterion_8() {
    double worst = std::numeric_limits<double>::infinity();
    int points = 0;
    const auto low = werner_state(0.2);
    const auto high = werner_state(0.8);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double theta = std::numbers::pi * i / 4.0;
            const double phi = 2.0 * std::numbers::pi * j / 5.0;
            const MeasurementSet ms({qubit_basis(theta, phi), qubit_y(), qubit_z()});
            worst = std::min(worst, eur_total(low, ms) - eur_total(high, ms));
            ++points;
        }
    }
    return {worst >= -kMonotoneTol, std::to_string(points) + " points, min eur_total(0.2) - eur_total(0.8) " + fmt("%.6f", worst)};
}

Outcome criterion_9() {
    const auto w = werner_state(0.8);
    const double h_ab = conditional_entropy(w);
    const double h_zb = measurement_conditional_entropy(w, qubit_z());
    const bool ok_ab = std::abs(h_ab - (-0.1524)) <= kClosedFormTol;
    const bool ok_zb = std::abs(h_zb - 0.5690) <= kClosedFormTol;
    return {ok_ab && ok_zb, "H(A|B) = " + fmt("%.6f", h_ab) + (ok_ab ? " (ok)" : " (expected -0.1524)") + ", H(Z|B) = " +
                                fmt("%.6f", h_zb) + (ok_zb ? " (ok)" : " (expected 0.5690)")};
}

Outcome criterion_10() {
    double trace_err = 0.0, min_eig = std::numeric_limits<double>::infinity(), min_pt = min_eig;
    for (int k = 1; k <= 9; ++k) {
        const auto h = horodecki_state(k / 10.0);
        trace_err = std::max(trace_err, std::abs(h.rho().trace().real() - 1.0));
        min_eig = std::min(min_eig, eig_hermitian(h.rho()).values.minCoeff());
        min_pt = std::min(min_pt, eig_hermitian(partial_transpose(h.rho(), h.dims())).values.minCoeff());
    }
    std::size_t cells = 0, nonfinite = 0;
    std::string scan_error;
    for (int g = 1; g <= 3; ++g) {
        const std::string group = "group" + std::to_string(g);
        cli::ScanSpec spec{"horodecki:0.6",
                           {"qutritx:theta,phi", group + ".y", group + ".z"},
                           {{"theta", 0.0, std::numbers::pi, 61}, {"phi", 0.0, 2.0 * std::numbers::pi, 61}},
                           {"eur_total", "L1", "Lopt", "iep_dep", "iep_indep", "U1_tilde", "U2_tilde", "Uopt_tilde"}};
        try {
            const auto csv = cli::run_scan(spec).csv;
            std::stringstream lines(csv);
            std::string line;
            std::getline(lines, line);
            while (std::getline(lines, line)) {
                std::stringstream cols(line);
                for (std::string v; std::getline(cols, v, ',');) {
                    ++cells;
                    if (!std::isfinite(std::strtod(v.c_str(), nullptr))) ++nonfinite;
                }
            }
        } catch (const std::exception& e) {
            scan_error = e.what();
        }
    }
    const bool ok = trace_err <= kTraceTol && min_eig >= -kPsdTol && min_pt >= -kPptTol && scan_error.empty() &&
                    nonfinite == 0 && cells == 3u * 61 * 61 * 10;
    return {ok, "trace err " + fmt("%.1e", trace_err) + ", min eig " + fmt("%.3e", min_eig) + ", min PT eig " +
                    fmt("%.3e", min_pt) + "; 3 scans, " + std::to_string(cells) + " cells, " + std::to_string(nonfinite) +
                    " non-finite" + (scan_error.empty() ? "" : ", error: " + scan_error)};
}

Outcome criterion_11() {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        std::mt19937_64 rng(11000000 + s);
        const ComplexMatrix rho = random_density_matrix(2, rng());
        const MeasurementSet ms(random_bases(2, 3, rng));
        const double no_memory = eur_no_memory(rho, ms);
        for (const ComplexMatrix& sigma : {ComplexMatrix(ComplexMatrix::Identity(2, 2) / 2.0), random_density_matrix(3, rng())}) {
            worst = std::max(worst, std::abs(no_memory - eur_l1(product_state(rho, sigma), ms).value));
        }
    }
    return {worst <= kReductionTol, "100 states x 2 memories, max |no-memory - L1(rho x sigma)| " + fmt("%.3e", worst)};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<Outcome()>>> all{
        {"bound validity (EUR)", criterion_1},
        {"bound validity (IEP)", criterion_2},
        {"two-measurement collapse", criterion_3},
        {"Maassen-Uffink saturation", criterion_4},
        {"chain oracle equivalence", criterion_5},
        {"cover enumeration counts", criterion_6},
        {"relative-entropy lemma", criterion_7},
        {"Werner monotonicity", criterion_8},
        {"Werner closed forms", criterion_9},
        {"Horodecki integrity and scans", criterion_10},
        {"no-memory reduction", criterion_11},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
            return 255;
        }
    }
    const auto& all = criteria();
    if (only < 0 || only > static_cast<int>(all.size())) {
        std::fprintf(stderr, "--only: criterion must be 1..%zu\n", all.size());
        return 255;
    }
    int failed = 0;
    for (std::size_t k = 0; k < all.size(); ++k) {
        if (only != 0 && static_cast<int>(k + 1) != only) continue;
        Outcome o;
        try {
            o = all[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %2zu  %-30s %s\n", o.pass ? "PASS" : "FAIL", k + 1, all[k].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return std::min(failed, 255);
}
