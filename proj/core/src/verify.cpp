#include "eurqm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "eurqm/bases.hpp"
#include "eurqm/named_states.hpp"
#include "eurqm/parallel.hpp"

namespace eurqm {

double lhs_eur(const BipartiteState& state, const MeasurementSet& ms) {
    double sum = 0.0;
    for (const auto& m : ms) sum += measurement_conditional_entropy(state, m);
    return sum;
}

double lhs_iep(const BipartiteState& state, const MeasurementSet& ms) {
    double sum = 0.0;
    for (const auto& m : ms) sum += mutual_information(state, m);
    return sum;
}

ComplexMatrix classical_quantum_state(const BipartiteState& state, const ProjectiveMeasurement& m) {
    if (m.dim() != state.dim_a()) {
        throw std::invalid_argument("classical_quantum_state: measurement dimension does not match subsystem A");
    }
    ComplexMatrix out = ComplexMatrix::Zero(state.rho().rows(), state.rho().cols());
    for (int alpha = 0; alpha < m.dim(); ++alpha) {
        out += kron(m.projector(alpha), conditional_b_state(state, m.vector(alpha)));
    }
    return out;
}

double lhs_eur_cq_route(const BipartiteState& state, const MeasurementSet& ms) {
    const double s_b = von_neumann_entropy(state.reduced_b());
    double sum = 0.0;
    for (const auto& m : ms) sum += von_neumann_entropy(classical_quantum_state(state, m)) - s_b;
    return sum;
}

ChainCoefficients chain_bruteforce(const MeasurementOrdering& ordering) {
    const auto& ds = ordering.overlaps;
    if (ds.empty()) throw std::invalid_argument("chain_bruteforce: an ordering needs at least two measurements");
    const int d = static_cast<int>(ds.front().rows());
    const int n = static_cast<int>(ds.size()) + 1;
    if (std::pow(static_cast<double>(d), n) > kBruteForceCap) {
        throw std::invalid_argument("chain_bruteforce: d^N = " + std::to_string(d) + "^" + std::to_string(n) +
                                    " exceeds the enumeration cap");
    }
    RealVector b = RealVector::Zero(d);
    // idx[k] holds a_{k+1}; enumerate (a_2..a_N) as a mixed-radix counter.
    std::vector<int> idx(n, 0);
    while (true) {
        double best = -1.0;
        for (int a1 = 0; a1 < d; ++a1) {
            idx[0] = a1;
            double prod = 1.0;
            for (int k = 0; k + 1 < n; ++k) prod *= ds[k](idx[k], idx[k + 1]);
            best = std::max(best, prod);
        }
        b[idx[n - 1]] += best;

        int pos = 1;
        while (pos < n && ++idx[pos] == d) idx[pos++] = 0;
        if (pos == n) break;
    }
    return ChainCoefficients{b};
}

ComplexMatrix lemma_reference_operator(const BipartiteState& state, const MeasurementOrdering& ordering) {
    if (ordering.overlaps.empty()) {
        throw std::invalid_argument("lemma_reference_operator: an ordering needs at least two measurements");
    }
    const auto& first = ordering.sequence.front();
    const auto& last = ordering.sequence.back();
    // sum over a_2..a_{N-1} of the chain product collapses to the matrix product.
    RealMatrix transfer = ordering.overlaps.front();
    for (std::size_t n = 1; n < ordering.overlaps.size(); ++n) transfer = transfer * ordering.overlaps[n];

    std::vector<ComplexMatrix> cond_b;
    for (int a1 = 0; a1 < first.dim(); ++a1) cond_b.push_back(conditional_b_state(state, first.vector(a1)));

    ComplexMatrix sigma = ComplexMatrix::Zero(state.rho().rows(), state.rho().cols());
    for (int an = 0; an < last.dim(); ++an) {
        ComplexMatrix b_part = ComplexMatrix::Zero(state.dim_b(), state.dim_b());
        for (int a1 = 0; a1 < first.dim(); ++a1) b_part += transfer(a1, an) * cond_b[a1];
        sigma += kron(last.projector(an), b_part);
    }
    return sigma;
}

LemmaResult lemma_check(const BipartiteState& state, const MeasurementSet& ms, const MeasurementOrdering& ordering,
                        double tolerance) {
    if (ordering.sequence.size() != ms.size()) {
        throw std::invalid_argument("lemma_check: ordering length does not match the measurement set");
    }
    LemmaResult r;
    r.lhs = lhs_eur(state, ms) - static_cast<double>(ms.size()) * conditional_entropy(state);
    const ComplexMatrix sigma = lemma_reference_operator(state, ordering);
    r.rhs = relative_entropy(state.rho(), sigma, SigmaNormalization::kSubnormalized);
    r.rhs_infinite = std::isinf(r.rhs);
    r.holds = !r.rhs_infinite && r.lhs >= r.rhs - tolerance;
    return r;
}

void validate(const SuiteConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (!(config.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (config.dims.empty()) throw std::invalid_argument("at least one dimension pair is required");
    if (config.n_measurements.empty()) throw std::invalid_argument("at least one measurement count is required");
    for (const auto& d : config.dims) {
        if (d.a < 2 || d.b < 2) throw std::invalid_argument("dimensions must be at least 2x2");
    }
    for (int n : config.n_measurements) {
        if (n < 2) throw std::invalid_argument("measurement count must be at least 2");
    }
}

namespace {

struct TrialOutcome {
    std::vector<Violation> violations;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t checks = 0;
    bool lemma_infinite = false;
    bool oracle_ran = false;
};

class TrialRecorder {
  public:
    TrialRecorder(std::uint64_t seed, std::string instance, double tolerance, TrialOutcome& out)
        : seed_(seed), instance_(std::move(instance)), tolerance_(tolerance), out_(out) {}

    void check(const char* name, double margin) {
        ++out_.checks;
        out_.worst = std::min(out_.worst, margin);
        if (!(margin >= -tolerance_)) out_.violations.push_back({seed_, instance_ + " check=" + name, margin});
    }

  private:
    std::uint64_t seed_;
    std::string instance_;
    double tolerance_;
    TrialOutcome& out_;
};

void run_trial(const SuiteConfig& config, Dims dims, int n, std::uint64_t seed, TrialOutcome& out) {
    TrialRecorder rec(seed, "d=" + std::to_string(dims.a) + "x" + std::to_string(dims.b) + " N=" + std::to_string(n),
                      config.tolerance, out);
    std::mt19937_64 rng(seed);
    const auto state = random_state(dims.a, dims.b, rng());
    std::vector<ProjectiveMeasurement> bases;
    for (int i = 0; i < n; ++i) bases.push_back(random_basis(dims.a, rng()));
    const MeasurementSet ms(std::move(bases));

    const auto report = compute_report(state, ms, config.limits);
    rec.check("eur_validity", report.lhs_eur - report.eur_total);
    rec.check("iep_u1", report.u1 - report.lhs_iep);
    rec.check("iep_uopt", report.uopt - report.lhs_iep);
    rec.check("iep_u1_tilde", report.u1_tilde - report.lhs_iep);
    rec.check("iep_u2_tilde", report.u2_tilde - report.lhs_iep);
    rec.check("iep_uopt_tilde", report.uopt_tilde - report.lhs_iep);
    rec.check("b_tilde_le_l1", report.l1 - report.b_tilde);
    rec.check("lhs_routes", -std::abs(report.lhs_eur - lhs_eur_cq_route(state, ms)));

    if (n == 2) {
        const auto c = pair_complementarity(state, ms, 0, 1);
        rec.check("n2_collapse", -std::abs(report.l1 - (report.h_ab_cond + c.value)));
    }

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double order_margin = std::numeric_limits<double>::infinity();
    double oracle_margin = 0.0;
    const bool oracle_fits = std::pow(static_cast<double>(dims.a), n) <= kBruteForceCap;
    do {
        const auto ordering = make_ordering(ms, perm);
        const double lt = ell_u_tilde(ordering);
        order_margin = std::min({order_margin, lt, ell_u(state, ordering) - lt});
        if (oracle_fits) {
            const auto fast = chain_coefficients(ordering).b;
            const auto slow = chain_bruteforce(ordering).b;
            oracle_margin = std::min(oracle_margin, -(fast - slow).cwiseAbs().maxCoeff());
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    rec.check("ell_tilde_order", order_margin);
    if (oracle_fits) {
        rec.check("chain_oracle", oracle_margin);
        out.oracle_ran = true;
    }

    std::shuffle(perm.begin(), perm.end(), rng);
    const auto lemma = lemma_check(state, ms, make_ordering(ms, perm), config.tolerance);
    if (lemma.rhs_infinite) {
        out.lemma_infinite = true;
    } else {
        rec.check("lemma", lemma.lhs - lemma.rhs);
    }
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_suite: trials must be at least 1");

    struct Job {
        Dims dims;
        int n;
    };
    std::vector<Job> jobs;
    for (const auto& d : config.dims) {
        for (int n : config.n_measurements) jobs.push_back({d, n});
    }
    const std::size_t per_job = static_cast<std::size_t>(config.trials);
    const std::size_t total = jobs.size() * per_job;

    std::vector<TrialOutcome> outcomes(total);
    parallel_for(total, config.threads, [&](std::size_t k) {
        const auto& job = jobs[k / per_job];
        const std::uint64_t seed = config.seed + k;
        try {
            run_trial(config, job.dims, job.n, seed, outcomes[k]);
        } catch (const std::exception& e) {
            outcomes[k].worst = -std::numeric_limits<double>::infinity();
            outcomes[k].violations.push_back({seed,
                                              "d=" + std::to_string(job.dims.a) + "x" + std::to_string(job.dims.b) +
                                                  " N=" + std::to_string(job.n) + " check=exception: " + e.what(),
                                              -std::numeric_limits<double>::infinity()});
        }
    });

    SuiteReport report;
    report.total = total;
    report.worst_margin = std::numeric_limits<double>::infinity();
    for (auto& o : outcomes) {
        report.worst_margin = std::min(report.worst_margin, o.worst);
        report.checks += o.checks;
        report.lemma_infinite += o.lemma_infinite ? 1 : 0;
        report.oracle_checks += o.oracle_ran ? 1 : 0;
        for (auto& v : o.violations) report.violations.push_back(std::move(v));
    }
    std::stable_sort(report.violations.begin(), report.violations.end(), [](const Violation& a, const Violation& b) {
        return a.seed != b.seed ? a.seed < b.seed : a.instance < b.instance;
    });
    return report;
}

}  // namespace eurqm
