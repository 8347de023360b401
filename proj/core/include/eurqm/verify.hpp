#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eurqm/bounds.hpp"

namespace eurqm {

/// sum_i H(Pi_i|B), each term through measure_channel.
double lhs_eur(const BipartiteState& state, const MeasurementSet& ms);

/// sum_i I(Pi_i:B).
double lhs_iep(const BipartiteState& state, const MeasurementSet& ms);

/// sum_alpha P_alpha (x) <alpha|rho_AB|alpha>, built from conditional_b_state
/// rather than by sandwiching rho_AB with projectors.
ComplexMatrix classical_quantum_state(const BipartiteState& state, const ProjectiveMeasurement& m);

/// lhs_eur computed from classical_quantum_state.
double lhs_eur_cq_route(const BipartiteState& state, const MeasurementSet& ms);

inline constexpr double kBruteForceCap = 1e6;

/// b(a_N) by literal enumeration of all index tuples (a_1, ..., a_N), taking
/// the max over a_1 separately for every (a_2, ..., a_N). Throws when d^N
/// exceeds kBruteForceCap.
ChainCoefficients chain_bruteforce(const MeasurementOrdering& ordering);

/// sum_{a_1..a_N} prod_n [D_n]_{a_n a_{n+1}} |e_N^{a_N}><e_N^{a_N}| (x) rho_B^{a_1}
/// with rho_B^{a_1} = <e_1^{a_1}|rho_AB|e_1^{a_1}> unnormalized.
ComplexMatrix lemma_reference_operator(const BipartiteState& state, const MeasurementOrdering& ordering);

struct LemmaResult {
    double lhs = 0.0;           // sum_i H(Pi_i|B) - N H(A|B)
    double rhs = 0.0;           // S(rho_AB || sigma), may be +inf
    bool holds = false;         // lhs >= rhs - tolerance, finite rhs only
    bool rhs_infinite = false;  // support mismatch; excluded from statistics
};

LemmaResult lemma_check(const BipartiteState& state, const MeasurementSet& ms, const MeasurementOrdering& ordering,
                        double tolerance = 1e-9);

struct SuiteConfig {
    int trials = 10000;
    std::uint64_t seed = 42;
    std::vector<Dims> dims = {{2, 2}};
    std::vector<int> n_measurements = {3};
    double tolerance = 1e-9;
    SearchLimits limits{};
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Throws std::invalid_argument unless trials >= 1, tolerance > 0 and the
/// dimension / measurement-count lists are non-empty and sensible.
void validate(const SuiteConfig& config);

struct Violation {
    std::uint64_t seed = 0;
    std::string instance;
    double margin = 0.0;
};

struct SuiteReport {
    std::size_t total = 0;
    std::vector<Violation> violations;  // sorted by seed, then instance
    double worst_margin = 0.0;
    std::size_t checks = 0;
    std::size_t lemma_infinite = 0;
    std::size_t oracle_checks = 0;
};

/// Draws `trials` random instances for every (dims, N) combination and runs
/// every validity check on each. Trial k of the whole run uses seed
/// config.seed + k. Deterministic for a fixed config regardless of thread count.
/// Violations are reported, never thrown; only trials < 1 is rejected so that
/// non-positive tolerances can exercise the reporting path.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace eurqm
