#pragma once

#include <vector>

#include "eurqm/covers.hpp"
#include "eurqm/states.hpp"

namespace eurqm {

/// Caps on the exhaustive searches. Orderings are enumerated over all N!
/// permutations; covers over all regular subgraphs of K_N.
struct SearchLimits {
    int max_ordering_size = 8;
    int max_cover_size = kDefaultMaxCoverSize;
};

/// [D]_{a b} = |<a_a | b_b>|^2. Doubly stochastic for two orthonormal bases.
RealMatrix overlap_matrix(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b);

/// A permutation of the measurement set together with the overlap matrices
/// D_n between consecutive measurements in that order.
struct MeasurementOrdering {
    std::vector<int> permutation;                  // 0-based indices into the set
    std::vector<ProjectiveMeasurement> sequence;   // measurements in permuted order
    std::vector<RealMatrix> overlaps;              // D_1 .. D_{N-1}
};

/// Throws unless `permutation` is a bijection on {0..N-1}.
MeasurementOrdering make_ordering(const MeasurementSet& ms, std::vector<int> permutation);

/// b(a_N) = sum_{a_2..a_{N-1}} max_{a_1}[D_1]_{a_1 a_2} prod_{n>=2} [D_n]_{a_n a_{n+1}},
/// evaluated as the row vector (column maxima of D_1) * D_2 * ... * D_{N-1}.
/// Every entry lies in [1/d, 1].
struct ChainCoefficients {
    RealVector b;
};
ChainCoefficients chain_coefficients(const MeasurementOrdering& ordering);

/// -sum_{a_N} p(a_N) log2 b(a_N), p the outcome distribution of the last
/// measurement in the ordering.
double ell_u(const BipartiteState& state, const MeasurementOrdering& ordering);

/// -log2 max_{a_N} b(a_N); a lower bound on ell_u for every state.
double ell_u_tilde(const MeasurementOrdering& ordering);

/// log2 sum_{a_N} b(a_N), the ordering term of the concavity IEP bound.
double u_concavity(const MeasurementOrdering& ordering);

struct OrderingBound {
    double value = 0.0;
    MeasurementOrdering best;
};

/// (N-1) H(A|B) + max over orderings of ell_u. Ties go to the
/// lexicographically smallest permutation.
OrderingBound eur_l1(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits = {});

/// Pairwise complementarity. c_ij = -sum_{a_j} p_j(a_j) log2 max_{a_i} |<a_i|a_j>|^2,
/// c_ji with the roles swapped, value = max of the two.
struct PairComplementarity {
    int i = 0;
    int j = 1;
    double c_ij = 0.0;
    double c_ji = 0.0;
    double value = 0.0;
};
PairComplementarity pair_complementarity(const BipartiteState& state, const ProjectiveMeasurement& a,
                                         const ProjectiveMeasurement& b);
PairComplementarity pair_complementarity(const BipartiteState& state, const MeasurementSet& ms, int i, int j);

/// -log2 max_{a,b} |<a|b>|^2; a floor for both directed complementarities.
double state_independent_complementarity(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b);

struct CoverBound {
    double value = 0.0;
    PairCover best;
};

/// (N/2) H(A|B) + max over covers of (sum_{edges} C_ij) / r.
CoverBound eur_lopt(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits = {});

/// max{L1, Lopt, 0}
double eur_total(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits = {});

/// (N-1) H(A|B) + max over orderings of ell_u_tilde.
double eur_state_independent(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits = {});

/// (N-1) S(rho) + max over orderings of ell_u with p taken from rho alone.
double eur_no_memory(const ComplexMatrix& rho, const MeasurementSet& ms, const SearchLimits& limits = {});

double iep_u1(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits = {});
double iep_uopt(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits = {});
double iep_u1_tilde(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits = {});
double iep_u2_tilde(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits = {});

/// Uopt with every H(Pi_i) replaced by log2 d and every C_ij by
/// state_independent_complementarity.
double iep_uopt_tilde(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits = {});

struct IepTotals {
    double dep = 0.0;    // min{U1, Uopt}
    double indep = 0.0;  // min{U1~, U2~, Uopt~}
};
IepTotals iep_total(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits = {});

struct BoundReport {
    double lhs_eur = 0.0;  // sum_i H(Pi_i|B)
    double lhs_iep = 0.0;  // sum_i I(Pi_i:B)
    double l1 = 0.0;
    double lopt = 0.0;
    double eur_total = 0.0;
    double b_tilde = 0.0;
    double u1 = 0.0;
    double uopt = 0.0;
    double u1_tilde = 0.0;
    double u2_tilde = 0.0;
    double uopt_tilde = 0.0;
    double iep_total_dep = 0.0;
    double iep_total_indep = 0.0;
    double h_ab_cond = 0.0;
    MeasurementOrdering best_ordering_eur;
    PairCover best_cover;
};

BoundReport compute_report(const BipartiteState& state, const MeasurementSet& ms, const SearchLimits& limits = {});

}  // namespace eurqm
