#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eurqm/linalg.hpp"

namespace eurqm {

/// Trace and Hermiticity tolerance for density operators.
inline constexpr double kDensityTolerance = 1e-10;
/// Eigenvalues of sigma below this count as outside its support.
inline constexpr double kSupportThreshold = 1e-10;

/// Throws std::invalid_argument unless `rho` is Hermitian within
/// kDensityTolerance, has unit trace within kDensityTolerance and no
/// eigenvalue below -kClampTolerance. `what` prefixes the message.
void validate_density_matrix(const ComplexMatrix& rho, const std::string& what = "density matrix");

/// A density operator on C^{d_A} (x) C^{d_B}. Immutable once built.
class BipartiteState {
  public:
    /// Validates `rho` and stores its Hermitian part.
    static BipartiteState from_matrix(const ComplexMatrix& rho, int dim_a, int dim_b);

    const ComplexMatrix& rho() const { return rho_; }
    int dim_a() const { return dims_.a; }
    int dim_b() const { return dims_.b; }
    Dims dims() const { return dims_; }

    ComplexMatrix reduced_a() const { return partial_trace(rho_, dims_, Subsystem::A); }
    ComplexMatrix reduced_b() const { return partial_trace(rho_, dims_, Subsystem::B); }

  private:
    BipartiteState(ComplexMatrix rho, Dims dims) : rho_(std::move(rho)), dims_(dims) {}

    ComplexMatrix rho_;
    Dims dims_;
};

/// rho (x) sigma as a bipartite state.
BipartiteState product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b);

/// A non-degenerate projective measurement, stored as the orthonormal
/// eigenbasis of the observable (column alpha is |alpha>).
class ProjectiveMeasurement {
  public:
    /// Requires columns orthonormal within kDensityTolerance.
    ProjectiveMeasurement(std::string label, ComplexMatrix vectors);

    /// Gram-Schmidt in column order. The Gram defect of the input
    /// (max |G - I|) is kept as source_gram_defect().
    static ProjectiveMeasurement orthonormalized(std::string label, const ComplexMatrix& raw);

    const std::string& label() const { return label_; }
    int dim() const { return static_cast<int>(vectors_.rows()); }
    const ComplexMatrix& vectors() const { return vectors_; }
    ComplexVector vector(int alpha) const { return vectors_.col(alpha); }
    ComplexMatrix projector(int alpha) const { return vectors_.col(alpha) * vectors_.col(alpha).adjoint(); }
    double source_gram_defect() const { return source_gram_defect_; }

  private:
    ProjectiveMeasurement(std::string label, ComplexMatrix vectors, double defect);

    std::string label_;
    ComplexMatrix vectors_;
    double source_gram_defect_ = 0.0;
};

/// Max |G - I| over the Gram matrix of the columns of `vectors`.
double gram_defect(const ComplexMatrix& vectors);

/// N >= 2 measurements of a common dimension d.
class MeasurementSet {
  public:
    explicit MeasurementSet(std::vector<ProjectiveMeasurement> measurements);

    std::size_t size() const { return measurements_.size(); }
    int dim() const { return measurements_.front().dim(); }
    const ProjectiveMeasurement& operator[](std::size_t i) const { return measurements_[i]; }
    const std::vector<ProjectiveMeasurement>& measurements() const { return measurements_; }
    auto begin() const { return measurements_.begin(); }
    auto end() const { return measurements_.end(); }

  private:
    std::vector<ProjectiveMeasurement> measurements_;
};

struct OutcomeDistribution {
    std::vector<double> probabilities;
};

// Entropic functionals. All values are in bits.

double von_neumann_entropy(const ComplexMatrix& rho);

/// H(A|B) = S(rho_AB) - S(rho_B); negative for some entangled states.
double conditional_entropy(const BipartiteState& state);

enum class SigmaNormalization { kUnitTrace, kSubnormalized };

/// Tr rho (log2 rho - log2 sigma), or +infinity when rho has weight outside
/// the support of sigma. With kSubnormalized, sigma may have trace <= 1.
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                        SigmaNormalization sigma_norm = SigmaNormalization::kUnitTrace);

/// sum_alpha (P_alpha (x) I) rho (P_alpha (x) I): the post-measurement
/// classical-quantum state rho_{Pi B}.
BipartiteState measure_channel(const BipartiteState& state, const ProjectiveMeasurement& m);

OutcomeDistribution outcome_distribution(const BipartiteState& state, const ProjectiveMeasurement& m);

/// Outcome distribution of `m` on a single-system density matrix.
OutcomeDistribution outcome_distribution(const ComplexMatrix& rho, const ProjectiveMeasurement& m);

double shannon_entropy(const OutcomeDistribution& p);

/// H(Pi|B) = S(rho_{Pi B}) - S(rho_B).
double measurement_conditional_entropy(const BipartiteState& state, const ProjectiveMeasurement& m);

/// I(Pi:B) = H(Pi) - H(Pi|B).
double mutual_information(const BipartiteState& state, const ProjectiveMeasurement& m);

/// <v|_A rho_AB |v>_A, unnormalized; its trace is the probability of v.
ComplexMatrix conditional_b_state(const BipartiteState& state, const ComplexVector& v);

}  // namespace eurqm
