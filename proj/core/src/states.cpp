#include "eurqm/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace eurqm {

namespace {

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

void require_square(const ComplexMatrix& m, const std::string& what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(what + ": expected a non-empty square matrix, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

// Eigenvalues of a validated density matrix with rounding noise clamped.
RealVector density_spectrum(const ComplexMatrix& rho, const std::string& what) {
    require_square(rho, what);
    const double defect = hermitian_defect(rho);
    if (defect > kDensityTolerance) {
        throw std::invalid_argument(what + ": not Hermitian (defect " + fmt_double(defect) + ")");
    }
    const Complex tr = rho.trace();
    if (std::abs(tr.real() - 1.0) > kDensityTolerance || std::abs(tr.imag()) > kDensityTolerance) {
        throw std::invalid_argument(what + ": trace is " + fmt_double(tr.real()) + ", expected 1");
    }
    RealVector values = eig_hermitian(rho).values;
    for (auto& v : values) {
        if (v < -kClampTolerance) {
            throw std::invalid_argument(what + ": negative eigenvalue " + fmt_double(v));
        }
        if (v < 0.0) v = 0.0;
    }
    return values;
}

double entropy_of(const RealVector& values) {
    double s = 0.0;
    for (double v : values) s -= xlog2x(v);
    return s;
}

}  // namespace

void validate_density_matrix(const ComplexMatrix& rho, const std::string& what) {
    (void)density_spectrum(rho, what);
}

BipartiteState BipartiteState::from_matrix(const ComplexMatrix& rho, int dim_a, int dim_b) {
    if (dim_a < 1 || dim_b < 1 || rho.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
        throw std::invalid_argument("BipartiteState: matrix side " + std::to_string(rho.rows()) +
                                    " does not match dimensions " + std::to_string(dim_a) + "x" +
                                    std::to_string(dim_b));
    }
    validate_density_matrix(rho, "BipartiteState");
    return BipartiteState(hermitian_part(rho), Dims{dim_a, dim_b});
}

BipartiteState product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
    return BipartiteState::from_matrix(kron(rho_a, rho_b), static_cast<int>(rho_a.rows()),
                                       static_cast<int>(rho_b.rows()));
}

double gram_defect(const ComplexMatrix& vectors) {
    const ComplexMatrix gram = vectors.adjoint() * vectors;
    return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

ProjectiveMeasurement::ProjectiveMeasurement(std::string label, ComplexMatrix vectors)
    : label_(std::move(label)), vectors_(std::move(vectors)) {
    if (vectors_.rows() != vectors_.cols() || vectors_.rows() < 1) {
        throw std::invalid_argument("ProjectiveMeasurement '" + label_ +
                                    "': needs d orthonormal vectors of length d");
    }
    const double defect = gram_defect(vectors_);
    if (defect > kDensityTolerance) {
        throw std::invalid_argument("ProjectiveMeasurement '" + label_ + "': basis is not orthonormal (Gram defect " +
                                    fmt_double(defect) + ")");
    }
}

ProjectiveMeasurement::ProjectiveMeasurement(std::string label, ComplexMatrix vectors, double defect)
    : ProjectiveMeasurement(std::move(label), std::move(vectors)) {
    source_gram_defect_ = defect;
}

ProjectiveMeasurement ProjectiveMeasurement::orthonormalized(std::string label, const ComplexMatrix& raw) {
    if (raw.rows() != raw.cols() || raw.rows() < 1) {
        throw std::invalid_argument("ProjectiveMeasurement '" + label + "': needs d vectors of length d");
    }
    const double defect = gram_defect(raw);
    ComplexMatrix q = raw;
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const Complex overlap = q.col(j).dot(q.col(k));
            q.col(k) -= overlap * q.col(j);
        }
        const double norm = q.col(k).norm();
        if (norm < 1e-12) {
            throw std::invalid_argument("ProjectiveMeasurement '" + label + "': vectors are linearly dependent");
        }
        q.col(k) /= norm;
    }
    return ProjectiveMeasurement(std::move(label), std::move(q), defect);
}

MeasurementSet::MeasurementSet(std::vector<ProjectiveMeasurement> measurements)
    : measurements_(std::move(measurements)) {
    if (measurements_.size() < 2) {
        throw std::invalid_argument("MeasurementSet: at least two measurements are required");
    }
    for (const auto& m : measurements_) {
        if (m.dim() != measurements_.front().dim()) {
            throw std::invalid_argument("MeasurementSet: measurement '" + m.label() + "' has dimension " +
                                        std::to_string(m.dim()) + ", expected " +
                                        std::to_string(measurements_.front().dim()));
        }
    }
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    return entropy_of(density_spectrum(rho, "von_neumann_entropy"));
}

double conditional_entropy(const BipartiteState& state) {
    return von_neumann_entropy(state.rho()) - von_neumann_entropy(state.reduced_b());
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma, SigmaNormalization sigma_norm) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw std::invalid_argument("relative_entropy: dimension mismatch between rho and sigma");
    }
    const RealVector rho_values = density_spectrum(rho, "relative_entropy rho");

    require_square(sigma, "relative_entropy sigma");
    const double tr = sigma.trace().real();
    if (sigma_norm == SigmaNormalization::kUnitTrace) {
        if (std::abs(tr - 1.0) > kDensityTolerance) {
            throw std::invalid_argument("relative_entropy: sigma has trace " + fmt_double(tr) + ", expected 1");
        }
    } else if (tr > 1.0 + kDensityTolerance) {
        throw std::invalid_argument("relative_entropy: subnormalized sigma has trace " + fmt_double(tr) + " > 1");
    }
    const Spectrum sig = eig_hermitian(sigma);
    if (sig.values.minCoeff() < -kClampTolerance) {
        throw std::invalid_argument("relative_entropy: sigma is not positive semidefinite");
    }

    double cross = 0.0;
    for (Eigen::Index j = 0; j < sig.values.size(); ++j) {
        const ComplexVector v = sig.vectors.col(j);
        const double weight = v.dot(rho * v).real();
        if (sig.values[j] < kSupportThreshold) {
            if (weight > kSupportThreshold) return std::numeric_limits<double>::infinity();
            continue;
        }
        cross += weight * std::log2(sig.values[j]);
    }
    return -entropy_of(rho_values) - cross;
}

BipartiteState measure_channel(const BipartiteState& state, const ProjectiveMeasurement& m) {
    if (m.dim() != state.dim_a()) {
        throw std::invalid_argument("measure_channel: measurement '" + m.label() + "' has dimension " +
                                    std::to_string(m.dim()) + " but subsystem A has " +
                                    std::to_string(state.dim_a()));
    }
    const ComplexMatrix id_b = ComplexMatrix::Identity(state.dim_b(), state.dim_b());
    ComplexMatrix out = ComplexMatrix::Zero(state.rho().rows(), state.rho().cols());
    for (int alpha = 0; alpha < m.dim(); ++alpha) {
        const ComplexMatrix p = kron(m.projector(alpha), id_b);
        out += p * state.rho() * p;
    }
    return BipartiteState::from_matrix(out, state.dim_a(), state.dim_b());
}

OutcomeDistribution outcome_distribution(const ComplexMatrix& rho, const ProjectiveMeasurement& m) {
    if (m.dim() != rho.rows()) {
        throw std::invalid_argument("outcome_distribution: measurement '" + m.label() +
                                    "' does not match the state dimension");
    }
    OutcomeDistribution p;
    p.probabilities.reserve(m.dim());
    double total = 0.0;
    for (int alpha = 0; alpha < m.dim(); ++alpha) {
        const ComplexVector v = m.vector(alpha);
        double prob = v.dot(rho * v).real();
        if (prob < -kClampTolerance) {
            throw std::invalid_argument("outcome_distribution: negative probability " + fmt_double(prob));
        }
        prob = std::max(prob, 0.0);
        total += prob;
        p.probabilities.push_back(prob);
    }
    if (std::abs(total - 1.0) > kDensityTolerance) {
        throw std::invalid_argument("outcome_distribution: probabilities sum to " + fmt_double(total));
    }
    return p;
}

OutcomeDistribution outcome_distribution(const BipartiteState& state, const ProjectiveMeasurement& m) {
    if (m.dim() != state.dim_a()) {
        throw std::invalid_argument("outcome_distribution: measurement '" + m.label() + "' has dimension " +
                                    std::to_string(m.dim()) + " but subsystem A has " +
                                    std::to_string(state.dim_a()));
    }
    return outcome_distribution(state.reduced_a(), m);
}

double shannon_entropy(const OutcomeDistribution& p) {
    double h = 0.0;
    for (double x : p.probabilities) h -= xlog2x(x);
    return h;
}

double measurement_conditional_entropy(const BipartiteState& state, const ProjectiveMeasurement& m) {
    return von_neumann_entropy(measure_channel(state, m).rho()) - von_neumann_entropy(state.reduced_b());
}

double mutual_information(const BipartiteState& state, const ProjectiveMeasurement& m) {
    return shannon_entropy(outcome_distribution(state, m)) - measurement_conditional_entropy(state, m);
}

ComplexMatrix conditional_b_state(const BipartiteState& state, const ComplexVector& v) {
    if (v.size() != state.dim_a()) {
        throw std::invalid_argument("conditional_b_state: vector length " + std::to_string(v.size()) +
                                    " does not match subsystem A dimension " + std::to_string(state.dim_a()));
    }
    if (std::abs(v.norm() - 1.0) > kDensityTolerance) {
        throw std::invalid_argument("conditional_b_state: vector is not normalized");
    }
    const int db = state.dim_b();
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (int i = 0; i < state.dim_a(); ++i) {
        for (int j = 0; j < state.dim_a(); ++j) {
            const Complex w = std::conj(v[i]) * v[j];
            if (w == Complex(0.0)) continue;
            out += w * state.rho().block(i * db, j * db, db, db);
        }
    }
    return out;
}

}  // namespace eurqm
