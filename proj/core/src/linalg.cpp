#include "eurqm/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace eurqm {

namespace {

void require_bipartite_square(const ComplexMatrix& m, Dims dims, const char* op) {
    if (dims.a < 1 || dims.b < 1) {
        throw std::invalid_argument(std::string(op) + ": subsystem dimensions must be positive");
    }
    if (m.rows() != m.cols() || m.rows() != dims.total()) {
        throw std::invalid_argument(std::string(op) + ": expected a square matrix of side " +
                                    std::to_string(dims.total()) + ", got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem keep) {
    require_bipartite_square(m, dims, "partial_trace");
    if (keep == Subsystem::A) {
        ComplexMatrix out = ComplexMatrix::Zero(dims.a, dims.a);
        for (int i = 0; i < dims.a; ++i) {
            for (int j = 0; j < dims.a; ++j) {
                Complex acc = 0.0;
                for (int k = 0; k < dims.b; ++k) {
                    acc += m(i * dims.b + k, j * dims.b + k);
                }
                out(i, j) = acc;
            }
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dims.b, dims.b);
    for (int k = 0; k < dims.a; ++k) {
        out += m.block(k * dims.b, k * dims.b, dims.b, dims.b);
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims, Subsystem which) {
    require_bipartite_square(m, dims, "partial_transpose");
    ComplexMatrix out(m.rows(), m.cols());
    for (int i = 0; i < dims.a; ++i) {
        for (int j = 0; j < dims.a; ++j) {
            for (int k = 0; k < dims.b; ++k) {
                for (int l = 0; l < dims.b; ++l) {
                    const Complex v = m(i * dims.b + k, j * dims.b + l);
                    if (which == Subsystem::B) {
                        out(i * dims.b + l, j * dims.b + k) = v;
                    } else {
                        out(j * dims.b + k, i * dims.b + l) = v;
                    }
                }
            }
        }
    }
    return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    return (m + m.adjoint()) / 2.0;
}

double hermitian_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("hermitian_defect: matrix is not square");
    }
    return m.rows() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum eig_hermitian(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("eig_hermitian: matrix is not square (" + std::to_string(m.rows()) +
                                    "x" + std::to_string(m.cols()) + ")");
    }
    const double defect = hermitian_defect(m);
    if (defect > kHermitianTolerance) {
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian (defect " +
                                    std::to_string(defect) + ")");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver did not converge");
    }
    // Eigen returns ascending order.
    const Eigen::Index n = m.rows();
    Spectrum s{RealVector(n), ComplexMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        s.values[k] = solver.eigenvalues()[n - 1 - k];
        s.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return s;
}

ComplexMatrix spectral_map(const Spectrum& s, const std::function<double(double)>& f) {
    const Eigen::Index n = s.values.size();
    RealVector mapped(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        mapped[k] = f(s.values[k]);
    }
    return s.vectors * mapped.cast<Complex>().asDiagonal() * s.vectors.adjoint();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).norm();
}

}  // namespace eurqm
