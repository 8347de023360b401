#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace eurqm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Largest |M - M^dagger| entry accepted as Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;
/// Eigenvalues in [-kClampTolerance, 0) are rounding noise and are clamped to zero.
inline constexpr double kClampTolerance = 1e-12;

enum class Subsystem { A, B };

/// Local dimensions of a bipartite space; the composite index is a * dim_b + b.
struct Dims {
    int a = 0;
    int b = 0;
    int total() const { return a * b; }
    friend bool operator==(const Dims&, const Dims&) = default;
};

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are sorted in
/// descending order; column k of `vectors` pairs with `values[k]`.
struct Spectrum {
    RealVector values;
    ComplexMatrix vectors;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out the subsystem that is not `keep`. Throws std::invalid_argument
/// when `m` is not square with side dims.a * dims.b.
ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem keep);

/// Transposes the indices of subsystem `which` only.
ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims, Subsystem which = Subsystem::B);

/// (M + M^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// max_ij |M_ij - conj(M_ji)|.
double hermitian_defect(const ComplexMatrix& m);

/// Throws if `m` is not square or deviates from Hermitian by more than
/// kHermitianTolerance; otherwise decomposes hermitian_part(m).
Spectrum eig_hermitian(const ComplexMatrix& m);

/// sum_k f(lambda_k) |v_k><v_k|
ComplexMatrix spectral_map(const Spectrum& s, const std::function<double(double)>& f);

/// Frobenius norm of a - b.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// x log2 x with the 0 log 0 = 0 convention.
inline double xlog2x(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

}  // namespace eurqm
