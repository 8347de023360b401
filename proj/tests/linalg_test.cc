#include "eurqm/linalg.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace eurqm;
using eurqm::testing::matrices_near;

TEST(linalg, kron_of_paulis) {
    ComplexMatrix x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 1) = 1;
    expected(1, 0) = 1;
    expected(2, 3) = -1;
    expected(3, 2) = -1;
    EXPECT_TRUE(matrices_near(kron(z, x), expected, 0));
}

TEST(linalg, kron_associative) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const ComplexMatrix a = random_density_matrix(2, s);
        const ComplexMatrix b = random_density_matrix(3, s + 100);
        const ComplexMatrix c = random_density_matrix(2, s + 200);
        EXPECT_TRUE(matrices_near(kron(kron(a, b), c), kron(a, kron(b, c)), 1e-14));
    }
}

TEST(linalg, partial_trace_of_product) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const ComplexMatrix a = random_density_matrix(3, s);
        const ComplexMatrix b = random_density_matrix(2, s + 50);
        const ComplexMatrix ab = kron(a, b);
        EXPECT_TRUE(matrices_near(partial_trace(ab, {3, 2}, Subsystem::A), a, 1e-14));
        EXPECT_TRUE(matrices_near(partial_trace(ab, {3, 2}, Subsystem::B), b, 1e-14));
    }
}

TEST(linalg, partial_trace_bell_is_maximally_mixed) {
    const ComplexMatrix rho = maximally_entangled_state(2).rho();
    EXPECT_TRUE(matrices_near(partial_trace(rho, {2, 2}, Subsystem::B), ComplexMatrix::Identity(2, 2) / 2.0, 1e-15));
}

TEST(linalg, partial_trace_rejects_bad_shape) {
    EXPECT_THROW(partial_trace(ComplexMatrix::Identity(5, 5), {2, 2}, Subsystem::A), std::invalid_argument);
    EXPECT_THROW(partial_trace(ComplexMatrix::Identity(4, 3), {2, 2}, Subsystem::A), std::invalid_argument);
}

TEST(linalg, partial_transpose_involution) {
    const ComplexMatrix rho = random_state(2, 3, 7).rho();
    EXPECT_TRUE(matrices_near(partial_transpose(partial_transpose(rho, {2, 3}), {2, 3}), rho, 0));
    const ComplexMatrix full = partial_transpose(partial_transpose(rho, {2, 3}, Subsystem::A), {2, 3}, Subsystem::B);
    EXPECT_TRUE(matrices_near(full, rho.transpose(), 1e-15));
}

TEST(linalg, eig_hermitian_descending_and_reconstructs) {
    const ComplexMatrix m = random_density_matrix(4, 3);
    const Spectrum s = eig_hermitian(m);
    for (Eigen::Index k = 1; k < s.values.size(); ++k) EXPECT_GE(s.values[k - 1], s.values[k]);
    const ComplexMatrix back = s.vectors * s.values.cast<Complex>().asDiagonal() * s.vectors.adjoint();
    EXPECT_TRUE(matrices_near(back, m, 1e-13));
}

TEST(linalg, eig_hermitian_unitary_invariance) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const ComplexMatrix m = random_density_matrix(3, s);
        const ComplexMatrix u = eurqm::testing::random_unitary(3, s + 1000);
        const Spectrum a = eig_hermitian(m);
        const Spectrum b = eig_hermitian(u * m * u.adjoint());
        EXPECT_LT((a.values - b.values).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(linalg, eig_hermitian_rejects_non_hermitian) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = 1e-6;
    EXPECT_THROW(eig_hermitian(m), std::invalid_argument);
    EXPECT_THROW(eig_hermitian(ComplexMatrix::Identity(2, 3)), std::invalid_argument);
}

TEST(linalg, eig_hermitian_symmetrizes_roundoff) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 1) = 1e-12;
    EXPECT_NO_THROW(eig_hermitian(m));
    EXPECT_NEAR(hermitian_defect(m), 1e-12, 1e-20);
    EXPECT_EQ(hermitian_defect(hermitian_part(m)), 0.0);
}

TEST(linalg, spectral_map_square_root) {
    const ComplexMatrix m = random_density_matrix(3, 11);
    const ComplexMatrix r = spectral_map(eig_hermitian(m), [](double x) { return std::sqrt(std::max(x, 0.0)); });
    EXPECT_TRUE(matrices_near(r * r, m, 1e-13));
}

TEST(linalg, xlog2x_convention) {
    EXPECT_EQ(xlog2x(0.0), 0.0);
    EXPECT_EQ(xlog2x(1.0), 0.0);
    EXPECT_DOUBLE_EQ(xlog2x(0.5), -0.5);
}

TEST(linalg, frobenius_distance_basic) {
    EXPECT_DOUBLE_EQ(frobenius_distance(ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2)), std::sqrt(2.0));
}
