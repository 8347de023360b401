#include "eurqm/states.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "eurqm/bases.hpp"
#include "eurqm/named_states.hpp"
#include "test_util.hpp"

using namespace eurqm;
using eurqm::testing::matrices_near;

namespace {

ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

// Projector sandwich written out with explicit index loops.
ComplexMatrix dephase_by_loops(const ComplexMatrix& rho, const ProjectiveMeasurement& m, int db) {
    const int da = m.dim();
    ComplexMatrix out = ComplexMatrix::Zero(da * db, da * db);
    for (int alpha = 0; alpha < da; ++alpha) {
        const ComplexVector v = m.vector(alpha);
        for (int i = 0; i < da; ++i)
            for (int bi = 0; bi < db; ++bi)
                for (int j = 0; j < da; ++j)
                    for (int bj = 0; bj < db; ++bj) {
                        Complex acc = 0;
                        for (int k = 0; k < da; ++k)
                            for (int l = 0; l < da; ++l) {
                                acc += v[i] * std::conj(v[k]) * rho(k * db + bi, l * db + bj) * v[l] * std::conj(v[j]);
                            }
                        out(i * db + bi, j * db + bj) += acc;
                    }
    }
    return out;
}

}  // namespace

TEST(states, validate_density_matrix_errors) {
    EXPECT_NO_THROW(validate_density_matrix(ComplexMatrix::Identity(2, 2) / 2.0));
    EXPECT_THROW(validate_density_matrix(ComplexMatrix::Identity(2, 2)), std::invalid_argument);
    EXPECT_THROW(validate_density_matrix(diag2(1.5, -0.5)), std::invalid_argument);
    ComplexMatrix nh = diag2(0.5, 0.5);
    nh(0, 1) = 0.1;
    EXPECT_THROW(validate_density_matrix(nh), std::invalid_argument);
    EXPECT_THROW(validate_density_matrix(ComplexMatrix::Identity(2, 3)), std::invalid_argument);
}

TEST(states, bipartite_state_checks_dims) {
    EXPECT_THROW(BipartiteState::from_matrix(ComplexMatrix::Identity(4, 4) / 4.0, 2, 3), std::invalid_argument);
    const auto s = BipartiteState::from_matrix(ComplexMatrix::Identity(6, 6) / 6.0, 2, 3);
    EXPECT_EQ(s.dim_a(), 2);
    EXPECT_EQ(s.dim_b(), 3);
    EXPECT_TRUE(matrices_near(s.reduced_b(), ComplexMatrix::Identity(3, 3) / 3.0, 1e-15));
}

TEST(states, projective_measurement_requires_orthonormal) {
    ComplexMatrix bad(2, 2);
    bad << 1, 0.1, 0, 1;
    EXPECT_THROW(ProjectiveMeasurement("bad", bad), std::invalid_argument);
    const auto fixed = ProjectiveMeasurement::orthonormalized("fixed", bad);
    EXPECT_LT(gram_defect(fixed.vectors()), 1e-15);
    EXPECT_NEAR(fixed.source_gram_defect(), 0.1, 1e-15);
    EXPECT_TRUE(matrices_near(fixed.projector(0) + fixed.projector(1), ComplexMatrix::Identity(2, 2), 1e-15));
}

TEST(states, measurement_set_checks) {
    EXPECT_THROW(MeasurementSet({qubit_z()}), std::invalid_argument);
    EXPECT_THROW(MeasurementSet({qubit_z(), random_basis(3, 1)}), std::invalid_argument);
    const MeasurementSet ms({qubit_z(), qubit_y()});
    EXPECT_EQ(ms.size(), 2u);
    EXPECT_EQ(ms.dim(), 2);
    EXPECT_EQ(ms[1].label(), "y2");
}

TEST(states, von_neumann_entropy_examples) {
    EXPECT_NEAR(von_neumann_entropy(diag2(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(von_neumann_entropy(diag2(0.5, 0.5)), 1.0, 1e-15);
    EXPECT_NEAR(von_neumann_entropy(werner_state(0.8).rho()), 0.847584679824574, 1e-12);
    EXPECT_THROW(von_neumann_entropy(diag2(1, 1)), std::invalid_argument);
}

TEST(states, werner_spectrum) {
    const Spectrum s = eig_hermitian(werner_state(0.8).rho());
    EXPECT_NEAR(s.values[0], 0.85, 1e-14);
    for (int k = 1; k < 4; ++k) EXPECT_NEAR(s.values[k], 0.05, 1e-14);
}

TEST(states, conditional_entropy_examples) {
    EXPECT_NEAR(conditional_entropy(werner_state(1.0)), -1.0, 1e-12);
    EXPECT_NEAR(conditional_entropy(werner_state(0.0)), 1.0, 1e-12);
    EXPECT_NEAR(conditional_entropy(werner_state(0.8)), -0.152415320175426, 1e-12);
}

TEST(states, conditional_entropy_of_product_is_marginal_entropy) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const ComplexMatrix a = random_density_matrix(3, s);
        const auto st = product_state(a, random_density_matrix(2, s + 77));
        EXPECT_NEAR(conditional_entropy(st), von_neumann_entropy(a), 1e-12);
    }
}

TEST(states, relative_entropy_examples) {
    const ComplexMatrix rho = random_density_matrix(3, 5);
    EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-12);
    EXPECT_EQ(relative_entropy(diag2(1, 0), diag2(0, 1)), std::numeric_limits<double>::infinity());
    EXPECT_NEAR(relative_entropy(diag2(0.5, 0.5), diag2(0.75, 0.25)), 1.0 - 0.5 * std::log2(3.0), 1e-14);
    EXPECT_THROW(relative_entropy(diag2(0.5, 0.5), ComplexMatrix::Identity(3, 3) / 3.0), std::invalid_argument);
}

TEST(states, relative_entropy_nonnegative) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        EXPECT_GE(relative_entropy(random_density_matrix(3, s), random_density_matrix(3, s + 999)), -1e-12);
    }
}

TEST(states, relative_entropy_subnormalized_sigma) {
    // Halving sigma adds exactly one bit.
    const ComplexMatrix rho = random_density_matrix(2, 8);
    const ComplexMatrix sigma = random_density_matrix(2, 9);
    EXPECT_NEAR(relative_entropy(rho, 0.5 * sigma, SigmaNormalization::kSubnormalized),
                relative_entropy(rho, sigma) + 1.0, 1e-12);
    EXPECT_THROW(relative_entropy(rho, 0.5 * sigma), std::invalid_argument);
}

TEST(states, measure_channel_examples) {
    const auto bell = maximally_entangled_state(2);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    EXPECT_TRUE(matrices_near(measure_channel(bell, qubit_z()).rho(), expected, 1e-15));

    const auto x = qubit_basis(M_PI / 2, 0.0);
    const auto w = werner_state(0.8);
    const ComplexMatrix loops = dephase_by_loops(w.rho(), x, 2);
    const auto channel = measure_channel(w, x);
    EXPECT_TRUE(matrices_near(channel.rho(), loops, 1e-14));
    EXPECT_NEAR(von_neumann_entropy(channel.rho()), von_neumann_entropy(loops), 1e-12);
}

TEST(states, measure_channel_in_eigenbasis_is_identity) {
    const ComplexMatrix a = random_density_matrix(2, 3);
    const auto st = product_state(a, random_density_matrix(2, 4));
    const Spectrum s = eig_hermitian(a);
    const ProjectiveMeasurement eigen_basis("eig", s.vectors);
    EXPECT_TRUE(matrices_near(measure_channel(st, eigen_basis).rho(), st.rho(), 1e-13));
}

TEST(states, measure_channel_idempotent) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto st = random_state(3, 2, s);
        const auto m = random_basis(3, s + 10);
        const auto once = measure_channel(st, m);
        EXPECT_TRUE(matrices_near(measure_channel(once, m).rho(), once.rho(), 1e-14));
    }
}

TEST(states, outcome_distribution_examples) {
    const auto w = outcome_distribution(werner_state(0.3), random_basis(2, 1));
    EXPECT_NEAR(w.probabilities[0], 0.5, 1e-14);
    EXPECT_NEAR(w.probabilities[1], 0.5, 1e-14);

    const auto z = outcome_distribution(product_state(diag2(1, 0), random_density_matrix(2, 2)), qubit_z());
    EXPECT_NEAR(z.probabilities[0], 1.0, 1e-15);
    EXPECT_NEAR(z.probabilities[1], 0.0, 1e-15);

    const auto x = outcome_distribution(product_state(diag2(0.75, 0.25), diag2(0.5, 0.5)), qubit_basis(M_PI / 3, 0.0));
    EXPECT_NEAR(x.probabilities[0], 0.625, 1e-14);
    EXPECT_NEAR(x.probabilities[1], 0.375, 1e-14);
    EXPECT_THROW(outcome_distribution(werner_state(0.3), random_basis(3, 1)), std::invalid_argument);
}

TEST(states, shannon_entropy_examples) {
    EXPECT_EQ(shannon_entropy({{1.0, 0.0}}), 0.0);
    EXPECT_NEAR(shannon_entropy({{0.5, 0.5}}), 1.0, 1e-15);
    EXPECT_NEAR(shannon_entropy({{0.625, 0.375}}), 0.954434002924965, 1e-12);
}

TEST(states, measurement_conditional_entropy_examples) {
    EXPECT_NEAR(measurement_conditional_entropy(maximally_entangled_state(2), qubit_z()), 0.0, 1e-12);
    EXPECT_NEAR(measurement_conditional_entropy(werner_state(0.0), qubit_z()), 1.0, 1e-12);
    // Dephased spectrum (0.45, 0.45, 0.05, 0.05) minus S(rho_B) = 1.
    const double dephased = -2 * 0.45 * std::log2(0.45) - 2 * 0.05 * std::log2(0.05) - 1.0;
    EXPECT_NEAR(measurement_conditional_entropy(werner_state(0.8), qubit_z()), dephased, 1e-12);
    EXPECT_NEAR(dephased, 0.468995593589281, 1e-12);
}

TEST(states, mutual_information_examples) {
    EXPECT_NEAR(mutual_information(maximally_entangled_state(2), qubit_z()), 1.0, 1e-12);
    EXPECT_NEAR(mutual_information(werner_state(0.8), qubit_z()), 1.0 - 0.468995593589281, 1e-12);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto st = product_state(random_density_matrix(3, s), random_density_matrix(2, s + 5));
        EXPECT_NEAR(mutual_information(st, random_basis(3, s)), 0.0, 1e-12);
    }
}

TEST(states, mutual_information_two_routes) {
    // I(Pi:B) = S(Pi) + S(B) - S(Pi B) against H(Pi) - H(Pi|B).
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto st = random_state(2, 3, s);
        const auto m = random_basis(2, s + 40);
        const auto cq = measure_channel(st, m);
        const double route = von_neumann_entropy(cq.reduced_a()) + von_neumann_entropy(cq.reduced_b()) -
                             von_neumann_entropy(cq.rho());
        EXPECT_NEAR(mutual_information(st, m), route, 1e-12);
    }
}

TEST(states, conditional_b_state_examples) {
    ComplexVector zero = ComplexVector::Zero(2);
    zero[0] = 1;
    EXPECT_TRUE(matrices_near(conditional_b_state(maximally_entangled_state(2), zero), diag2(0.5, 0), 1e-15));

    const ComplexMatrix a = random_density_matrix(2, 1);
    const ComplexMatrix b = random_density_matrix(2, 2);
    EXPECT_TRUE(matrices_near(conditional_b_state(product_state(a, b), zero), a(0, 0) * b, 1e-15));

    ComplexVector plus = ComplexVector::Constant(2, 1.0 / std::sqrt(2.0));
    const auto w = werner_state(0.8);
    const ComplexMatrix got = conditional_b_state(w, plus);
    EXPECT_NEAR(got.trace().real(), 0.5, 1e-14);
    ComplexMatrix loops = ComplexMatrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) loops(i, j) += std::conj(plus[k]) * w.rho()(k * 2 + i, l * 2 + j) * plus[l];
    EXPECT_TRUE(matrices_near(got, loops, 1e-14));
    EXPECT_THROW(conditional_b_state(w, ComplexVector::Zero(3)), std::invalid_argument);
}
