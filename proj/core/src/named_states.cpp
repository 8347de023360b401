#include "eurqm/named_states.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace eurqm {

namespace {

ComplexMatrix gaussian_gram(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return hermitian_part(rho);
}

}  // namespace

BipartiteState maximally_entangled_state(int d) {
    if (d < 1) throw std::invalid_argument("maximally_entangled_state: dimension must be positive");
    ComplexVector psi = ComplexVector::Zero(d * d);
    for (int i = 0; i < d; ++i) psi[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
    return BipartiteState::from_matrix(psi * psi.adjoint(), d, d);
}

BipartiteState werner_state(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("werner_state: eta must lie in [0, 1], got " + std::to_string(eta));
    }
    const ComplexMatrix bell = maximally_entangled_state(2).rho();
    const ComplexMatrix rho = eta * bell + ((1.0 - eta) / 4.0) * ComplexMatrix::Identity(4, 4);
    return BipartiteState::from_matrix(rho, 2, 2);
}

BipartiteState horodecki_state(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("horodecki_state: alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    const double beta = (1.0 + alpha) / 2.0;
    const double gamma = std::sqrt(1.0 - alpha * alpha) / 2.0;
    ComplexMatrix m = ComplexMatrix::Zero(9, 9);
    for (int i : {0, 1, 2, 3, 4, 5, 7}) m(i, i) = alpha;
    for (int i : {0, 4, 8}) {
        for (int j : {0, 4, 8}) {
            if (i != j) m(i, j) = alpha;
        }
    }
    m(6, 6) = beta;
    m(8, 8) = beta;
    m(6, 8) = gamma;
    m(8, 6) = gamma;
    m /= 8.0 * alpha + 1.0;
    return BipartiteState::from_matrix(m, 3, 3);
}

BipartiteState random_state(int d_a, int d_b, std::uint64_t seed) {
    if (d_a < 2 || d_b < 2) throw std::invalid_argument("random_state: dimensions must be at least 2");
    return BipartiteState::from_matrix(gaussian_gram(d_a * d_b, seed), d_a, d_b);
}

ComplexMatrix random_density_matrix(int d, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("random_density_matrix: dimension must be at least 2");
    return gaussian_gram(d, seed);
}

}  // namespace eurqm
