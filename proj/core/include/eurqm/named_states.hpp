#pragma once

#include <cstdint>

#include "eurqm/states.hpp"

namespace eurqm {

/// eta |psi+><psi+| + (1 - eta) I/4, |psi+> = (|00> + |11>)/sqrt2. eta in [0, 1].
BipartiteState werner_state(double eta);

/// The 3x3 Horodecki bound entangled family, alpha in (0, 1).
BipartiteState horodecki_state(double alpha);

/// |psi+><psi+| on d x d: sum_i |ii> / sqrt d.
BipartiteState maximally_entangled_state(int d);

/// Hilbert-Schmidt random state G G^dagger / Tr(G G^dagger) with G a seeded
/// complex Gaussian (d_a d_b) x (d_a d_b) matrix.
BipartiteState random_state(int d_a, int d_b, std::uint64_t seed);

/// Single-system analogue of random_state.
ComplexMatrix random_density_matrix(int d, std::uint64_t seed);

}  // namespace eurqm
