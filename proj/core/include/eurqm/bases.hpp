#pragma once

#include <cstdint>

#include "eurqm/states.hpp"

namespace eurqm {

/// Qubit observable with eigenvectors
/// (cos t/2, -e^{i phi} sin t/2) and (e^{-i phi} sin t/2, cos t/2).
/// theta = 0 gives the computational basis.
ProjectiveMeasurement qubit_basis(double theta, double phi);

/// {(1/2, sqrt3/2), (sqrt3/2, -1/2)}
ProjectiveMeasurement qubit_y();

/// Computational basis of a qubit.
ProjectiveMeasurement qubit_z();

/// The qubit basis embedded in the first two levels of a qutrit, with
/// (0, 0, 1) as the third eigenvector.
ProjectiveMeasurement qutrit_x(double theta, double phi);

/// One of the three published qutrit {Y, Z} groups (group = 1, 2, 3).
/// The published vectors carry four decimals, so they are re-orthonormalized
/// in listed order; source_gram_defect() reports the printed defect.
struct QutritGroup {
    ProjectiveMeasurement y;
    ProjectiveMeasurement z;
};
QutritGroup qutrit_group(int group);

/// Orthonormalized complex Gaussian matrix (QR with phase fix). Same seed,
/// same basis.
ProjectiveMeasurement random_basis(int d, std::uint64_t seed);

}  // namespace eurqm
