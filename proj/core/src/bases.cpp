#include "eurqm/bases.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

namespace eurqm {

namespace {

using Triple = std::array<double, 3>;

struct PrintedGroup {
    std::array<Triple, 3> y;
    std::array<Triple, 3> z;
};

// Four-decimal vectors as published.
constexpr std::array<PrintedGroup, 3> kQutritGroups{{
    {{{{0.3282, -0.9425, 0.0633}, {0.6684, 0.1843, -0.7206}, {0.6675, 0.2788, 0.6904}}},
     {{{-0.1355, 0.4003, -0.9063}, {0.6065, -0.6898, -0.3953}, {0.7835, 0.6032, 0.1493}}}},
    {{{{-0.1429, -0.4205, 0.8960}, {-0.7427, 0.6439, 0.1837}, {-0.6542, -0.6392, -0.4043}}},
     {{{0.8783, -0.0955, -0.4685}, {0.1058, -0.9168, 0.3852}, {0.4663, 0.3879, 0.7951}}}},
    {{{{0.4514, 0.6672, -0.5925}, {0.6676, -0.6931, -0.2719}, {0.5920, 0.2728, 0.7583}}},
     {{{-0.8182, 0.3974, 0.4155}, {-0.2143, -0.8814, 0.4210}, {0.5335, 0.2554, 0.8063}}}},
}};

ComplexMatrix columns_of(const std::array<Triple, 3>& vs) {
    ComplexMatrix m(3, 3);
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) m(i, k) = vs[k][i];
    }
    return m;
}

std::string angle_label(const char* name, double theta, double phi) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s(%.6g,%.6g)", name, theta, phi);
    return buf;
}

ComplexMatrix qubit_columns(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex e = std::polar(1.0, phi);
    ComplexMatrix m(2, 2);
    m(0, 0) = c;
    m(1, 0) = -e * s;
    m(0, 1) = std::conj(e) * s;
    m(1, 1) = c;
    return m;
}

}  // namespace

ProjectiveMeasurement qubit_basis(double theta, double phi) {
    return ProjectiveMeasurement(angle_label("qubit", theta, phi), qubit_columns(theta, phi));
}

ProjectiveMeasurement qubit_y() {
    const double h = std::sqrt(3.0) / 2.0;
    ComplexMatrix m(2, 2);
    m << 0.5, h, h, -0.5;
    return ProjectiveMeasurement("y2", m);
}

ProjectiveMeasurement qubit_z() {
    return ProjectiveMeasurement("z2", ComplexMatrix::Identity(2, 2));
}

ProjectiveMeasurement qutrit_x(double theta, double phi) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m.topLeftCorner(2, 2) = qubit_columns(theta, phi);
    m(2, 2) = 1.0;
    return ProjectiveMeasurement(angle_label("qutritx", theta, phi), m);
}

QutritGroup qutrit_group(int group) {
    if (group < 1 || group > 3) {
        throw std::invalid_argument("qutrit_group: group must be 1, 2 or 3, got " + std::to_string(group));
    }
    const auto& g = kQutritGroups[group - 1];
    const std::string prefix = "group" + std::to_string(group);
    return QutritGroup{
        ProjectiveMeasurement::orthonormalized(prefix + ".y", columns_of(g.y)),
        ProjectiveMeasurement::orthonormalized(prefix + ".z", columns_of(g.z)),
    };
}

ProjectiveMeasurement random_basis(int d, std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("random_basis: dimension must be at least 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(d, d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    // QR output is orthonormal to ~1e-15; re-run Gram-Schmidt so the
    // constructor's check sees a clean basis.
    return ProjectiveMeasurement::orthonormalized("random(" + std::to_string(d) + "," + std::to_string(seed) + ")", q);
}

}  // namespace eurqm
