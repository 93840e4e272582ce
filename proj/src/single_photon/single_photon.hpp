#pragma once

#include <vector>

#include "core/params.hpp"

namespace wqed::single_photon {

// Single-photon scattering eigenstate coefficients. Gauge: qubit 1 at x = 0,
// qubit 2 at x = L. For FromLeft, t12 and r12 are the right- and left-moving
// amplitudes between the qubits; for FromRight they are the left- and
// right-moving ones (t12 always travels along the incident direction).
// t and r are dimensionless; e1, e2 include the 1/sqrt(2 pi) of the
// plane-wave normalisation.
struct ScatteringAmplitudes {
    cplx t_k, r_k, t12, r12, e1, e2;
    double k = 0.0;
    Direction direction = Direction::FromLeft;
};

ScatteringAmplitudes amplitudes(double k, const SystemParams& p,
                                Direction dir = Direction::FromLeft);

// Same, but with the propagation phase kL given directly instead of through
// k0L. Used for the (delta, 2kL) maps where the phase is the plotted axis.
ScatteringAmplitudes amplitudes_at_phase(double delta, double two_kL, const SystemParams& p,
                                         Direction dir = Direction::FromLeft);

// Right- and left-moving components of the eigenstate at position x. At the
// qubit positions the average of both sides is returned.
struct FieldComponents {
    cplx right, left;
};
FieldComponents wavefunction(double x, const ScatteringAmplitudes& a, double L);

struct MapPoint {
    double delta, two_kL, T, theta;
};

// T = |t_k|^2 and theta = arg t_k in (-pi, pi] on the product grid; rows are
// ordered with delta varying slowest.
std::vector<MapPoint> transmission_map(const std::vector<double>& delta_grid,
                                       const std::vector<double>& two_kL_grid,
                                       const SystemParams& p);

namespace detail {

// Two possibly different qubits at positions l1 < l2. Kept for the
// single-qubit limit check; the public API always uses identical qubits.
struct QubitPair {
    double omega1, omega2;
    double gamma1, gamma2;
    double gamma_prime1, gamma_prime2;
    double l1, l2;
};

ScatteringAmplitudes amplitudes_general(double k, const QubitPair& q);

}  // namespace detail

}  // namespace wqed::single_photon
