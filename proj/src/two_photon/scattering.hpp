#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "core/params.hpp"

namespace wqed::two_photon {

// Two photons incident from the left with wavevectors k1, k2 (E = k1 + k2).
struct TwoPhotonInput {
    double k1 = 0.0, k2 = 0.0;
    double E() const { return k1 + k2; }
};

enum class Mover { Right, Left };

// <x1 a1, x2 a2 | phi_2(k1, k2)> for the symmetrised product of
// single-photon eigenstates: phi(x1;k1) phi(x2;k2) + phi(x1;k2) phi(x2;k1).
// a1, a2 select the right- or left-moving field component.
cplx noninteracting_amplitude(double x1, Mover a1, double x2, Mover a2,
                              const TwoPhotonInput& in, const SystemParams& p);

// Output-region convenience: the mover is implied by the region
// (x > L right-moving, x < 0 left-moving).
cplx noninteracting_amplitude(double x1, double x2, const TwoPhotonInput& in,
                              const SystemParams& p);

// (<d1 d1|phi_2>, <d2 d2|phi_2>) = sqrt(2) (e_1(k1) e_1(k2), e_2(k1) e_2(k2)).
Eigen::Vector2cd qubit_overlap(const TwoPhotonInput& in, const SystemParams& p);

// psi_2 = phi_2 - G_xd G_dd^{-1} <dd|phi_2>, the infinite-U limit of the
// Lippmann-Schwinger solution. G_dd may be supplied to avoid recomputation.
cplx interacting_wavefunction(double x1, double x2, const TwoPhotonInput& in,
                              const SystemParams& p, const QuadratureSettings& q,
                              const Eigen::Matrix2cd* G_dd = nullptr);

struct G2Point {
    double tau, g2;
    cplx psi2, phi2;
};

// g2(tau) = |psi_2(x_c, x_c')|^2 / |phi_2(x_c, x_c')|^2 with k1 = k2 = k,
// where x_c' = x_c + tau (transmitted) or x_c - tau (reflected). The default
// reference point is one unit beyond the nearest qubit.
std::vector<G2Point> g2(const std::vector<double>& tau_grid, double k, Channel ch,
                        const SystemParams& p, const QuadratureSettings& q,
                        std::optional<double> x_c = std::nullopt);

}  // namespace wqed::two_photon
