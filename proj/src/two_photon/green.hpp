#pragma once

#include <array>

#include <Eigen/Dense>

#include "core/params.hpp"

namespace wqed::two_photon {

// Diagnostics of a window-doubled integral.
struct IntegralInfo {
    double window = 0.0;     // final half width W
    double change = 0.0;     // relative change at the last doubling
    long evals = 0;
};

// G_ij = <d_i d_i| G^R(E) |d_j d_j>, evaluated as the double momentum integral
// over all scattering channels with the singular kernel 1/(E - k1 - k2 + i0)
// split into a principal value and a delta-function line integral.
Eigen::Matrix2cd green_dd(double E, const SystemParams& p, const QuadratureSettings& q,
                          IntegralInfo* info = nullptr);

// (G_1(x1,x2), G_2(x1,x2)) with G_i = <x1 x2| G^R(E) |d_i d_i> for x1, x2 in
// output regions (x > L right-moving, x < 0 left-moving).
std::array<cplx, 2> green_xd(double x1, double x2, double E, const SystemParams& p,
                             const QuadratureSettings& q, IntegralInfo* info = nullptr);

// Same G_ij from the one-dimensional form int dk rho_ij(k) g_ij(E - k), where
// the inner momentum integral has been done by contour closure. Used as a
// cross-check of green_dd.
Eigen::Matrix2cd green_dd_kramers_kronig(double E, const SystemParams& p,
                                         const QuadratureSettings& q);

}  // namespace wqed::two_photon
