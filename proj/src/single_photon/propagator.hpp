#pragma once

#include <Eigen/Dense>

#include "core/params.hpp"

namespace wqed::single_photon {

// Retarded single-excitation propagator projected on the two qubits,
// g(w) = [w - H_eff(w)]^{-1} with H_eff containing the waveguide-mediated
// exchange i(Gamma/2) e^{iwL}. Its determinant is the pole function F(w).
Eigen::Matrix2cd qubit_propagator(cplx w, const SystemParams& p);

// <x|g(w)|d_i> for x in an output region: x > L gives the right-moving
// transmitted field, x < 0 the left-moving reflected field. i is 0 or 1.
cplx output_propagator(double x, int i, cplx w, const SystemParams& p);

}  // namespace wqed::single_photon
