#include "single_photon/propagator.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace wqed::single_photon {

Eigen::Matrix2cd qubit_propagator(cplx w, const SystemParams& p) {
    const double L = p.L();
    const cplx a = w - p.omega0 + kI * (p.gamma + p.gamma_prime) / 2.0;
    const cplx b = kI * (p.gamma / 2.0) * std::exp(kI * w * L);
    const cplx det = a * a - b * b;
    Eigen::Matrix2cd g;
    g << a / det, -b / det, -b / det, a / det;
    return g;
}

cplx output_propagator(double x, int i, cplx w, const SystemParams& p) {
    const double L = p.L();
    const double V = std::sqrt(p.gamma / 2.0);
    const Eigen::Matrix2cd g = qubit_propagator(w, p);
    const double pos[2] = {0.0, L};
    cplx sum = 0.0;
    if (x > L) {
        for (int m = 0; m < 2; ++m) sum += std::exp(kI * w * (x - pos[m])) * g(m, i);
    } else if (x < 0) {
        for (int m = 0; m < 2; ++m) sum += std::exp(-kI * w * (x - pos[m])) * g(m, i);
    } else {
        throw DomainError("output_propagator", "x must lie outside [0, L]");
    }
    return -kI * V * sum;
}

}  // namespace wqed::single_photon
