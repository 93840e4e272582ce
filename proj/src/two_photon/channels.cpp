#include "two_photon/channels.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "single_photon/propagator.hpp"
#include "single_photon/single_photon.hpp"

namespace wqed::two_photon {

ChannelSet channels(double k, const SystemParams& p) {
    const double L = p.L();
    const double V = std::sqrt(p.gamma / 2.0);
    const double s2pi = std::sqrt(2.0 * kPi);
    ChannelSet ch;
    ch.k = k;

    const auto fl = single_photon::amplitudes(k, p, Direction::FromLeft);
    const auto fr = single_photon::amplitudes(k, p, Direction::FromRight);
    ch.e[0] = {fl.e1, fl.e2};
    ch.e[1] = {fr.e1, fr.e2};
    ch.out_right[0] = fl.t_k;
    ch.out_left[0] = fl.r_k;
    ch.out_right[1] = fr.r_k;
    ch.out_left[1] = fr.t_k;

    const Eigen::Matrix2cd g = single_photon::qubit_propagator(k, p);
    const double w = std::sqrt(p.gamma_prime / (2.0 * kPi));
    const cplx ph[2] = {1.0, std::exp(-kI * k * L)};  // e^{-ik l_j}
    for (int m = 0; m < 2; ++m) {
        ch.e[2 + m] = {w * g(0, m), w * g(1, m)};
        cplx r = 0.0, l = 0.0;
        for (int j = 0; j < 2; ++j) {
            r += ph[j] * ch.e[2 + m][j];
            l += std::conj(ph[j]) * ch.e[2 + m][j];
        }
        ch.out_right[2 + m] = -kI * V * s2pi * r;
        ch.out_left[2 + m] = -kI * V * s2pi * l;
    }
    return ch;
}

Eigen::Matrix2cd spectral_density(const ChannelSet& ch) {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (int c = 0; c < ChannelSet::kCount; ++c)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) rho(i, j) += ch.e[c][i] * std::conj(ch.e[c][j]);
    return rho;
}

cplx output_overlap(double x, int i, const ChannelSet& ch, double L) {
    cplx sum = 0.0;
    cplx carrier;
    if (x > L) {
        for (int c = 0; c < ChannelSet::kCount; ++c) sum += ch.out_right[c] * std::conj(ch.e[c][i]);
        carrier = std::exp(kI * ch.k * x);
    } else if (x < 0) {
        for (int c = 0; c < ChannelSet::kCount; ++c) sum += ch.out_left[c] * std::conj(ch.e[c][i]);
        carrier = std::exp(-kI * ch.k * x);
    } else {
        throw DomainError("output_overlap", "x must lie outside [0, L]");
    }
    return carrier * sum / std::sqrt(2.0 * kPi);
}

}  // namespace wqed::two_photon
