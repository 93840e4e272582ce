#pragma once

#include <array>

#include <Eigen/Dense>

#include "core/params.hpp"

namespace wqed::two_photon {

// Complete set of single-excitation scattering channels at wavevector k:
// photons incident from the left and from the right in the waveguide, plus
// one reservoir channel per qubit that carries the loss rate Gamma'. The
// reservoir channels are needed for the channel sum to resolve the identity
// when Gamma' > 0; for Gamma' = 0 they vanish.
struct ChannelSet {
    static constexpr int kCount = 4;
    // d-amplitudes e[c][i] of channel c on qubit i
    std::array<std::array<cplx, 2>, kCount> e;
    // Outgoing waveguide field of channel c: coefficient of e^{ikx}/sqrt(2pi)
    // for x > L (right-moving) and of e^{-ikx}/sqrt(2pi) for x < 0 (left-moving).
    std::array<cplx, kCount> out_right, out_left;
    double k;
};

ChannelSet channels(double k, const SystemParams& p);

// rho_ij(k) = sum_c e_i^c conj(e_j^c)
Eigen::Matrix2cd spectral_density(const ChannelSet& ch);

// A(x, i; k) = sum_c phi^c(x) conj(e_i^c) for x in an output region.
cplx output_overlap(double x, int i, const ChannelSet& ch, double L);

}  // namespace wqed::two_photon
