#include "single_photon/single_photon.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace wqed::single_photon {

namespace detail {

ScatteringAmplitudes amplitudes_general(double k, const QubitPair& q) {
    const double L = q.l2 - q.l1;
    const cplx a1 = k - q.omega1 + kI * q.gamma_prime1 / 2.0;  // loss only
    const cplx a2 = k - q.omega2 + kI * q.gamma_prime2 / 2.0;
    const cplx b1 = a1 + kI * q.gamma1 / 2.0;                  // loss + waveguide
    const cplx b2 = a2 + kI * q.gamma2 / 2.0;
    const cplx den = b1 * b2 + q.gamma1 * q.gamma2 * std::exp(2.0 * kI * k * L) / 4.0;
    if (den == 0.0) {
        // A lossless bound state sits exactly on the real axis (L = 0, k = omega0).
        // Every amplitude has a removable 0/0 there; take the symmetric limit.
        const double h = 1e-7;
        const auto lo = amplitudes_general(k - h, q), hi = amplitudes_general(k + h, q);
        ScatteringAmplitudes s;
        s.k = k;
        s.t12 = 0.5 * (lo.t12 + hi.t12);
        s.r12 = 0.5 * (lo.r12 + hi.r12);
        s.t_k = 0.5 * (lo.t_k + hi.t_k);
        s.r_k = 0.5 * (lo.r_k + hi.r_k);
        s.e1 = 0.5 * (lo.e1 + hi.e1);
        s.e2 = 0.5 * (lo.e2 + hi.e2);
        return s;
    }
    const cplx ph1 = std::exp(2.0 * kI * k * q.l1);
    const cplx ph2 = std::exp(2.0 * kI * k * q.l2);

    ScatteringAmplitudes s;
    s.k = k;
    s.t12 = a1 * b2 / den;
    s.r12 = -kI * q.gamma2 * a1 * ph2 / 2.0 / den;
    s.t_k = a1 * a2 / den;
    s.r_k = (-kI * q.gamma2 * (a1 - kI * q.gamma1 / 2.0) * ph2 / 2.0 -
             kI * q.gamma1 * b2 * ph1 / 2.0) /
            den;
    const double norm = 1.0 / std::sqrt(2.0 * kPi);
    s.e1 = q.gamma1 > 0
               ? kI * std::sqrt(2.0 / q.gamma1) * std::exp(kI * k * q.l1) * norm * (s.t12 - 1.0)
               : cplx{};
    s.e2 = q.gamma2 > 0
               ? kI * std::sqrt(2.0 / q.gamma2) * std::exp(kI * k * q.l2) * norm * (s.t_k - s.t12)
               : cplx{};
    return s;
}

}  // namespace detail

namespace {

ScatteringAmplitudes build(double k, double L, const SystemParams& p, Direction dir) {
    detail::QubitPair q{p.omega0, p.omega0, p.gamma, p.gamma, p.gamma_prime, p.gamma_prime,
                        0.0, L};
    ScatteringAmplitudes s = detail::amplitudes_general(k, q);
    if (dir == Direction::FromRight) {
        // mirror x -> L - x, then strip the incident phase e^{ikL}
        const cplx back = std::exp(-kI * k * L);
        const cplx e1 = s.e1, e2 = s.e2;
        s.r_k *= back * back;
        s.r12 *= back * back;
        s.e1 = back * e2;
        s.e2 = back * e1;
    }
    s.direction = dir;
    return s;
}

}  // namespace

ScatteringAmplitudes amplitudes(double k, const SystemParams& p, Direction dir) {
    validate(p);
    return build(k, p.L(), p, dir);
}

ScatteringAmplitudes amplitudes_at_phase(double delta, double two_kL, const SystemParams& p,
                                         Direction dir) {
    validate(p);
    const double k = p.omega0 + delta;
    if (!(k > 0)) throw DomainError("amplitudes_at_phase", "photon frequency must be positive");
    return build(k, two_kL / (2.0 * k), p, dir);
}

FieldComponents wavefunction(double x, const ScatteringAmplitudes& a, double L) {
    const double norm = 1.0 / std::sqrt(2.0 * kPi);
    const cplx ep = std::exp(kI * a.k * x) * norm;
    const cplx em = std::exp(-kI * a.k * x) * norm;
    // coefficients (right-moving, left-moving) in the three regions
    cplx rl, ll, rm, lm, rr, lr;
    if (a.direction == Direction::FromLeft) {
        rl = 1.0, ll = a.r_k;
        rm = a.t12, lm = a.r12;
        rr = a.t_k, lr = 0.0;
    } else {
        rl = 0.0, ll = a.t_k;
        rm = a.r12, lm = a.t12;
        rr = a.r_k, lr = 1.0;
    }
    auto at = [&](cplx r, cplx l) { return FieldComponents{r * ep, l * em}; };
    auto avg = [&](cplx r1, cplx l1, cplx r2, cplx l2) {
        return FieldComponents{0.5 * (r1 + r2) * ep, 0.5 * (l1 + l2) * em};
    };
    if (L == 0.0) {
        if (x < 0) return at(rl, ll);
        if (x > 0) return at(rr, lr);
        return avg(rl, ll, rr, lr);
    }
    if (x < 0) return at(rl, ll);
    if (x == 0) return avg(rl, ll, rm, lm);
    if (x < L) return at(rm, lm);
    if (x == L) return avg(rm, lm, rr, lr);
    return at(rr, lr);
}

std::vector<MapPoint> transmission_map(const std::vector<double>& delta_grid,
                                       const std::vector<double>& two_kL_grid,
                                       const SystemParams& p) {
    for (double d : delta_grid)
        if (!std::isfinite(d)) throw DomainError("transmission_map", "non-finite detuning");
    for (double f : two_kL_grid)
        if (!std::isfinite(f)) throw DomainError("transmission_map", "non-finite phase");
    std::vector<MapPoint> out;
    out.reserve(delta_grid.size() * two_kL_grid.size());
    for (double d : delta_grid)
        for (double f : two_kL_grid) {
            const cplx t = amplitudes_at_phase(d, f, p).t_k;
            double theta = std::arg(t);
            if (theta <= -kPi) theta = kPi;
            out.push_back({d, f, std::norm(t), theta});
        }
    return out;
}

}  // namespace wqed::single_photon
