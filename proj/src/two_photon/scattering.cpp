#include "two_photon/scattering.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "single_photon/single_photon.hpp"
#include "two_photon/green.hpp"

namespace wqed::two_photon {

namespace {

cplx component(double x, Mover a, double k, const SystemParams& p) {
    const auto amp = single_photon::amplitudes(k, p, Direction::FromLeft);
    const auto f = single_photon::wavefunction(x, amp, p.L());
    return a == Mover::Right ? f.right : f.left;
}

Mover implied_mover(double x, const SystemParams& p, const char* op) {
    if (x > p.L()) return Mover::Right;
    if (x < 0) return Mover::Left;
    throw DomainError(op, "coordinate must lie in an output region (x > L or x < 0)");
}

}  // namespace

cplx noninteracting_amplitude(double x1, Mover a1, double x2, Mover a2,
                              const TwoPhotonInput& in, const SystemParams& p) {
    validate(p);
    return component(x1, a1, in.k1, p) * component(x2, a2, in.k2, p) +
           component(x1, a1, in.k2, p) * component(x2, a2, in.k1, p);
}

cplx noninteracting_amplitude(double x1, double x2, const TwoPhotonInput& in,
                              const SystemParams& p) {
    const char* op = "noninteracting_amplitude";
    return noninteracting_amplitude(x1, implied_mover(x1, p, op), x2, implied_mover(x2, p, op),
                                    in, p);
}

Eigen::Vector2cd qubit_overlap(const TwoPhotonInput& in, const SystemParams& p) {
    validate(p);
    const auto a = single_photon::amplitudes(in.k1, p, Direction::FromLeft);
    const auto b = single_photon::amplitudes(in.k2, p, Direction::FromLeft);
    return Eigen::Vector2cd(std::sqrt(2.0) * a.e1 * b.e1, std::sqrt(2.0) * a.e2 * b.e2);
}

namespace {

Eigen::Vector2cd solve_dd(const Eigen::Matrix2cd& G, const Eigen::Vector2cd& v, const char* op) {
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(G);
    const auto s = svd.singularValues();
    if (!(s(1) > 0) || s(0) / s(1) > 1e12)
        throw SingularMatrixError(op, "G_dd is numerically singular (quadrature failure?)");
    return G.partialPivLu().solve(v);
}

}  // namespace

cplx interacting_wavefunction(double x1, double x2, const TwoPhotonInput& in,
                              const SystemParams& p, const QuadratureSettings& q,
                              const Eigen::Matrix2cd* G_dd) {
    const char* op = "interacting_wavefunction";
    const cplx phi = noninteracting_amplitude(x1, x2, in, p);
    const Eigen::Matrix2cd G = G_dd ? *G_dd : green_dd(in.E(), p, q);
    const Eigen::Vector2cd c = solve_dd(G, qubit_overlap(in, p), op);
    const auto Gx = green_xd(x1, x2, in.E(), p, q);
    const cplx psi = phi - (Gx[0] * c(0) + Gx[1] * c(1));
    if (!finite(psi)) throw NumericalError(op, "non-finite wavefunction");
    return psi;
}

std::vector<G2Point> g2(const std::vector<double>& tau_grid, double k, Channel ch,
                        const SystemParams& p, const QuadratureSettings& q,
                        std::optional<double> x_c) {
    const char* op = "g2";
    validate(p);
    q.check(op);
    for (double t : tau_grid)
        if (!(t >= 0) || !std::isfinite(t)) throw DomainError(op, "tau grid must be >= 0");
    const double L = p.L();
    const bool trans = ch == Channel::Transmitted;
    const double xc = x_c.value_or(trans ? L + 1.0 : -1.0);
    if (trans ? !(xc > L) : !(xc < 0))
        throw DomainError(op, "x_c must lie in the " + to_string(ch) + " output region");

    const auto amp = single_photon::amplitudes(k, p, Direction::FromLeft);
    const double mean_field = std::abs(trans ? amp.t_k : amp.r_k);
    if (mean_field < 1e-10)
        throw NormalizationError(op, std::string("single-photon ") +
                                         (trans ? "transmission" : "reflection") +
                                         " vanishes; g2 undefined");

    const TwoPhotonInput in{k, k};
    const Eigen::Matrix2cd G = green_dd(in.E(), p, q);
    const Eigen::Vector2cd c = solve_dd(G, qubit_overlap(in, p), op);

    std::vector<G2Point> out(tau_grid.size());
    parallel_for(tau_grid.size(), [&](std::size_t n) {
        const double tau = tau_grid[n];
        const double x2 = trans ? xc + tau : xc - tau;
        const cplx phi = noninteracting_amplitude(xc, x2, in, p);
        const auto Gx = green_xd(xc, x2, in.E(), p, q);
        const cplx psi = phi - (Gx[0] * c(0) + Gx[1] * c(1));
        out[n] = {tau, std::norm(psi) / std::norm(phi), psi, phi};
    });
    return out;
}

}  // namespace wqed::two_photon
