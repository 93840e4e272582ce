#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "single_photon/single_photon.hpp"
#include "two_photon/channels.hpp"
#include "two_photon/green.hpp"
#include "two_photon/scattering.hpp"

using namespace wqed;
using namespace wqed::two_photon;

namespace {

SystemParams params(double k0L, double gp) {
    SystemParams p;
    p.k0L = k0L;
    p.gamma_prime = gp;
    return p;
}

double max_abs(const Eigen::Matrix2cd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("spectral density is Hermitian and positive semidefinite") {
    for (double gp : {0.0, 0.1})
        for (double k : {97.0, 100.0, 101.3}) {
            const auto rho = spectral_density(channels(k, params(0.7, gp)));
            CHECK(max_abs(rho - rho.adjoint()) < 1e-14);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
            CHECK(es.eigenvalues().minCoeff() > -1e-14);
        }
}

TEST_CASE("G_dd is symmetric under qubit exchange and reciprocal") {
    const QuadratureSettings q;
    for (double k0L : {0.3, 25.5 * kPi}) {
        const auto G = green_dd(200.3, params(k0L, 0.1), q);
        CHECK(std::abs(G(0, 0) - G(1, 1)) < 1e-7);
        CHECK(std::abs(G(0, 1) - G(1, 0)) < 1e-7);
    }
}

TEST_CASE("colocated lossless qubits see only the bright mode") {
    const auto G = green_dd(200.3, params(0.0, 0.0), QuadratureSettings{});
    CHECK(std::abs(G(0, 0) - G(0, 1)) < 1e-7);
    CHECK(std::abs(G(0, 0) - G(1, 1)) < 1e-7);
}

TEST_CASE("double integral agrees with the contour-reduced form") {
    const QuadratureSettings q;
    for (double k0L : {0.0, 0.5 * kPi, 25.5 * kPi})
        for (double E : {199.1, 200.0, 200.3}) {
            const auto p = params(k0L, 0.1);
            const auto G = green_dd(E, p, q);
            const auto K = green_dd_kramers_kronig(E, p, q);
            CHECK(max_abs(G - K) < 1e-5 * max_abs(G));
        }
}

TEST_CASE("qubit overlap of a photon pair") {
    const auto p = params(0.9, 0.1);
    const TwoPhotonInput in{100.25, 100.25};
    const auto a = single_photon::amplitudes(in.k1, p);
    const auto v = qubit_overlap(in, p);
    CHECK(std::abs(v(0) - std::sqrt(2.0) * a.e1 * a.e1) < 1e-14);
    CHECK(std::abs(v(1) - std::sqrt(2.0) * a.e2 * a.e2) < 1e-14);
}

TEST_CASE("two-photon amplitudes are symmetric under exchange") {
    const auto p = params(0.3 * kPi, 0.1);
    const double L = p.L();
    const QuadratureSettings q;
    const TwoPhotonInput in{100.2, 100.7};
    for (auto [x1, x2] : {std::pair{L + 1.0, L + 2.5}, std::pair{-0.5, L + 3.0}, std::pair{-4.0, -1.0}}) {
        CHECK(std::abs(noninteracting_amplitude(x1, x2, in, p) -
                       noninteracting_amplitude(x2, x1, in, p)) < 1e-14);
        CHECK(std::abs(interacting_wavefunction(x1, x2, in, p, q) -
                       interacting_wavefunction(x2, x1, in, p, q)) < 1e-10);
    }
}

TEST_CASE("reflected g2(0) of colocated qubits follows the weak-drive rate ratio") {
    // Only the bright state is excited from the ground state, while the
    // doubly excited state decays at Gamma_S + Gamma_A. With
    // Gamma_S = 2 Gamma + Gamma' and Gamma_A = Gamma' this gives
    // g2(0) = (Gamma_S / (Gamma_S + Gamma_A))^2.
    const auto p = params(0.0, 0.1);
    const auto g = g2({0.0, 1.0, 3.0, 10.0, 20.0}, 100.0, Channel::Reflected, p, QuadratureSettings{});
    const double gs = 2.0 + p.gamma_prime, ga = p.gamma_prime;
    CHECK(g[0].g2 == doctest::Approx(std::pow(gs / (gs + ga), 2)).epsilon(1e-6));
    // approaches 1 monotonically from below
    for (std::size_t n = 1; n < g.size(); ++n) CHECK(g[n].g2 > g[n - 1].g2);
    CHECK(std::abs(g.back().g2 - 1.0) < 1e-6);
}

TEST_CASE("g2 does not depend on the reference point") {
    const QuadratureSettings q;
    const auto p = params(0.3 * kPi, 0.1);
    const std::vector<double> tau{0.0, 2.0};
    const auto a = g2(tau, 100.4, Channel::Transmitted, p, q);
    const auto b = g2(tau, 100.4, Channel::Transmitted, p, q, p.L() + 3.7);
    const auto c = g2(tau, 100.0, Channel::Reflected, params(0.0, 0.1), q);
    const auto d = g2(tau, 100.0, Channel::Reflected, params(0.0, 0.1), q, -2.5);
    for (std::size_t n = 0; n < tau.size(); ++n) {
        CHECK(a[n].g2 == doctest::Approx(b[n].g2).epsilon(1e-8));
        CHECK(c[n].g2 == doctest::Approx(d[n].g2).epsilon(1e-8));
    }
}

TEST_CASE("g2 input checks") {
    const QuadratureSettings q;
    // lossless colocated pair on resonance reflects everything
    CHECK_THROWS_AS(g2({0.0}, 100.0, Channel::Transmitted, params(0.0, 0.0), q), NormalizationError);
    CHECK_THROWS_AS(g2({-1.0}, 100.0, Channel::Reflected, params(0.0, 0.1), q), DomainError);
    CHECK_THROWS_AS(g2({0.0}, 100.0, Channel::Reflected, params(0.0, 0.1), q, 0.5), DomainError);
    CHECK_THROWS_AS(green_xd(0.005, 2.0, 200.0, params(1.0, 0.1), q), DomainError);
    CHECK_THROWS_AS(green_dd(NAN, params(1.0, 0.1), q), DomainError);
}
