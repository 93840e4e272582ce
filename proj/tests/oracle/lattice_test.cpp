#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "oracle/lattice.hpp"
#include "single_photon/single_photon.hpp"
#include "two_photon/green.hpp"
#include "two_photon/scattering.hpp"

using namespace wqed;
using oracle::Lattice;
using oracle::layout_for;

namespace {

SystemParams params(double k0L, double omega0 = 100.0) {
    SystemParams p;
    p.k0L = k0L;
    p.omega0 = omega0;
    return p;
}

struct Pair {
    Lattice coarse, fine;
    explicit Pair(const SystemParams& p) : coarse(p, layout_for(p, 0)), fine(p, layout_for(p, 1)) {}
};

template <class T>
T richardson(const T& coarse, const T& fine) {
    return T(2.0 * fine - coarse);
}

}  // namespace

TEST_CASE("layout keeps both qubits on sites with an even gap") {
    for (double k0L : {0.5 * kPi, 25.5 * kPi, 100.5 * kPi}) {
        const auto p = params(k0L);
        if (p.L() < 0.05) {
            CHECK_THROWS_AS(layout_for(p, 0), DomainError);
            continue;
        }
        for (int level : {0, 1, 2}) {
            const auto l = layout_for(p, level);
            const double n = p.L() / l.a;
            CHECK(std::abs(n - std::round(n)) < 1e-9);
            CHECK(std::lround(n) % 2 == 0);
            CHECK(l.a <= 0.05 / (1 << level) + 1e-15);
        }
    }
    CHECK(layout_for(params(0.0), 1).a == doctest::Approx(0.025));
}

TEST_CASE("lattice reproduces single-photon scattering and G_dd") {
    struct Case {
        SystemParams p;
        double eps;
    };
    for (const auto& c : {Case{params(0.0), 0.3}, Case{params(0.5 * kPi, 2.0), 0.0},
                          Case{params(25.5 * kPi), 0.3}}) {
        CAPTURE(c.p.k0L / kPi);
        const Pair lat(c.p);
        const auto a = single_photon::amplitudes(c.p.omega0 + c.eps, c.p);
        const cplx t = richardson(lat.coarse.transmission(c.eps), lat.fine.transmission(c.eps));
        const cplx r = richardson(lat.coarse.reflection(c.eps), lat.fine.reflection(c.eps));
        CHECK(std::abs(t - a.t_k) < 2e-4);
        CHECK(std::abs(r - a.r_k) < 2e-4);

        const Eigen::Matrix2cd G = richardson<Eigen::Matrix2cd>(lat.coarse.green_dd(2 * c.eps),
                                                                lat.fine.green_dd(2 * c.eps));
        const Eigen::Matrix2cd Gc = two_photon::green_dd(2 * (c.p.omega0 + c.eps), c.p, QuadratureSettings{});
        CHECK((G - Gc).cwiseAbs().maxCoeff() < 1e-3 * Gc.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("finite interaction approaches the hard-core limit as 1/U") {
    const auto p = params(0.0);
    const Lattice lat(p, layout_for(p, 0));
    const double x1 = -1.0, x2 = -1.5, eps = 0.3;
    const cplx hard = lat.psi_ratio(Channel::Reflected, x1, x2, eps);
    double prev = INFINITY;
    for (double U : {1e2, 1e3, 1e4}) {
        const double err = std::abs(lat.psi_ratio(Channel::Reflected, x1, x2, eps, U) - hard);
        if (std::isfinite(prev)) CHECK(prev / err == doctest::Approx(10.0).epsilon(0.05));
        prev = err;
    }
    CHECK(prev < 1e-3 * std::abs(hard));
    // without interaction the pair does not scatter
    CHECK(std::abs(lat.psi_ratio(Channel::Reflected, x1, x2, eps, 0.0) - 1.0) < 1e-12);
}

TEST_CASE("two-photon wavefunction agrees with the extrapolated lattice") {
    const auto p = params(0.0);
    const Pair lat(p);
    const double eps = 0.3, a = lat.coarse.spacing();
    const two_photon::TwoPhotonInput in{p.omega0 + eps, p.omega0 + eps};
    for (Channel ch : {Channel::Transmitted, Channel::Reflected})
        for (double tau : {0.0, 1.0}) {
            const double sgn = ch == Channel::Transmitted ? 1 : -1;
            const double x1 = sgn * std::lround(1.0 / a) * a;
            const double x2 = x1 + sgn * std::lround(tau / a) * a;
            const cplx lattice = richardson(lat.coarse.psi_ratio(ch, x1, x2, eps, 1e4),
                                            lat.fine.psi_ratio(ch, x1, x2, eps, 1e4));
            const cplx cont = two_photon::interacting_wavefunction(x1, x2, in, p, QuadratureSettings{}) /
                              two_photon::noninteracting_amplitude(x1, x2, in, p);
            CHECK(std::abs(lattice - cont) < 2e-3 * std::abs(cont));
        }
}

TEST_CASE("sampling outside the output regions is rejected") {
    const auto p = params(0.0);
    const Lattice lat(p, layout_for(p, 0));
    CHECK_THROWS_AS(lat.psi_ratio(Channel::Transmitted, -1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(lat.psi_ratio(Channel::Reflected, -100.0, -1.0, 0.0), DomainError);
}
