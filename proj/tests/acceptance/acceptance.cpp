// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "master_eq/master_eq.hpp"
#include "oracle/lattice.hpp"
#include "poles/poles.hpp"
#include "single_photon/single_photon.hpp"
#include "two_photon/scattering.hpp"

using namespace wqed;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

SystemParams params(double k0L, double gp = 0.1, double omega0 = 100.0) {
    SystemParams p;
    p.k0L = k0L;
    p.gamma_prime = gp;
    p.omega0 = omega0;
    return p;
}

std::vector<double> grid(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

// Interpolated positions of local maxima of y on a uniform grid.
std::vector<double> maxima(const std::vector<double>& t, const std::vector<double>& y) {
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        if (y[i] > y[i - 1] && y[i] >= y[i + 1]) {
            const double d = y[i - 1] - 2 * y[i] + y[i + 1];
            const double shift = d != 0 ? 0.5 * (y[i - 1] - y[i + 1]) / d : 0.0;
            out.push_back(t[i] + shift * (t[1] - t[0]));
        }
    return out;
}

Outcome phase_gate() {
    // 2kL = pi/2 for the photon at delta = -Gamma/2
    const auto a = single_photon::amplitudes_at_phase(-0.5, kPi / 2, params(0.0, 0.0));
    const double T = std::norm(a.t_k), theta = std::arg(a.t_k);
    const bool ok = std::abs(T - 1) < 1e-12 && std::abs(theta - kPi / 2) < 1e-12;
    return {ok, "T - 1 = " + fmt("%.2e", T - 1) + ", theta - pi/2 = " + fmt("%.2e", theta - kPi / 2)};
}

Outcome flux() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> d(-20, 20), ph(0, 200 * kPi);
    double worst = 0;
    for (int n = 0; n < 10000; ++n) {
        const auto p = params(ph(rng), 0.0);
        const auto a = single_photon::amplitudes(p.omega0 + d(rng), p);
        worst = std::max(worst, std::abs(std::norm(a.t_k) + std::norm(a.r_k) - 1));
    }
    return {worst < 1e-12, "max |T + R - 1| over 1e4 points = " + fmt("%.2e", worst)};
}

Outcome markov_formulas() {
    double err = 0;
    {
        const auto [S, A] = poles::markov_poles(params(0.0));
        err = std::max({err, std::abs(S.gamma_eff - 2.1), std::abs(A.gamma_eff - 0.1)});
    }
    {
        const auto [S, A] = poles::markov_poles(params(kPi / 2));
        err = std::max({err, std::abs(S.gamma_eff - 1.1), std::abs(A.gamma_eff - 1.1),
                        std::abs(S.omega.real() - 100.5), std::abs(A.omega.real() - 99.5)});
    }
    return {err < 1e-12, "max deviation " + fmt("%.1e", err)};
}

poles::Enumeration poles_100() {
    const auto p = params(100.5 * kPi);
    return poles::enumerate_poles({p.omega0 - 4, p.omega0 + 4, -2, 0}, p);
}

const poles::PoleRecord& by_label(const poles::Enumeration& e, const std::string& l) {
    for (const auto& r : e.poles)
        if (r.label == l) return r;
    throw std::runtime_error("missing pole " + l);
}

Outcome long_separation_poles() {
    const auto e = poles_100();
    const std::vector<std::tuple<std::string, double, double>> ref = {
        {"S", 0.32, 0.12},  {"A", -0.32, 0.12}, {"C1", 1.08, 0.52},
        {"C2", 2.01, 0.90}, {"C3", 2.98, 1.12}, {"C4", 3.97, 1.32}};
    double worst = 0;
    std::string worst_label;
    for (const auto& [l, d, g] : ref) {
        const auto& r = by_label(e, l);
        const double dev = std::max(std::abs(r.omega.real() - 100.0 - d), std::abs(r.gamma_eff - g));
        if (dev > worst) worst = dev, worst_label = l;
    }
    const auto& S = by_label(e, "S");
    return {worst <= 0.02, "S = (" + fmt("%+.4f", S.omega.real() - 100) + ", " + fmt("%.4f", S.gamma_eff) +
                               "), worst deviation " + fmt("%.4f", worst) + " at " + worst_label + ", " +
                               std::to_string(e.poles.size()) + " poles in the window"};
}

Outcome markov_window() {
    const auto g = grid(0, 5 * kPi, 501);
    const auto tr = poles::poles_on_grid(g, params(0.0));
    double worst = 0, at = 0;
    for (std::size_t n = 0; n < g.size(); ++n) {
        const auto [S, A] = poles::markov_poles(params(g[n]));
        for (auto [c, m] : {std::pair{tr[n].S, S}, std::pair{tr[n].A, A}}) {
            const double dev = std::max(std::abs(c.gamma_eff - m.gamma_eff) / m.gamma_eff,
                                        std::abs(c.omega.real() - m.omega.real()));
            if (dev > worst) worst = dev, at = g[n];
        }
    }
    return {worst <= 0.02, "max relative deviation " + fmt("%.2f%%", 100 * worst) + " at k0L = " +
                               fmt("%.3fpi", at / kPi)};
}

Outcome populations() {
    const auto e = poles_100();
    const auto& S = by_label(e, "S");
    const std::vector<std::pair<std::string, double>> ref = {
        {"C1", 8.6}, {"C2", 2.5}, {"C3", 1.1}, {"C4", 0.7}};
    bool ok = true;
    std::ostringstream d;
    for (const auto& [l, want] : ref) {
        const auto& c = by_label(e, l);
        const double r = 100 * master_eq::weak_drive_ratio(c.omega.real() - 100, c.gamma_eff,
                                                           S.omega.real() - 100, S.gamma_eff);
        ok = ok && std::abs(r - want) <= 0.1 + 1e-9;
        d << l << " " << fmt("%.3f%%", r) << " (want " << want << ") ";
    }
    return {ok, d.str()};
}

Outcome g2_features() {
    const QuadratureSettings q;
    std::ostringstream d;
    bool ok = true;
    // (a), (b) colocated qubits
    const auto p0 = params(0.0);
    const double refl0 = two_photon::g2({0.0}, 100.0, Channel::Reflected, p0, q)[0].g2;
    const double trans0 = two_photon::g2({0.0}, 100.0, Channel::Transmitted, p0, q)[0].g2;
    const bool a = refl0 < 1e-3, b = trans0 > 1;
    d << "(a) reflected g2(0) = " << fmt("%.4f", refl0) << (a ? " ok" : " FAIL");
    d << "; (b) transmitted g2(0) = " << fmt("%.1f", trans0) << (b ? " ok" : " FAIL");

    // (c) beat period at k0L = pi/2
    const auto tau_c = grid(0, 16, 161);
    const auto gc = two_photon::g2(tau_c, 100.0, Channel::Transmitted, params(kPi / 2), q);
    std::vector<double> y;
    for (const auto& pt : gc) y.push_back(std::log(pt.g2));
    const auto mx = maxima(tau_c, y);
    double period = NAN;
    if (mx.size() >= 2) period = (mx.back() - mx.front()) / (mx.size() - 1);
    const bool c = std::abs(period / (2 * kPi) - 1) <= 0.05;
    d << "; (c) beat period " << fmt("%.3f", period) << " vs 2pi" << (c ? " ok" : " FAIL");

    // (d) persistent beats at k0L = 100.5pi, reflected channel
    const auto tau_d = grid(0, 100, 401);
    const auto gd = two_photon::g2(tau_d, 100.0, Channel::Reflected, params(100.5 * kPi), q);
    std::vector<double> dev;
    for (const auto& pt : gd) dev.push_back(std::abs(pt.g2 - 1));
    const double at10 = dev[40];
    // log-linear fit to the extrema of |g2 - 1| past the first beat
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 1; i + 1 < dev.size(); ++i)
        if (dev[i] > dev[i - 1] && dev[i] >= dev[i + 1] && tau_d[i] > 20) {
            const double lx = tau_d[i], ly = std::log(dev[i]);
            sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly, ++m;
        }
    // |g2 - 1| is linear in the decaying amplitude, which falls as exp(-Gamma t / 2)
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double gamma = -2 * slope;
    const bool d1 = at10 > 0.1, d2 = std::abs(gamma / 0.12 - 1) <= 0.10;
    d << "; (d) |g2(10) - 1| = " << fmt("%.3f", at10) << (d1 ? " ok" : " FAIL")
      << ", envelope Gamma = " << fmt("%.4f", gamma) << " from " << m << " extrema vs 0.12"
      << (d2 ? " ok" : " FAIL");
    ok = a && b && c && d1 && d2;
    return {ok, d.str()};
}

Outcome green_oracle() {
    struct Point {
        SystemParams p;
        double eps;
        std::vector<Channel> channels;
        const char* name;
    };
    const std::vector<Point> pts = {
        {params(kPi / 2, 0.1, 2.0), 0.0, {Channel::Reflected}, "k0L=pi/2 E=2omega0"},
        {params(25.5 * kPi), 0.3, {Channel::Transmitted, Channel::Reflected}, "k0L=25.5pi"},
        {params(0.0), 0.3, {Channel::Transmitted, Channel::Reflected}, "k0L=0"},
    };
    const double U = 1e4;  // finite on-site interaction, in units of Gamma
    const QuadratureSettings q;
    double worst = 0;
    std::string worst_at;
    int compared = 0;
    for (const auto& pt : pts) {
        const oracle::Lattice coarse(pt.p, oracle::layout_for(pt.p, 0));
        const oracle::Lattice fine(pt.p, oracle::layout_for(pt.p, 1));
        const double a = coarse.spacing(), L = pt.p.L();
        const two_photon::TwoPhotonInput in{pt.p.omega0 + pt.eps, pt.p.omega0 + pt.eps};
        for (Channel ch : pt.channels)
            for (double tau : {0.0, 0.5, 1.0, 2.0}) {
                const long nt = std::lround(tau / a);
                double x1, x2;
                if (ch == Channel::Transmitted) {
                    x1 = std::ceil((L + 1.0) / a) * a;
                    x2 = x1 + nt * a;
                } else {
                    x1 = -std::lround(1.0 / a) * a;
                    x2 = x1 - nt * a;
                }
                const cplx f0 = coarse.psi_ratio(ch, x1, x2, pt.eps, U);
                const cplx f1 = fine.psi_ratio(ch, x1, x2, pt.eps, U);
                const cplx lat = 2.0 * f1 - f0;
                const cplx cont = two_photon::interacting_wavefunction(x1, x2, in, pt.p, q) /
                                  two_photon::noninteracting_amplitude(x1, x2, in, pt.p);
                const double rel = std::abs(lat - cont) / std::abs(cont);
                ++compared;
                if (rel > worst)
                    worst = rel, worst_at = std::string(pt.name) + " " + to_string(ch) + " tau=" +
                                            fmt("%.2f", std::abs(x2 - x1));
            }
    }
    return {worst <= 0.01, std::to_string(compared) + " samples at 3 points, U = 1e4, worst " +
                               fmt("%.3f%%", 100 * worst) + " (" + worst_at + ")"};
}

Outcome concurrence() {
    const master_eq::DriveParams d;
    const auto p = params(0.0);
    const auto g1 = grid(0, 5 * kPi, 501);
    const auto m1 = master_eq::concurrence_scan(g1, d, p, master_eq::Mode::Markov);
    const auto r1 = master_eq::concurrence_scan(g1, d, p, master_eq::Mode::Renormalized);
    double worst = 0, at = 0, between = 0;
    for (std::size_t n = 0; n < g1.size(); ++n) {
        const double x = g1[n] / kPi;
        if (std::abs(x - std::floor(x) - 0.5) <= 0.1) between = std::max({between, m1[n].C, r1[n].C});
        if (m1[n].C < 0.01 && r1[n].C < 0.01) continue;
        const double rel = std::abs(r1[n].C - m1[n].C) / std::max(m1[n].C, r1[n].C);
        if (rel > worst) worst = rel, at = x;
    }
    const auto g2 = grid(95 * kPi, 100 * kPi, 501);
    const auto m2 = master_eq::concurrence_scan(g2, d, p, master_eq::Mode::Markov);
    const auto r2 = master_eq::concurrence_scan(g2, d, p, master_eq::Mode::Renormalized);
    auto min_c = [](const std::vector<master_eq::ScanPoint>& s) {
        double c = 1;
        for (const auto& x : s) c = std::min(c, x.C);
        return c;
    };
    const double mm = min_c(m2), mr = min_c(r2);
    const bool a = worst <= 0.05, b = between < 0.01, c = mr > mm;
    std::ostringstream o;
    o << "[0,5pi] max relative difference " << fmt("%.1f%%", 100 * worst) << " at " << fmt("%.2fpi", at)
      << (a ? " ok" : " FAIL") << "; between peaks max C = " << fmt("%.4f", between) << (b ? " ok" : " FAIL")
      << "; [95pi,100pi] min C renormalized " << fmt("%.4f", mr) << " vs Markov " << fmt("%.5f", mm)
      << (c ? " ok" : " FAIL");
    return {a && b && c, o.str()};
}

Outcome density_invariants() {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.05, 2.5), w(-1, 1), t(0, 30), om(0, 1);
    std::normal_distribution<double> nrm;
    double herm = 0, trace = 0, pos = INFINITY, equiv = 0;
    for (int n = 0; n < 100; ++n) {
        master_eq::CollectiveParams c;
        c.omega_S = 100 + w(rng);
        c.omega_A = 100 + w(rng);
        c.gamma_S = u(rng);
        c.gamma_A = u(rng);
        const master_eq::DriveParams d{om(rng), om(rng), 0.5 * w(rng)};
        const auto L = master_eq::build_liouvillian(c, d);
        equiv = std::max(equiv, (L - master_eq::build_liouvillian_site(c, d)).cwiseAbs().maxCoeff());
        Eigen::Matrix4cd A;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) A(i, j) = cplx(nrm(rng), nrm(rng));
        master_eq::DensityMatrix4 rho0 = A * A.adjoint();
        rho0 /= rho0.trace();
        std::vector<double> ts(20);
        for (double& x : ts) x = t(rng);
        const auto tr = master_eq::evolve(rho0, L, ts, n % 2 ? master_eq::Integrator::RungeKutta
                                                             : master_eq::Integrator::MatrixExponential);
        for (const auto& r : tr.rho) {
            herm = std::max(herm, (r - r.adjoint()).cwiseAbs().maxCoeff());
            trace = std::max(trace, std::abs(r.trace() - 1.0));
            pos = std::min(pos, master_eq::min_eigenvalue(r));
        }
    }
    const bool ok = herm <= 1e-10 && trace <= 1e-10 && pos >= -1e-8 && equiv <= 1e-12;
    std::ostringstream o;
    o << "Hermiticity " << fmt("%.1e", herm) << ", trace " << fmt("%.1e", trace) << ", min eigenvalue "
      << fmt("%.1e", pos) << ", generator equivalence " << fmt("%.1e", equiv);
    return {ok, o.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"single-photon phase gate", phase_gate},
        {"flux conservation", flux},
        {"closed-form pole formulas", markov_formulas},
        {"poles at k0L = 100.5pi", long_separation_poles},
        {"closed-form window [0, 5pi]", markov_window},
        {"weak-drive population ratios", populations},
        {"g2 features", g2_features},
        {"Green function vs lattice oracle", green_oracle},
        {"concurrence scans", concurrence},
        {"density-matrix invariants", density_invariants},
    };
    int failed = 0;
    for (const auto& [name, f] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
