#include "two_photon/green.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/quadrature.hpp"
#include "single_photon/propagator.hpp"
#include "two_photon/channels.hpp"

namespace wqed::two_photon {

namespace {

using V4 = quad::CVec<4>;
using V2 = quad::CVec<2>;

V4 rho4(double k, const SystemParams& p) {
    const Eigen::Matrix2cd r = spectral_density(channels(k, p));
    V4 out;
    out[0] = r(0, 0);
    out[1] = r(0, 1);
    out[2] = r(1, 0);
    out[3] = r(1, 1);
    return out;
}

V4 hadamard(const V4& a, const V4& b) {
    V4 out;
    for (int i = 0; i < 4; ++i) out[i] = a[i] * b[i];
    return out;
}

Eigen::Matrix2cd to_matrix(const V4& v) {
    Eigen::Matrix2cd m;
    m << v[0], v[1], v[2], v[3];
    return m;
}

// Panel boundaries on [lo, hi]: a fine cluster around each peak position and
// geometric spacing further out, so the adaptive rule starts with panels
// matched to Lorentzian-like structure of width ~Gamma.
std::vector<double> panel_breaks(double lo, double hi, const std::vector<double>& peaks) {
    std::vector<double> b{lo, hi};
    static const double offsets[] = {0.0, 0.5, 1.5, 4.0, 10.0, 25.0, 60.0, 150.0,
                                     400.0, 1000.0, 3000.0, 10000.0, 30000.0};
    for (double c : peaks)
        for (double o : offsets)
            for (double x : {c - o, c + o})
                if (x > lo && x < hi) b.push_back(x);
    std::sort(b.begin(), b.end());
    std::vector<double> out;
    for (double x : b)
        if (out.empty() || x - out.back() > 1e-9 * std::max(1.0, std::abs(x))) out.push_back(x);
    if (out.back() < hi) out.back() = hi;
    return out;
}

// Integrate each initial panel independently (in parallel) and sum in panel
// order, which keeps the result independent of the thread count.
template <class F>
auto integrate_panels(F&& f, const std::vector<double>& breaks, double rel_tol,
                      double abs_tol, long max_evals, const char* op, long* evals) {
    using T = decltype(f(0.0));
    const std::size_t n = breaks.size() - 1;
    std::vector<quad::Result<T>> parts(n);
    parallel_for(n, [&](std::size_t i) {
        parts[i] = quad::integrate(f, breaks[i], breaks[i + 1], rel_tol, abs_tol / n,
                                   max_evals / static_cast<long>(n) + 1000);
    });
    T sum{};
    for (const auto& r : parts) {
        if (!r.converged)
            throw ConvergenceError(op, "adaptive quadrature did not reach the tolerance");
        sum += r.value;
        *evals += r.evals;
    }
    return sum;
}

double max_abs(const V4& v) { return quad::qabs(v); }

}  // namespace

Eigen::Matrix2cd green_dd(double E, const SystemParams& p, const QuadratureSettings& q,
                          IntegralInfo* info) {
    const char* op = "green_dd";
    validate(p);
    q.check(op);
    if (!std::isfinite(E)) throw DomainError(op, "E must be finite");

    // G = int_0^S du int_0^D dd [P(E-u,d) - P(E+u,d)]/u - i pi int_0^D P(E,d) dd
    // with P(s,d) = rho((s+d)/2) rho((s-d)/2) (entrywise). Folding the
    // principal value about s = E cancels the subtracted R(E) term exactly.
    const double c = 2.0 * p.omega0;  // s at which both photons are resonant
    auto P = [&](double s, double d) { return hadamard(rho4(0.5 * (s + d), p), rho4(0.5 * (s - d), p)); };

    long evals = 0;
    const double inner_rel = 0.02 * q.tol;

    auto line = [&](double da, double db, double abs_tol) {
        auto f = [&](double d) { return P(E, d); };
        return integrate_panels(f, panel_breaks(da, db, {std::abs(E - c)}), 0.1 * q.tol, abs_tol,
                                q.max_evals, op, &evals);
    };
    // int over u in [ua, ub] of int over d in [da, db]
    auto area = [&](double ua, double ub, double da, double db, double abs_tol) {
        auto outer = [&, abs_tol](double u) {
            auto f = [&, u](double d) {
                V4 v = P(E - u, d) - P(E + u, d);
                return v * (1.0 / u);
            };
            const auto br = panel_breaks(da, db, {std::abs(E - u - c), std::abs(E + u - c)});
            auto r = quad::integrate(f, br, inner_rel, 0.02 * abs_tol, q.max_evals);
            if (!r.converged)
                throw ConvergenceError(op, "inner momentum integral did not converge");
            return r.value;
        };
        return integrate_panels(outer, panel_breaks(ua, ub, {std::abs(E - c)}), 0.2 * q.tol,
                                abs_tol, q.max_evals, op, &evals);
    };

    double S = 2.0 * q.window;
    // scale for absolute tolerances: the delta-function piece is of the same
    // order as G itself
    V4 lineval = line(0.0, S, 0.0);
    const double scale = std::max(kPi * max_abs(lineval), 1e-300);
    const double abs_tol = 0.2 * q.tol * scale;

    V4 pv = area(0.0, S, 0.0, S, abs_tol);
    auto assemble = [&] {
        V4 out = pv;
        for (int i = 0; i < 4; ++i) out[i] -= kI * kPi * lineval[i];
        return out;
    };
    V4 G = assemble();
    double change = 1.0;
    for (int level = 0; level < q.max_refine; ++level) {
        // double the (s, d) window and add only the new strips
        const double S2 = 2.0 * S;
        lineval += line(S, S2, abs_tol);
        pv += area(S, S2, 0.0, S2, abs_tol);
        pv += area(0.0, S, S, S2, abs_tol);
        S = S2;
        const V4 G2 = assemble();
        change = max_abs(G2 - G) / std::max(max_abs(G2), 1e-300);
        G = G2;
        if (change < q.tol) {
            if (info) *info = {S / 2.0, change, evals};
            return to_matrix(G);
        }
    }
    throw ConvergenceError(op, "window doubling did not converge (relative change " +
                                   std::to_string(change) + ")");
}

Eigen::Matrix2cd green_dd_kramers_kronig(double E, const SystemParams& p,
                                         const QuadratureSettings& q) {
    const char* op = "green_dd_kramers_kronig";
    validate(p);
    q.check(op);
    auto f = [&](double k) {
        const V4 r = rho4(k, p);
        const Eigen::Matrix2cd g = single_photon::qubit_propagator(E - k, p);
        V4 out;
        out[0] = r[0] * g(0, 0);
        out[1] = r[1] * g(0, 1);
        out[2] = r[2] * g(1, 0);
        out[3] = r[3] * g(1, 1);
        return out;
    };
    long evals = 0;
    const double mid = 0.5 * E;
    double W = q.window;
    const std::vector<double> peaks{p.omega0, E - p.omega0};
    V4 G = integrate_panels(f, panel_breaks(mid - W, mid + W, peaks), 0.1 * q.tol, 0.0,
                            q.max_evals, op, &evals);
    for (int level = 0; level < q.max_refine; ++level) {
        const double W2 = 2.0 * W;
        V4 add = integrate_panels(f, panel_breaks(mid - W2, mid - W, peaks), 0.1 * q.tol,
                                  1e-3 * q.tol * max_abs(G), q.max_evals, op, &evals);
        add += integrate_panels(f, panel_breaks(mid + W, mid + W2, peaks), 0.1 * q.tol,
                                1e-3 * q.tol * max_abs(G), q.max_evals, op, &evals);
        G += add;
        W = W2;
        if (max_abs(add) < q.tol * max_abs(G)) return to_matrix(G);
    }
    throw ConvergenceError(op, "window doubling did not converge");
}

std::array<cplx, 2> green_xd(double x1, double x2, double E, const SystemParams& p,
                             const QuadratureSettings& q, IntegralInfo* info) {
    const char* op = "green_xd";
    validate(p);
    q.check(op);
    const double L = p.L();
    auto in_output = [&](double x) { return x > L || x < 0; };
    if (!in_output(x1) || !in_output(x2))
        throw DomainError(op, "coordinates must lie in an output region (x > L or x < 0)");

    const double V2sq = p.gamma / 2.0;
    const cplx z = p.omega0 - kI * (p.gamma + p.gamma_prime) / 2.0;
    const double pos[2] = {0.0, L};
    // distance travelled from qubit i to the detection point
    auto dist = [&](double x, int i) { return x > L ? x - pos[i] : pos[i] - x; };

    // Subtract a single-pole model with the same 1/k asymptotics in both
    // factors; its integral is known in closed form.
    cplx model_total[2];
    double y1[2], y2[2];
    for (int i = 0; i < 2; ++i) {
        y1[i] = dist(x1, i);
        y2[i] = dist(x2, i);
        const double ymax = std::max(y1[i], y2[i]);
        const double dy = std::abs(y1[i] - y2[i]);
        const cplx I = -kI * std::exp(kI * E * ymax) * std::exp(-kI * z * dy) / (E - 2.0 * z);
        model_total[i] = std::sqrt(2.0) * kI * (-V2sq) * I;
    }

    auto f = [&](double k) {
        const ChannelSet ch = channels(k, p);
        V2 out;
        for (int i = 0; i < 2; ++i) {
            const cplx A = output_overlap(x1, i, ch, L);
            const cplx g = single_photon::output_propagator(x2, i, E - k, p);
            const cplx model = kI / (2.0 * kPi) * (-V2sq) * std::exp(kI * k * y1[i]) *
                               std::exp(kI * (E - k) * y2[i]) / ((k - z) * (E - k - z));
            out[i] = std::sqrt(2.0) * (A * g - model);
        }
        return out;
    };

    long evals = 0;
    const double mid = 0.5 * E;
    double W = q.window;
    const std::vector<double> peaks{p.omega0, E - p.omega0};
    const double scale = std::max(std::abs(model_total[0]), std::abs(model_total[1]));
    const double abs_tol = 1e-2 * q.tol * scale;
    V2 rem = integrate_panels(f, panel_breaks(mid - W, mid + W, peaks), 0.1 * q.tol, abs_tol,
                              q.max_evals, op, &evals);
    auto total = [&] {
        V2 t = rem;
        for (int i = 0; i < 2; ++i) t[i] += model_total[i];
        return t;
    };
    double change = 1.0;
    for (int level = 0; level < q.max_refine; ++level) {
        const double W2 = 2.0 * W;
        V2 add = integrate_panels(f, panel_breaks(mid - W2, mid - W, peaks), 0.1 * q.tol,
                                  abs_tol, q.max_evals, op, &evals);
        add += integrate_panels(f, panel_breaks(mid + W, mid + W2, peaks), 0.1 * q.tol, abs_tol,
                                q.max_evals, op, &evals);
        rem += add;
        W = W2;
        const V2 t = total();
        change = quad::qabs(add) / std::max(quad::qabs(t), 1e-300);
        if (change < q.tol) {
            if (info) *info = {W, change, evals};
            return {t[0], t[1]};
        }
    }
    throw ConvergenceError(op, "window doubling did not converge (relative change " +
                                   std::to_string(change) + ")");
}

}  // namespace wqed::two_photon
