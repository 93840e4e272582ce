#include "poles/poles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "core/errors.hpp"

namespace wqed::poles {

namespace {

// Everything is done in z = omega - omega0 so that the large carrier phase
// 2 omega0 L = 2 k0L is applied exactly instead of through omega * L.
struct Pole {
    const SystemParams& p;
    double k0L;

    double L() const { return k0L * p.c / p.omega0; }
    cplx q() const { return 0.25 * p.gamma * p.gamma * std::exp(2.0 * kI * k0L); }
    cplx half_width() const { return 0.5 * kI * (p.gamma + p.gamma_prime); }

    cplx f(cplx z) const {
        const cplx a = z + half_width();
        return a * a + q() * std::exp(2.0 * kI * z * L() / p.c);
    }
    cplx df(cplx z) const {
        return 2.0 * (z + half_width()) +
               2.0 * kI * (L() / p.c) * q() * std::exp(2.0 * kI * z * L() / p.c);
    }
    // partial derivative of f with respect to k0L at fixed z
    cplx df_dk(cplx z) const {
        return q() * std::exp(2.0 * kI * z * L() / p.c) * 2.0 * kI * (1.0 + z / p.omega0);
    }
};

struct NewtonResult {
    cplx z;
    bool converged;
};

NewtonResult newton(const Pole& P, cplx z, double tol, int max_iter) {
    for (int it = 0; it < max_iter; ++it) {
        const cplx fz = P.f(z);
        if (!finite(fz)) return {z, false};
        if (std::abs(fz) < tol) return {z, true};
        const cplx d = P.df(z);
        if (d == 0.0) return {z, false};
        const cplx dz = fz / d;
        z -= dz;
        if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) return {z, std::abs(P.f(z)) < tol};
    }
    return {z, std::abs(P.f(z)) < tol};
}

PoleRecord record(const Pole& P, cplx z, const std::string& label) {
    PoleRecord r;
    r.omega = P.p.omega0 + z;
    r.gamma_eff = -2.0 * z.imag();
    r.label = label;
    r.k0L = P.k0L;
    r.residual = std::abs(P.f(z));
    return r;
}

// S and A roots at k0L = 0, where F is a plain quadratic.
std::pair<cplx, cplx> roots_at_zero(const SystemParams& p) {
    const cplx w = 0.5 * kI * (p.gamma + p.gamma_prime);
    return {-w - 0.5 * kI * p.gamma, -w + 0.5 * kI * p.gamma};
}

// Follows the S/A pair in k0L. The pair is defined as the two roots closest to
// the origin of (Re omega - omega0, Im omega), with labels following
// continuity. Pure continuation of S and A alone can run into an exceptional
// point where a trace meets a collective root, or miss a collective root that
// moves closer to the origin, so every root in a box around the origin is
// followed and the box is searched afresh every few steps.
class Tracker {
public:
    Tracker(const SystemParams& p, const ContinuationSettings& s) : p_(p), s_(s) {
        std::tie(z_[0], z_[1]) = roots_at_zero(p_);
        tracked_ = {z_[0], z_[1]};
    }

    double k0L() const { return k_; }

    TracePoint point() const {
        const Pole P{p_, k_};
        return {k_, record(P, z_[0], "S"), record(P, z_[1], "A")};
    }

    // Advance to k_to >= k0L().
    void advance(double k_to) {
        const char* op = "continue_poles";
        double h = s_.step_k0L;
        while (k_ < k_to) {
            const double k_new = (k_to - k_ <= h) ? k_to : k_ + h;
            std::vector<cplx> roots = follow(k_new, steps_ % kSearchEvery == 0);
            if (roots.size() < 2) roots = follow(k_new, true);
            if (roots.size() < 2) {
                h *= 0.5;
                if (h < s_.min_step) {
                    std::ostringstream msg;
                    msg << "Newton failed to locate the S/A pair at k0L = " << k_new;
                    throw ContinuationError(op, msg.str());
                }
                continue;
            }
            std::sort(roots.begin(), roots.end(),
                      [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
            if (std::abs(roots[0] - roots[1]) < std::sqrt(s_.newton_tol)) {
                std::ostringstream msg;
                msg << "S and A traces coalesce at k0L = " << k_new;
                throw CollisionError(op, msg.str());
            }
            const double keep = std::abs(roots[0] - z_[0]) + std::abs(roots[1] - z_[1]);
            const double swap = std::abs(roots[1] - z_[0]) + std::abs(roots[0] - z_[1]);
            if (keep <= swap) {
                z_[0] = roots[0];
                z_[1] = roots[1];
            } else {
                z_[0] = roots[1];
                z_[1] = roots[0];
            }
            tracked_ = std::move(roots);
            k_ = k_new;
            ++steps_;
            h = std::min(s_.step_k0L, 2.0 * h);
        }
    }

private:
    static constexpr long kSearchEvery = 8;

    // the closed-form pair stays within |z| < Gamma + Gamma'/2 of the origin
    double reach() const { return p_.gamma + 0.5 * p_.gamma_prime + 1.0; }

    std::vector<cplx> follow(double k_new, bool search) const {
        const Pole P0{p_, k_};
        const Pole P1{p_, k_new};
        std::vector<cplx> seeds;
        for (cplx z : tracked_) {
            const cplx d = P0.df(z);
            seeds.push_back(std::abs(d) > 0 ? z - P0.df_dk(z) / d * (k_new - k_) : z);
            seeds.push_back(z);
        }
        if (search) {
            double spacing = 0.2 * p_.gamma;
            if (P1.L() > 0) spacing = std::min(spacing, kPi / (4.0 * P1.L()));
            const int n = static_cast<int>(std::ceil(reach() / spacing));
            for (int i = -n; i <= n; ++i)
                for (int j = -2 * n; j <= 0; ++j) seeds.emplace_back(i * spacing, j * spacing);
        }
        std::vector<cplx> roots;
        for (cplx seed : seeds) {
            const auto r = newton(P1, seed, s_.newton_tol, s_.max_iter);
            if (!r.converged || std::abs(r.z) > 2.0 * reach()) continue;
            if (std::none_of(roots.begin(), roots.end(),
                             [&](cplx z) { return std::abs(z - r.z) < 1e-9; }))
                roots.push_back(r.z);
        }
        return roots;
    }

    std::vector<cplx> tracked_;
    long steps_ = 0;
    SystemParams p_;
    ContinuationSettings s_;
    double k_ = 0.0;
    cplx z_[2];
};

}  // namespace

cplx F(cplx omega, const SystemParams& p) {
    validate(p);
    return Pole{p, p.k0L}.f(omega - p.omega0);
}

cplx dF(cplx omega, const SystemParams& p) {
    validate(p);
    return Pole{p, p.k0L}.df(omega - p.omega0);
}

std::pair<PoleRecord, PoleRecord> markov_poles(const SystemParams& p) {
    validate(p);
    const double g12 = p.gamma * std::cos(p.k0L);
    const double o12 = 0.5 * p.gamma * std::sin(p.k0L);
    PoleRecord S, A;
    S.label = "S";
    A.label = "A";
    S.k0L = A.k0L = p.k0L;
    S.gamma_eff = p.gamma + p.gamma_prime + g12;
    A.gamma_eff = p.gamma + p.gamma_prime - g12;
    S.omega = cplx(p.omega0 + o12, -0.5 * S.gamma_eff);
    A.omega = cplx(p.omega0 - o12, -0.5 * A.gamma_eff);
    return {S, A};
}

void ContinuationSettings::check(const std::string& op) const {
    if (!(step_k0L > 0) || !(newton_tol > 0) || max_iter <= 0 || !(min_step > 0))
        throw DomainError(op, "continuation settings must be positive");
}

std::vector<TracePoint> continue_poles(double k0L_target, const SystemParams& p,
                                       const ContinuationSettings& s) {
    const char* op = "continue_poles";
    validate(p);
    s.check(op);
    if (!(k0L_target >= 0) || !std::isfinite(k0L_target))
        throw DomainError(op, "k0L_target must be finite and >= 0");
    Tracker t(p, s);
    std::vector<TracePoint> out{t.point()};
    // checkpoints on the nominal grid keep the output spacing regular
    const long n = static_cast<long>(std::floor(k0L_target / s.step_k0L + 1e-9));
    for (long i = 1; i <= n; ++i) {
        t.advance(std::min(i * s.step_k0L, k0L_target));
        out.push_back(t.point());
    }
    if (t.k0L() < k0L_target) {
        t.advance(k0L_target);
        out.push_back(t.point());
    }
    return out;
}

std::vector<TracePoint> poles_on_grid(const std::vector<double>& k0L_grid,
                                      const SystemParams& p, const ContinuationSettings& s) {
    const char* op = "poles_on_grid";
    validate(p);
    s.check(op);
    for (double k : k0L_grid)
        if (!(k >= 0) || !std::isfinite(k)) throw DomainError(op, "k0L values must be >= 0");
    std::vector<std::size_t> order(k0L_grid.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return k0L_grid[a] < k0L_grid[b]; });
    Tracker t(p, s);
    std::vector<TracePoint> out(k0L_grid.size());
    for (std::size_t i : order) {
        t.advance(k0L_grid[i]);
        out[i] = t.point();
    }
    return out;
}

namespace {

// Accumulated change of arg f along the straight segment z1 -> z2.
double arg_change(const Pole& P, cplx z1, cplx f1, cplx z2, cplx f2, int depth) {
    const double d = std::arg(f2 / f1);
    if (std::abs(d) < 0.5 * kPi) return d;
    if (depth > 60)
        throw IncompleteEnumerationError("winding_number", "cannot resolve arg F on the boundary");
    const cplx zm = 0.5 * (z1 + z2);
    const cplx fm = P.f(zm);
    if (std::abs(fm) < 1e-300)
        throw IncompleteEnumerationError("winding_number", "root on the window boundary");
    return arg_change(P, z1, f1, zm, fm, depth + 1) + arg_change(P, zm, fm, z2, f2, depth + 1);
}

int winding(const Pole& P, const cplx corners[4]) {
    // base sampling resolves the oscillation of exp(2 i z L)
    const double L = P.L();
    const double h = L > 0 ? std::min(0.02, kPi / (16.0 * L)) : 0.02;
    double total = 0.0;
    for (int e = 0; e < 4; ++e) {
        const cplx a = corners[e], b = corners[(e + 1) % 4];
        const int n = std::max(8, static_cast<int>(std::ceil(std::abs(b - a) / h)));
        cplx z_prev = a, f_prev = P.f(a);
        for (int i = 1; i <= n; ++i) {
            const cplx z = a + (b - a) * (double(i) / n);
            const cplx fz = P.f(z);
            if (std::abs(fz) == 0.0)
                throw IncompleteEnumerationError("winding_number", "root on the window boundary");
            total += arg_change(P, z_prev, f_prev, z, fz, 0);
            z_prev = z;
            f_prev = fz;
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

void corners_of(const Window& w, double omega0, cplx out[4]) {
    out[0] = cplx(w.re_min - omega0, w.im_min);
    out[1] = cplx(w.re_max - omega0, w.im_min);
    out[2] = cplx(w.re_max - omega0, w.im_max);
    out[3] = cplx(w.re_min - omega0, w.im_max);
}

void check_window(const Window& w, const char* op) {
    for (double v : {w.re_min, w.re_max, w.im_min, w.im_max})
        if (!std::isfinite(v)) throw DomainError(op, "window must be finite");
    if (!(w.re_min < w.re_max) || !(w.im_min < w.im_max))
        throw DomainError(op, "window must have positive width and height");
}

}  // namespace

int winding_number(const Window& w, const SystemParams& p) {
    validate(p);
    check_window(w, "winding_number");
    cplx c[4];
    corners_of(w, p.omega0, c);
    return winding(Pole{p, p.k0L}, c);
}

Enumeration enumerate_poles(const Window& w, const SystemParams& p,
                            const EnumerationSettings& s) {
    const char* op = "enumerate_poles";
    validate(p);
    check_window(w, op);
    s.continuation.check(op);
    const Pole P{p, p.k0L};
    cplx c[4];
    corners_of(w, p.omega0, c);

    Enumeration out;
    out.winding = winding(P, c);

    auto inside = [&](cplx z) {
        return z.real() >= c[0].real() && z.real() <= c[1].real() && z.imag() >= c[0].imag() &&
               z.imag() <= c[2].imag();
    };

    std::vector<cplx> roots;
    std::vector<int> mult;
    int found = 0;
    double spacing = s.seed_spacing;
    if (P.L() > 0) spacing = std::min(spacing, kPi / (8.0 * P.L()));
    for (int pass = 0; pass <= s.max_seed_refine; ++pass) {
        const int nx = static_cast<int>(std::ceil((c[1].real() - c[0].real()) / spacing));
        const int ny = static_cast<int>(std::ceil((c[2].imag() - c[0].imag()) / spacing));
        for (int i = 0; i <= nx; ++i)
            for (int j = 0; j <= ny; ++j) {
                const cplx seed(c[0].real() + (c[1].real() - c[0].real()) * i / nx,
                                c[0].imag() + (c[2].imag() - c[0].imag()) * j / ny);
                const auto r = newton(P, seed, s.newton_tol, s.max_iter);
                if (!r.converged || !inside(r.z)) continue;
                const bool dup = std::any_of(roots.begin(), roots.end(), [&](cplx z) {
                    return std::abs(z - r.z) < s.dedup;
                });
                if (!dup) roots.push_back(r.z);
            }
        // Newton lands anywhere within ~sqrt(tol) of a (near-)double root, so
        // merge points within a small square and count multiplicity on it
        const double r = 10.0 * s.dedup;
        std::vector<cplx> merged;
        for (cplx z : roots)
            if (std::none_of(merged.begin(), merged.end(),
                             [&](cplx m) { return std::abs(m - z) < 2.0 * r; }))
                merged.push_back(z);
        roots = merged;
        mult.assign(roots.size(), 1);
        for (std::size_t k = 0; k < roots.size(); ++k) {
            const cplx sq[4] = {roots[k] + cplx(-r, -r), roots[k] + cplx(r, -r),
                                roots[k] + cplx(r, r), roots[k] + cplx(-r, r)};
            mult[k] = std::max(1, winding(P, sq));
        }
        found = std::accumulate(mult.begin(), mult.end(), 0);
        if (found == out.winding) break;
        spacing *= 0.5;
    }
    if (found != out.winding) {
        std::ostringstream msg;
        msg << "argument principle counts " << out.winding << " roots but " << found
            << " were found";
        throw IncompleteEnumerationError(op, msg.str());
    }

    // S and A by continuation from the closed form at k0L = 0
    cplx zS = std::nan(""), zA = std::nan("");
    if (!roots.empty()) {
        const auto trace = poles_on_grid({p.k0L}, p, s.continuation);
        zS = trace[0].S.omega - p.omega0;
        zA = trace[0].A.omega - p.omega0;
    }
    int iS = -1, iA = -1;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        if (std::abs(roots[k] - zS) < 1e3 * s.dedup) iS = static_cast<int>(k);
        else if (std::abs(roots[k] - zA) < 1e3 * s.dedup) iA = static_cast<int>(k);
    }
    if (iS < 0 && iA < 0 && mult.size() == 1 && mult[0] == 2) iS = 0;  // S/A degenerate

    const double mid = (iS >= 0 && iA >= 0) ? 0.5 * (roots[iS].real() + roots[iA].real())
                                            : (iS >= 0 ? roots[iS].real()
                                                       : (iA >= 0 ? roots[iA].real() : 0.0));
    std::vector<std::size_t> above, below;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        if (static_cast<int>(k) == iS || static_cast<int>(k) == iA) continue;
        (roots[k].real() > mid ? above : below).push_back(k);
    }
    std::sort(above.begin(), above.end(),
              [&](std::size_t a, std::size_t b) { return roots[a].real() < roots[b].real(); });
    std::sort(below.begin(), below.end(),
              [&](std::size_t a, std::size_t b) { return roots[a].real() > roots[b].real(); });

    auto rec = [&](std::size_t k, const std::string& label) {
        PoleRecord r = record(P, roots[k], label);
        r.multiplicity = mult[k];
        return r;
    };
    if (iS >= 0) out.poles.push_back(rec(iS, "S"));
    if (iA >= 0) out.poles.push_back(rec(iA, "A"));
    std::vector<PoleRecord> cs;
    for (std::size_t n = 0; n < below.size(); ++n)
        cs.push_back(rec(below[n], "C-" + std::to_string(n + 1)));
    for (std::size_t n = 0; n < above.size(); ++n)
        cs.push_back(rec(above[n], "C" + std::to_string(n + 1)));
    std::sort(cs.begin(), cs.end(), [](const PoleRecord& a, const PoleRecord& b) {
        return a.omega.real() < b.omega.real();
    });
    for (auto& r : cs) {
        for (int k : {iS, iA})
            if (k >= 0 && std::abs(r.omega - (p.omega0 + roots[k])) < 0.5 * p.gamma)
                out.two_pole_breakdown = true;
        out.poles.push_back(std::move(r));
    }
    return out;
}

}  // namespace wqed::poles
