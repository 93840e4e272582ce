#include "cli/experiments.hpp"

#include <cmath>

#include "master_eq/master_eq.hpp"
#include "poles/poles.hpp"
#include "single_photon/single_photon.hpp"
#include "two_photon/green.hpp"
#include "two_photon/scattering.hpp"

namespace wqed::cli {

std::vector<double> linspace(double a, double b, long n, const char* key) {
    if (n < 1) throw ConfigError("config", std::string(key) + " must be >= 1");
    if (n == 1) return {a};
    std::vector<double> v(n);
    for (long i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
    v.back() = b;
    return v;
}

namespace {

poles::ContinuationSettings continuation(const ExperimentConfig& cfg) {
    poles::ContinuationSettings s;
    s.step_k0L = cfg.angle("step");
    s.newton_tol = cfg.number("newton-tol");
    s.max_iter = static_cast<int>(cfg.integer("max-iter"));
    s.check("config");
    return s;
}

master_eq::DriveParams drive(const ExperimentConfig& cfg) {
    master_eq::DriveParams d;
    d.Omega1 = cfg.number("Omega1");
    d.Omega2 = cfg.number("Omega2");
    d.detuning = cfg.number("drive-detuning");
    d.check("config");
    return d;
}

Result start(const ExperimentConfig& cfg) {
    Result r;
    r.experiment = cfg.experiment();
    r.parameters = cfg.values();
    return r;
}

Result fig1_map(const ExperimentConfig& cfg) {
    Result r = start(cfg);
    const SystemParams p = cfg.params();
    const auto delta = linspace(cfg.number("delta-min"), cfg.number("delta-max"),
                                cfg.integer("n-delta"), "n-delta");
    const auto phase = linspace(cfg.angle("phase-min"), cfg.angle("phase-max"),
                                cfg.integer("n-phase"), "n-phase");
    r.table.columns = {"delta", "two_kL", "T", "theta"};
    for (const auto& m : single_photon::transmission_map(delta, phase, p))
        r.table.add_row({m.delta, m.two_kL, m.T, m.theta});
    return r;
}

Result g2_curve(const ExperimentConfig& cfg) {
    Result r = start(cfg);
    const SystemParams p = cfg.params();
    const QuadratureSettings q = cfg.quadrature();
    const double k = p.omega0 + cfg.number("delta");
    const double off = cfg.number("xc-offset");
    if (!(off > 0)) throw ConfigError("config", "xc-offset must be > 0");
    const auto tau = linspace(0.0, cfg.number("tau-max"), cfg.integer("n-tau"), "n-tau");
    const std::string ch = cfg.text("channel");
    if (ch != "both" && ch != "transmitted" && ch != "reflected")
        throw ConfigError("config", "channel must be both, transmitted or reflected");

    const auto amp = single_photon::amplitudes(k, p, Direction::FromLeft);
    r.notes.push_back({"abs_t_k", format_double(std::abs(amp.t_k))});
    r.notes.push_back({"abs_r_k", format_double(std::abs(amp.r_k))});

    std::vector<std::vector<two_photon::G2Point>> curves;
    r.table.columns = {"tau"};
    for (Channel c : {Channel::Transmitted, Channel::Reflected}) {
        if (ch != "both" && ch != to_string(c)) continue;
        const bool trans = c == Channel::Transmitted;
        curves.push_back(two_photon::g2(tau, k, c, p, q, trans ? p.L() + off : -off));
        r.table.columns.push_back("g2_" + to_string(c));
    }
    for (std::size_t n = 0; n < tau.size(); ++n) {
        std::vector<double> row{tau[n]};
        for (const auto& c : curves) row.push_back(c[n].g2);
        r.table.add_row(row);
    }
    return r;
}

Result fig4_poles(const ExperimentConfig& cfg) {
    Result r = start(cfg);
    const SystemParams p = cfg.params();
    const double target = cfg.angle("k0L-max");
    const long stride = cfg.integer("stride");
    if (stride < 1) throw ConfigError("config", "stride must be >= 1");
    const auto trace = poles::continue_poles(target, p, continuation(cfg));
    r.table.columns = {"k0L",           "k0L_over_pi",    "omega_S",        "gamma_S",
                       "omega_A",       "gamma_A",        "omega_S_markov", "gamma_S_markov",
                       "omega_A_markov", "gamma_A_markov", "residual_S",     "residual_A"};
    for (std::size_t n = 0; n < trace.size(); ++n) {
        if (n % stride != 0 && n + 1 != trace.size()) continue;
        const auto& t = trace[n];
        SystemParams q = p;
        q.k0L = t.k0L;
        const auto [mS, mA] = poles::markov_poles(q);
        r.table.add_row({t.k0L, t.k0L / kPi, t.S.omega.real(), t.S.gamma_eff, t.A.omega.real(),
                         t.A.gamma_eff, mS.omega.real(), mS.gamma_eff, mA.omega.real(),
                         mA.gamma_eff, t.S.residual, t.A.residual});
    }
    return r;
}

Result fig5_concurrence(const ExperimentConfig& cfg) {
    Result r = start(cfg);
    const SystemParams p = cfg.params();
    const auto d = drive(cfg);
    const auto grid = linspace(cfg.angle("k0L-min"), cfg.angle("k0L-max"), cfg.integer("n-points"),
                               "n-points");
    const std::string mode = cfg.text("mode");
    std::vector<std::pair<std::string, master_eq::Mode>> modes;
    if (mode == "markov" || mode == "both") modes.push_back({"markov", master_eq::Mode::Markov});
    if (mode == "renormalized" || mode == "both")
        modes.push_back({"renormalized", master_eq::Mode::Renormalized});
    if (modes.empty()) throw ConfigError("config", "mode must be markov, renormalized or both");

    r.table.columns = {"k0L", "k0L_over_pi"};
    std::vector<std::vector<master_eq::ScanPoint>> scans;
    for (const auto& [name, m] : modes) {
        scans.push_back(master_eq::concurrence_scan(grid, d, p, m));
        for (const char* c : {"C", "gamma_S", "gamma_A", "delta_S", "delta_A", "P_S", "P_A"})
            r.table.columns.push_back(std::string(c) + "_" + name);
    }
    for (std::size_t n = 0; n < grid.size(); ++n) {
        std::vector<double> row{grid[n], grid[n] / kPi};
        for (const auto& s : scans) {
            const auto& q = s[n];
            row.insert(row.end(), {q.C, q.gamma_S, q.gamma_A, q.delta_S, q.delta_A, q.P_S, q.P_A});
        }
        r.table.add_row(row);
    }
    return r;
}

Result figS1_poles(const ExperimentConfig& cfg) {
    Result r = start(cfg);
    const SystemParams p = cfg.params();
    poles::EnumerationSettings s;
    s.newton_tol = cfg.number("newton-tol");
    s.max_iter = static_cast<int>(cfg.integer("max-iter"));
    s.continuation = continuation(cfg);
    const poles::Window w{p.omega0 + cfg.number("re-min"), p.omega0 + cfg.number("re-max"),
                          cfg.number("im-min"), cfg.number("im-max")};
    if (!(w.re_min < w.re_max) || !(w.im_min < w.im_max))
        throw ConfigError("config", "pole window must have re-min < re-max and im-min < im-max");
    const auto e = poles::enumerate_poles(w, p, s);

    r.notes.push_back({"winding", std::to_string(e.winding)});
    r.notes.push_back({"two_pole_breakdown", e.two_pole_breakdown ? "true" : "false"});
    r.table.columns = {"label", "omega_re", "omega_im", "delta", "gamma_eff", "residual",
                       "multiplicity"};
    nlohmann::json list = nlohmann::json::array();
    for (const auto& q : e.poles) {
        const double delta = q.omega.real() - p.omega0;
        r.table.rows.push_back({q.label, format_double(q.omega.real()), format_double(q.omega.imag()),
                                format_double(delta), format_double(q.gamma_eff),
                                format_double(q.residual), std::to_string(q.multiplicity)});
        list.push_back({{"label", q.label},
                        {"omega_re", q.omega.real()},
                        {"omega_im", q.omega.imag()},
                        {"delta", delta},
                        {"gamma_eff", q.gamma_eff},
                        {"residual", q.residual},
                        {"multiplicity", q.multiplicity}});
    }
    r.extra = {{"winding", e.winding}, {"two_pole_breakdown", e.two_pole_breakdown}, {"poles", list}};
    return r;
}

// Everything the library knows about one parameter point.
Result custom(const ExperimentConfig& cfg) {
    Result r = start(cfg);
    const SystemParams p = cfg.params();
    const double k = p.omega0 + cfg.number("delta");
    const auto amp = single_photon::amplitudes(k, p, Direction::FromLeft);
    const auto [mS, mA] = poles::markov_poles(p);
    const auto trace = poles::poles_on_grid({p.k0L}, p, continuation(cfg));
    const auto& S = trace[0].S;
    const auto& A = trace[0].A;
    const auto d = drive(cfg);
    const auto cm = master_eq::concurrence_scan({p.k0L}, d, p, master_eq::Mode::Markov)[0];
    const auto cr = master_eq::concurrence_scan({p.k0L}, d, p, master_eq::Mode::Renormalized)[0];
    const Eigen::Matrix2cd G = two_photon::green_dd(2.0 * k, p, cfg.quadrature());

    r.table.columns = {"quantity", "value"};
    nlohmann::json obj;
    auto put = [&](const std::string& name, double v) {
        r.table.rows.push_back({name, format_double(v)});
        obj[name] = v;
    };
    put("t_re", amp.t_k.real());
    put("t_im", amp.t_k.imag());
    put("r_re", amp.r_k.real());
    put("r_im", amp.r_k.imag());
    put("T", std::norm(amp.t_k));
    put("R", std::norm(amp.r_k));
    put("theta", std::arg(amp.t_k));
    put("omega_S_markov", mS.omega.real());
    put("gamma_S_markov", mS.gamma_eff);
    put("omega_A_markov", mA.omega.real());
    put("gamma_A_markov", mA.gamma_eff);
    put("omega_S", S.omega.real());
    put("gamma_S", S.gamma_eff);
    put("omega_A", A.omega.real());
    put("gamma_A", A.gamma_eff);
    put("C_markov", cm.C);
    put("C_renormalized", cr.C);
    put("G11_re", G(0, 0).real());
    put("G11_im", G(0, 0).imag());
    put("G12_re", G(0, 1).real());
    put("G12_im", G(0, 1).imag());
    r.extra = {{"values", obj}};
    return r;
}

}  // namespace

Result run(const ExperimentConfig& cfg) {
    const std::string& e = cfg.experiment();
    if (e == "fig1-map") return fig1_map(cfg);
    if (e == "fig2-g2" || e == "fig3-g2") return g2_curve(cfg);
    if (e == "fig4-poles") return fig4_poles(cfg);
    if (e == "fig5-concurrence") return fig5_concurrence(cfg);
    if (e == "figS1-poles") return figS1_poles(cfg);
    if (e == "custom") return custom(cfg);
    throw ConfigError("run", "unknown experiment '" + e + "'");
}

}  // namespace wqed::cli
