#include "master_eq/master_eq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "poles/poles.hpp"

namespace wqed::master_eq {

namespace {

using Op = Eigen::Matrix4cd;
using Vec16 = Eigen::Matrix<cplx, 16, 1>;

constexpr int G = 0, E2 = 1, E1 = 2, EE = 3;  // site basis indices

Op lowering1() {
    Op s = Op::Zero();
    s(G, E1) = 1.0;
    s(E2, EE) = 1.0;
    return s;
}

Op lowering2() {
    Op s = Op::Zero();
    s(G, E2) = 1.0;
    s(E1, EE) = 1.0;
    return s;
}

// -i[H, .]
Liouvillian hamiltonian_part(const Op& H) {
    const Op I = Op::Identity();
    return -kI * (Liouvillian(Eigen::kroneckerProduct(I, H)) -
                  Liouvillian(Eigen::kroneckerProduct(H.transpose(), I)));
}

// rate * (b rho a^+ - {a^+ b, rho} / 2)
Liouvillian dissipator(double rate, const Op& a, const Op& b) {
    const Op I = Op::Identity();
    const Op ab = a.adjoint() * b;
    return rate * (Liouvillian(Eigen::kroneckerProduct(a.conjugate(), b)) -
                   0.5 * Liouvillian(Eigen::kroneckerProduct(I, ab)) -
                   0.5 * Liouvillian(Eigen::kroneckerProduct(ab.transpose(), I)));
}

Vec16 vec(const DensityMatrix4& rho) { return Eigen::Map<const Vec16>(rho.data()); }

DensityMatrix4 unvec(const Vec16& v) { return Eigen::Map<const DensityMatrix4>(v.data()); }

}  // namespace

void CollectiveParams::check(const char* op) const {
    for (double v : {omega0, omega_S, omega_A, gamma_S, gamma_A})
        if (!std::isfinite(v)) throw DomainError(op, "collective parameters must be finite");
    if (!(gamma_S > 0) || !(gamma_A > 0))
        throw DomainError(op, "gamma_S and gamma_A must be > 0");
}

void DriveParams::check(const char* op) const {
    if (!(Omega1 >= 0) || !(Omega2 >= 0) || !std::isfinite(Omega1) || !std::isfinite(Omega2))
        throw DomainError(op, "Rabi frequencies must be finite and >= 0");
    if (!std::isfinite(detuning)) throw DomainError(op, "drive detuning must be finite");
}

CollectiveParams markov_collective(const SystemParams& p) {
    const auto [S, A] = poles::markov_poles(p);
    CollectiveParams c;
    c.omega0 = p.omega0;
    c.omega_S = S.omega.real();
    c.omega_A = A.omega.real();
    c.gamma_S = S.gamma_eff;
    c.gamma_A = A.gamma_eff;
    c.source = Mode::Markov;
    return c;
}

Liouvillian build_liouvillian(const CollectiveParams& c, const DriveParams& d) {
    c.check("build_liouvillian");
    d.check("build_liouvillian");
    const double wd = c.omega0 + d.detuning;

    // basis {g, S, A, e}
    Op sS = Op::Zero(), sA = Op::Zero();
    sS(0, 1) = 1.0;
    sS(1, 3) = 1.0;
    sA(0, 2) = -1.0;
    sA(2, 3) = 1.0;
    const Op s1 = (sS + sA) / std::sqrt(2.0);
    const Op s2 = (sS - sA) / std::sqrt(2.0);
    Op H = (c.omega_S - wd) * sS.adjoint() * sS + (c.omega_A - wd) * sA.adjoint() * sA +
           d.Omega1 * (s1 + s1.adjoint()) + d.Omega2 * (s2 + s2.adjoint());
    const Liouvillian L_SA =
        hamiltonian_part(H) + dissipator(c.gamma_S, sS, sS) + dissipator(c.gamma_A, sA, sA);

    const double r = 1.0 / std::sqrt(2.0);
    Op U = Op::Zero();  // columns are |g>, |S>, |A>, |e> in the site basis
    U(G, 0) = 1.0;
    U(E2, 1) = r;
    U(E1, 1) = r;
    U(E2, 2) = r;
    U(E1, 2) = -r;
    U(EE, 3) = 1.0;
    const Liouvillian K = Eigen::kroneckerProduct(U.conjugate(), U);
    return K * L_SA * K.adjoint();
}

Liouvillian build_liouvillian_site(const CollectiveParams& c, const DriveParams& d) {
    c.check("build_liouvillian_site");
    d.check("build_liouvillian_site");
    const double wd = c.omega0 + d.detuning;
    const double w_site = 0.5 * (c.omega_S + c.omega_A) - wd;
    const double Omega12 = 0.5 * (c.omega_S - c.omega_A);
    const double G11 = 0.5 * (c.gamma_S + c.gamma_A);
    const double G12 = 0.5 * (c.gamma_S - c.gamma_A);

    const Op s[2] = {lowering1(), lowering2()};
    Op H = w_site * (s[0].adjoint() * s[0] + s[1].adjoint() * s[1]) +
           Omega12 * (s[0].adjoint() * s[1] + s[1].adjoint() * s[0]) +
           d.Omega1 * (s[0] + s[0].adjoint()) + d.Omega2 * (s[1] + s[1].adjoint());
    Liouvillian L = hamiltonian_part(H);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) L += dissipator(i == j ? G11 : G12, s[i], s[j]);
    return L;
}

DensityMatrix4 steady_state(const Liouvillian& L) {
    const char* op = "steady_state";
    Eigen::JacobiSVD<Liouvillian> svd(L, Eigen::ComputeFullV);
    const auto sv = svd.singularValues();
    const double thresh = 1e-11 * std::max(1.0, sv(0));
    int null_dim = 0;
    for (int k = 0; k < 16; ++k)
        if (sv(k) <= thresh) ++null_dim;
    if (null_dim != 1)
        throw DegenerateKernelError(op, "Liouvillian kernel has dimension " +
                                            std::to_string(null_dim) + ", expected 1");
    DensityMatrix4 rho = unvec(svd.matrixV().col(15));
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double res = (L * vec(rho)).norm();
    if (!(res < 1e-10)) throw NumericalError(op, "steady-state residual " + std::to_string(res));
    return rho;
}

double min_eigenvalue(const DensityMatrix4& rho) {
    const Op h = 0.5 * (rho + rho.adjoint());
    return Eigen::SelfAdjointEigenSolver<Op>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

void check_density_matrix(const DensityMatrix4& rho, const char* op, double tol, double tol_pos) {
    if (!rho.allFinite()) throw DomainError(op, "density matrix is not finite");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw DomainError(op, "density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > tol) throw DomainError(op, "density matrix trace != 1");
    if (min_eigenvalue(rho) < -tol_pos) throw DomainError(op, "density matrix is not positive");
}

Trajectory evolve(const DensityMatrix4& rho0, const Liouvillian& L, const std::vector<double>& t_grid,
                  Integrator method) {
    const char* op = "evolve";
    check_density_matrix(rho0, op);
    for (double t : t_grid)
        if (!(t >= 0) || !std::isfinite(t)) throw DomainError(op, "times must be finite and >= 0");

    Trajectory out;
    out.t = t_grid;
    out.rho.resize(t_grid.size());
    const Vec16 v0 = vec(rho0);

    if (method == Integrator::MatrixExponential) {
        for (std::size_t n = 0; n < t_grid.size(); ++n) {
            if (t_grid[n] == 0.0) {
                out.rho[n] = rho0;
                continue;
            }
            const Liouvillian Lt = L * t_grid[n];
            out.rho[n] = unvec(Lt.exp() * v0);
        }
    } else {
        namespace ode = boost::numeric::odeint;
        using State = std::vector<cplx>;
        std::vector<std::size_t> order(t_grid.size());
        for (std::size_t n = 0; n < order.size(); ++n) order[n] = n;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return t_grid[a] < t_grid[b]; });
        std::vector<double> times{0.0};
        for (std::size_t n : order) times.push_back(t_grid[n]);

        State x(v0.data(), v0.data() + 16);
        auto rhs = [&L](const State& y, State& dy, double) {
            Eigen::Map<Vec16>(dy.data()) = L * Eigen::Map<const Vec16>(y.data());
        };
        std::vector<State> states;
        auto observer = [&states](const State& y, double) { states.push_back(y); };
        auto stepper = ode::make_dense_output(1e-13, 1e-13, ode::runge_kutta_dopri5<State>());
        ode::integrate_times(stepper, rhs, x, times.begin(), times.end(), 1e-3, observer);
        if (states.size() != times.size())
            throw NumericalError(op, "integrator did not reach every output time");
        for (std::size_t k = 0; k < order.size(); ++k)
            out.rho[order[k]] = unvec(Eigen::Map<const Vec16>(states[k + 1].data()));
    }

    for (const auto& rho : out.rho) {
        if (!rho.allFinite()) throw NumericalError(op, "non-finite density matrix");
        if (min_eigenvalue(rho) < -1e-8)
            throw ToleranceError(op, "density matrix lost positivity beyond 1e-8");
    }
    return out;
}

double concurrence(const DensityMatrix4& rho) {
    // lambda_i are the singular values of sqrt(rho) Y conj(sqrt(rho)),
    // Y = sigma_y (x) sigma_y.
    Eigen::SelfAdjointEigenSolver<Op> es(0.5 * (rho + rho.adjoint()));
    const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Op sq = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    Op Y = Op::Zero();
    Y(0, 3) = -1.0;
    Y(1, 2) = 1.0;
    Y(2, 1) = 1.0;
    Y(3, 0) = -1.0;
    const Op M = sq * Y * sq.conjugate();
    const Eigen::Vector4d l = Eigen::JacobiSVD<Op>(M).singularValues();  // descending
    return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

DensityMatrix4 pure(const Eigen::Vector4cd& psi) { return psi * psi.adjoint(); }

Eigen::Vector4cd ket_S() {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(E2) = v(E1) = 1.0 / std::sqrt(2.0);
    return v;
}

Eigen::Vector4cd ket_A() {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(E2) = 1.0 / std::sqrt(2.0);
    v(E1) = -1.0 / std::sqrt(2.0);
    return v;
}

std::vector<ScanPoint> concurrence_scan(const std::vector<double>& k0L_grid, const DriveParams& d,
                                        const SystemParams& p, Mode mode) {
    const char* op = "concurrence_scan";
    validate(p);
    d.check(op);
    for (double k : k0L_grid)
        if (!(k >= 0) || !std::isfinite(k)) throw DomainError(op, "k0L values must be >= 0");

    std::vector<CollectiveParams> coll(k0L_grid.size());
    if (mode == Mode::Markov) {
        for (std::size_t n = 0; n < k0L_grid.size(); ++n) {
            SystemParams q = p;
            q.k0L = k0L_grid[n];
            coll[n] = markov_collective(q);
        }
    } else {
        const auto trace = poles::poles_on_grid(k0L_grid, p);
        for (std::size_t n = 0; n < k0L_grid.size(); ++n) {
            CollectiveParams& c = coll[n];
            c.omega0 = p.omega0;
            c.omega_S = trace[n].S.omega.real();
            c.omega_A = trace[n].A.omega.real();
            c.gamma_S = trace[n].S.gamma_eff;
            c.gamma_A = trace[n].A.gamma_eff;
            c.source = Mode::Renormalized;
        }
    }

    const Eigen::Vector4cd S = ket_S(), A = ket_A();
    std::vector<ScanPoint> out(k0L_grid.size());
    parallel_for(k0L_grid.size(), [&](std::size_t n) {
        const CollectiveParams& c = coll[n];
        const DensityMatrix4 rho = steady_state(build_liouvillian(c, d));
        out[n] = {k0L_grid[n],
                  concurrence(rho),
                  c.gamma_S,
                  c.gamma_A,
                  c.omega_S - c.omega0,
                  c.omega_A - c.omega0,
                  (S.adjoint() * rho * S)(0).real(),
                  (A.adjoint() * rho * A)(0).real()};
    });
    return out;
}

double excitation_probability(double delta, double gamma_y, double Omega) {
    if (!(Omega > 0) || !std::isfinite(Omega))
        throw DomainError("excitation_probability", "Omega must be > 0");
    if (!(gamma_y >= 0) || !std::isfinite(gamma_y) || !std::isfinite(delta))
        throw DomainError("excitation_probability", "need finite delta and gamma_y >= 0");
    const double a = delta / Omega, b = gamma_y / (2.0 * Omega);
    return 1.0 / (2.0 + a * a + b * b);
}

double weak_drive_ratio(double delta_y, double gamma_y, double delta_ref, double gamma_ref) {
    const double num = delta_ref * delta_ref + 0.25 * gamma_ref * gamma_ref;
    const double den = delta_y * delta_y + 0.25 * gamma_y * gamma_y;
    if (!(den > 0)) throw DomainError("weak_drive_ratio", "pole at the drive frequency");
    return num / den;
}

}  // namespace wqed::master_eq
