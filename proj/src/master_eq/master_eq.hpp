#pragma once

#include <vector>

#include <Eigen/Dense>

#include "core/params.hpp"

namespace wqed::master_eq {

// Basis {|g1 g2>, |g1 e2>, |e1 g2>, |e1 e2>}.
using DensityMatrix4 = Eigen::Matrix4cd;
// Column-stacked superoperator: vec(d rho / dt) = L vec(rho).
using Liouvillian = Eigen::Matrix<cplx, 16, 16>;

enum class Mode { Markov, Renormalized };

// Frequencies are absolute; the frame rotates at the drive frequency
// omega0 + drive.detuning.
struct CollectiveParams {
    double omega0 = 100.0;
    double omega_S = 100.0, omega_A = 100.0;
    double gamma_S = 1.0, gamma_A = 1.0;
    Mode source = Mode::Markov;

    void check(const char* op) const;
};

CollectiveParams markov_collective(const SystemParams& p);

struct DriveParams {
    double Omega1 = 0.1;
    double Omega2 = 0.0;
    double detuning = 0.0;  // drive frequency minus omega0

    void check(const char* op) const;
};

// Lindblad form with collective jump operators sigma_S, sigma_A, built in the
// {g, S, A, e} basis and rotated to the site basis.
Liouvillian build_liouvillian(const CollectiveParams& c, const DriveParams& d);

// Same generator written with site operators, Gamma_ij and Omega_12.
Liouvillian build_liouvillian_site(const CollectiveParams& c, const DriveParams& d);

// Kernel of L normalised to unit trace. DegenerateKernelError unless the
// kernel is one-dimensional; NumericalError if the residual exceeds 1e-10.
DensityMatrix4 steady_state(const Liouvillian& L);

enum class Integrator { MatrixExponential, RungeKutta };

struct Trajectory {
    std::vector<double> t;
    std::vector<DensityMatrix4> rho;
};

// rho(t) on t_grid (non-negative, any order). Every output is checked:
// ToleranceError if the smallest eigenvalue drops below -1e-8.
Trajectory evolve(const DensityMatrix4& rho0, const Liouvillian& L, const std::vector<double>& t_grid,
                  Integrator method = Integrator::MatrixExponential);

// Throws DomainError unless rho is Hermitian and has unit trace within tol and
// no eigenvalue below -tol_pos.
void check_density_matrix(const DensityMatrix4& rho, const char* op, double tol = 1e-12,
                          double tol_pos = 1e-10);

double min_eigenvalue(const DensityMatrix4& rho);

// Wootters concurrence.
double concurrence(const DensityMatrix4& rho);

// Projectors used by tests and the CLI.
DensityMatrix4 pure(const Eigen::Vector4cd& psi);
Eigen::Vector4cd ket_S();
Eigen::Vector4cd ket_A();

struct ScanPoint {
    double k0L;
    double C;
    double gamma_S, gamma_A;
    double delta_S, delta_A;  // omega_{S,A} - omega0
    double P_S, P_A;          // steady-state populations of |S>, |A>
};

// Steady-state concurrence on k0L_grid. Renormalized mode takes omega and
// Gamma of S and A from pole continuation.
std::vector<ScanPoint> concurrence_scan(const std::vector<double>& k0L_grid, const DriveParams& d,
                                        const SystemParams& p, Mode mode);

// Excited-state probability of a resonantly driven level with detuning delta,
// decay rate gamma_y and Rabi frequency Omega > 0.
double excitation_probability(double delta, double gamma_y, double Omega);

// lim Omega -> 0 of P_y / P_ref for poles given as (omega - omega0, decay rate).
double weak_drive_ratio(double delta_y, double gamma_y, double delta_ref, double gamma_ref);

}  // namespace wqed::master_eq
