#pragma once

#include <complex>
#include <string>

namespace wqed {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

// Physical parameters of two identical qubits side-coupled to a waveguide.
// Internal units: gamma = c = 1. Frequencies are in units of gamma, the
// qubit separation enters only through the phase k0L = omega0 * L / c.
struct SystemParams {
    double omega0 = 100.0;
    double gamma = 1.0;
    double gamma_prime = 0.1;
    double k0L = 0.0;
    double c = 1.0;

    // physical separation in units of c / gamma
    double L() const { return k0L * c / omega0; }
};

// Throws DomainError naming the violated invariant, otherwise returns p.
SystemParams validate(const SystemParams& p);

enum class Channel { Transmitted, Reflected };
enum class Direction { FromLeft, FromRight };

std::string to_string(Channel ch);

// Settings of the adaptive momentum-space integrals.
struct QuadratureSettings {
    double tol = 1e-6;      // relative tolerance
    double window = 50.0;   // starting half width W of [omega0 - W, omega0 + W]
    int max_refine = 10;    // maximum number of window doublings
    long max_evals = 20'000'000;  // per adaptive integral

    void check(const std::string& op) const;
};

bool finite(cplx z);

}  // namespace wqed
