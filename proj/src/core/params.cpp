#include "core/params.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace wqed {

SystemParams validate(const SystemParams& p) {
    auto bad = [](const std::string& msg) { throw DomainError("validate", msg); };
    if (!std::isfinite(p.omega0) || !std::isfinite(p.gamma) || !std::isfinite(p.gamma_prime) ||
        !std::isfinite(p.k0L) || !std::isfinite(p.c))
        bad("all parameters must be finite");
    if (!(p.gamma > 0)) bad("gamma > 0 required (e1, e2 contain sqrt(2/gamma))");
    if (p.gamma_prime < 0) bad("gamma_prime >= 0 required (negative loss rate)");
    if (!(p.omega0 > 0)) bad("omega0 > 0 required");
    if (p.k0L < 0) bad("k0L >= 0 required");
    if (p.c != 1.0) bad("c must equal 1 (internal unit of velocity)");
    return p;
}

std::string to_string(Channel ch) {
    return ch == Channel::Transmitted ? "transmitted" : "reflected";
}

void QuadratureSettings::check(const std::string& op) const {
    if (!(tol > 0) || !(window > 0) || max_refine < 0 || max_evals <= 0)
        throw DomainError(op, "quadrature settings must be positive");
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace wqed
