#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/params.hpp"

namespace wqed::poles {

// A complex root omega of F. Re omega is the transition frequency, the decay
// rate is -2 Im omega.
struct PoleRecord {
    cplx omega;
    double gamma_eff = 0.0;
    std::string label;   // "S", "A", "C1", "C2", ... or "C-1", ... below the S/A pair
    double k0L = 0.0;
    double residual = 0.0;  // |F(omega)|; 0 marks a closed-form value
    int multiplicity = 1;
};

// F(omega) = [omega - omega0 + i(Gamma + Gamma')/2]^2 + (Gamma^2/4) e^{2 i omega L / c}
cplx F(cplx omega, const SystemParams& p);
cplx dF(cplx omega, const SystemParams& p);

// Closed form with omega -> omega0 in the exponent:
// omega_{S,A} = omega0 +/- Omega12, Gamma_{S,A} = Gamma + Gamma' +/- Gamma12.
std::pair<PoleRecord, PoleRecord> markov_poles(const SystemParams& p);

struct ContinuationSettings {
    double step_k0L = 0.01 * kPi;
    double newton_tol = 1e-12;  // on |F|
    int max_iter = 50;
    double min_step = 1e-9;     // give up halving below this step

    void check(const std::string& op) const;
};

struct TracePoint {
    double k0L;
    PoleRecord S, A;
};

// Follow the S and A roots from their closed-form values at k0L = 0 up to
// k0L_target in steps of at most step_k0L, halving the step whenever Newton
// fails or a root jumps. Every step is returned.
std::vector<TracePoint> continue_poles(double k0L_target, const SystemParams& p,
                                       const ContinuationSettings& s = {});

// Same continuation, reporting only at the requested k0L values (any order;
// each is hit exactly). p.k0L is ignored.
std::vector<TracePoint> poles_on_grid(const std::vector<double>& k0L_grid,
                                      const SystemParams& p,
                                      const ContinuationSettings& s = {});

// Rectangle in the complex frequency plane (absolute frequencies).
struct Window {
    double re_min, re_max, im_min, im_max;
};

struct EnumerationSettings {
    double seed_spacing = 0.05;  // Newton seed grid; refined if the count is short
    int max_seed_refine = 3;
    double newton_tol = 1e-12;
    int max_iter = 60;
    double dedup = 1e-6;
    ContinuationSettings continuation;  // used to label S and A
};

struct Enumeration {
    std::vector<PoleRecord> poles;  // S, A first, then the C poles by increasing Re
    int winding = 0;                // argument-principle root count on the boundary
    // a collective pole lies within 0.5 Gamma of S or A, so keeping only the
    // two S/A modes is no longer justified
    bool two_pole_breakdown = false;
};

// All roots of F inside the window, verified against the winding number of F
// on the boundary. S and A are identified by continuation from k0L = 0.
Enumeration enumerate_poles(const Window& w, const SystemParams& p,
                            const EnumerationSettings& s = {});

// Winding number of F around the rectangle, sampled adaptively so that the
// argument changes by less than pi/2 between samples.
int winding_number(const Window& w, const SystemParams& p);

}  // namespace wqed::poles
