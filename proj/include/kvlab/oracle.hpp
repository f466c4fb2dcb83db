// Ground-truth references and accuracy instrumentation: closed-form
// responses for the underdamped oscillator, a classical RK4 integrator of
// the first-order mixed system (u' = v, m v' = f - c v - u/a, a J' = u),
// error norms, and convergence-order estimation.
#pragma once

#include <cstddef>
#include <vector>

#include "kvlab/integrate.hpp"
#include "kvlab/model.hpp"

namespace kvlab {

struct ExactState {
    double u;
    double v;
};

// Free vibration of the underdamped oscillator (xi < 1).
ExactState exact_free_vibration(const OscillatorParams& p, const InitialConditions& ics,
                                double t);

// Response to f(t) = f0 sin(omega0 t) from rest (u(0) = v(0) = 0), xi < 1.
// Undamped exact resonance (c = 0, omega0 = omega_n) is rejected.
ExactState exact_sinusoidal_response(const OscillatorParams& p, double f0, double omega0,
                                     double t);

Trajectory rk4_reference(const OscillatorParams& p, const ForcingSpec& forcing,
                         const InitialConditions& ics, double h_ref, std::size_t n,
                         double jhat0 = 0.0);

struct ErrorNorms {
    double max_abs = 0.0;
    double max_rel = 0.0;  // max_abs / max |reference|
    double rms = 0.0;
};

// Nodal norms on u; both trajectories must share the grid.
ErrorNorms error_norms(const Trajectory& traj, const Trajectory& reference);
ErrorNorms error_norms_series(const std::vector<double>& x, const std::vector<double>& ref);

struct ConvergenceLevel {
    double h = 0.0;
    double err_final = 0.0;  // |u - u_exact| at the final node
    double err_max = 0.0;    // max-norm over nodes (authoritative)
    double order_final = 0.0;
    double order_max = 0.0;  // 0 until a previous level exists
    bool roundoff_limited = false;
};

// Error against the closed-form solution at h0, h0/2, ..., h0/2^(levels-1);
// orders from successive halvings. Levels whose relative error falls under
// 100*eps are flagged and excluded from order estimates.
std::vector<ConvergenceLevel> convergence_order(AlgorithmId alg, const OscillatorParams& p,
                                                const ForcingSpec& forcing,
                                                const InitialConditions& ics, double h0,
                                                int levels, double duration);

// 1/2 m v^2 + 1/2 u^2 / a.
double total_energy(const OscillatorParams& p, double u, double v);

}  // namespace kvlab
