// Kelvin-Voigt oscillator description: parameters, initial conditions,
// forcing, and the grid-sampled force/impulse series consumed by the
// one-step integrators.
#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace kvlab {

// Mass m, viscous damping c, flexibility a = 1/k. All derived quantities
// (stiffness, natural frequency/period, damping ratio) come from these three.
struct OscillatorParams {
    double m = 1.0;
    double c = 0.0;
    double a = 1.0;

    OscillatorParams() = default;
    OscillatorParams(double mass, double damping, double flexibility);

    // Builds the system from (m, Tn, xi) instead of (m, c, a).
    static OscillatorParams from_period(double mass, double natural_period, double damping_ratio);

    double k() const { return 1.0 / a; }
    double omega_n() const;
    double Tn() const;
    double xi() const;
};

struct DerivedProperties {
    double k;
    double omega_n;
    double Tn;
    double xi;
};

DerivedProperties derived_properties(const OscillatorParams& p);

struct InitialConditions {
    double u0 = 0.0;
    double v0 = 0.0;
};

// J(0) implied by the balance m*v0 + c*u0 + J0 - jhat0 = 0.
double dependent_initial_impulse(const OscillatorParams& p, const InitialConditions& ics,
                                 double jhat0 = 0.0);

enum class RecordKind { AppliedForce, GroundAcceleration };

struct ZeroForcing {};

struct SinusoidForcing {
    double f0 = 0.0;
    double omega0 = 0.0;
};

struct TabulatedForcing {
    std::vector<double> times;   // strictly increasing
    std::vector<double> values;  // same length as times
    RecordKind kind = RecordKind::AppliedForce;
    double scale = 1.0;
};

using ForcingSpec = std::variant<ZeroForcing, SinusoidForcing, TabulatedForcing>;

// Applied force evaluated at an arbitrary time. Tabulated records interpolate
// linearly and reject times past their coverage.
double forcing_value(const ForcingSpec& spec, const OscillatorParams& p, double t);

// Nodal force values f(t_n) and the running impulse jhat(t_n) on the grid
// t_n = n*h. jhat accumulates by the trapezoid rule, consistent with the
// piecewise-linear force interpolation inside each step.
struct SampledForce {
    double h = 0.0;
    std::vector<double> f;
    std::vector<double> jhat;
    double jhat0 = 0.0;
};

std::vector<double> accumulate_impulse(const std::vector<double>& f, double h, double jhat0 = 0.0);

SampledForce sample_forcing(const ForcingSpec& spec, const OscillatorParams& p, double h,
                            std::size_t n_steps, double jhat0 = 0.0);

}  // namespace kvlab
