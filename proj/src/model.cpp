#include "kvlab/model.hpp"

#include <cmath>
#include <stdexcept>

#include "kvlab/ingest.hpp"

namespace kvlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

OscillatorParams::OscillatorParams(double mass, double damping, double flexibility)
    : m(mass), c(damping), a(flexibility) {
    if (!(m > 0.0)) throw std::invalid_argument("OscillatorParams: mass must be positive");
    if (!(a > 0.0)) throw std::invalid_argument("OscillatorParams: flexibility must be positive");
    if (!(c >= 0.0)) throw std::invalid_argument("OscillatorParams: damping must be non-negative");
}

OscillatorParams OscillatorParams::from_period(double mass, double natural_period,
                                               double damping_ratio) {
    if (!(natural_period > 0.0))
        throw std::invalid_argument("OscillatorParams: natural period must be positive");
    if (!(damping_ratio >= 0.0))
        throw std::invalid_argument("OscillatorParams: damping ratio must be non-negative");
    double wn = kTwoPi / natural_period;
    double flexibility = 1.0 / (mass * wn * wn);
    double damping = 2.0 * damping_ratio * mass * wn;
    return OscillatorParams(mass, damping, flexibility);
}

double OscillatorParams::omega_n() const { return 1.0 / std::sqrt(m * a); }
double OscillatorParams::Tn() const { return kTwoPi * std::sqrt(m * a); }
double OscillatorParams::xi() const { return 0.5 * c * std::sqrt(a / m); }

DerivedProperties derived_properties(const OscillatorParams& p) {
    if (!(p.m > 0.0) || !(p.a > 0.0))
        throw std::invalid_argument("derived_properties: m and a must be positive");
    return DerivedProperties{p.k(), p.omega_n(), p.Tn(), p.xi()};
}

double dependent_initial_impulse(const OscillatorParams& p, const InitialConditions& ics,
                                 double jhat0) {
    return jhat0 - p.m * ics.v0 - p.c * ics.u0;
}

double forcing_value(const ForcingSpec& spec, const OscillatorParams& p, double t) {
    if (std::holds_alternative<ZeroForcing>(spec)) return 0.0;
    if (const auto* s = std::get_if<SinusoidForcing>(&spec))
        return s->f0 * std::sin(s->omega0 * t);
    const auto& tab = std::get<TabulatedForcing>(spec);
    double v = interpolate_record(tab.times, tab.values, t);
    if (tab.kind == RecordKind::GroundAcceleration) return -p.m * tab.scale * v;
    return tab.scale * v;
}

std::vector<double> accumulate_impulse(const std::vector<double>& f, double h, double jhat0) {
    if (!(h > 0.0)) throw std::invalid_argument("accumulate_impulse: h must be positive");
    std::vector<double> jhat(f.size());
    if (f.empty()) return jhat;
    jhat[0] = jhat0;
    for (std::size_t n = 1; n < f.size(); ++n)
        jhat[n] = jhat[n - 1] + 0.5 * h * (f[n - 1] + f[n]);
    return jhat;
}

SampledForce sample_forcing(const ForcingSpec& spec, const OscillatorParams& p, double h,
                            std::size_t n_steps, double jhat0) {
    if (!(h > 0.0)) throw std::invalid_argument("sample_forcing: h must be positive");
    if (n_steps < 1) throw std::invalid_argument("sample_forcing: need at least one step");
    SampledForce out;
    out.h = h;
    out.jhat0 = jhat0;
    out.f.resize(n_steps + 1);
    if (const auto* tab = std::get_if<TabulatedForcing>(&spec)) {
        // resample once so coverage errors name the last covered time
        std::vector<double> raw = resample_to_grid(tab->times, tab->values, h, n_steps);
        double factor = (tab->kind == RecordKind::GroundAcceleration) ? -p.m * tab->scale
                                                                      : tab->scale;
        for (std::size_t n = 0; n <= n_steps; ++n) out.f[n] = factor * raw[n];
    } else {
        for (std::size_t n = 0; n <= n_steps; ++n)
            out.f[n] = forcing_value(spec, p, static_cast<double>(n) * h);
    }
    out.jhat = accumulate_impulse(out.f, h, jhat0);
    return out;
}

}  // namespace kvlab
