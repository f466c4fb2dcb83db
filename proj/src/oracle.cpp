#include "kvlab/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace kvlab {

ExactState exact_free_vibration(const OscillatorParams& p, const InitialConditions& ics,
                                double t) {
    double xi = p.xi();
    if (!(xi < 1.0))
        throw std::invalid_argument("exact_free_vibration: requires an underdamped system");
    double wn = p.omega_n();
    double wd = wn * std::sqrt(1.0 - xi * xi);
    double e = std::exp(-xi * wn * t);
    double cs = std::cos(wd * t), sn = std::sin(wd * t);
    double B = (ics.v0 + xi * wn * ics.u0) / wd;
    double u = e * (ics.u0 * cs + B * sn);
    double v = e * ((ics.v0) * cs - (ics.u0 * wd + xi * wn * B) * sn);
    return {u, v};
}

ExactState exact_sinusoidal_response(const OscillatorParams& p, double f0, double omega0,
                                     double t) {
    double xi = p.xi();
    if (!(xi < 1.0))
        throw std::invalid_argument("exact_sinusoidal_response: requires an underdamped system");
    double wn = p.omega_n();
    if (p.c == 0.0 && omega0 == wn)
        throw std::invalid_argument("exact_sinusoidal_response: undamped exact resonance");
    double k = p.k();
    double dk = k - p.m * omega0 * omega0;
    double cw = p.c * omega0;
    double den = dk * dk + cw * cw;
    double C = f0 * dk / den;   // sin coefficient of the particular solution
    double D = -f0 * cw / den;  // cos coefficient
    double wd = wn * std::sqrt(1.0 - xi * xi);
    // homogeneous constants enforcing u(0) = 0, v(0) = 0:
    // udot(0) = C w0 - xi wn A + wd B = 0
    double A = -D;
    double B = (xi * wn * A - C * omega0) / wd;
    double e = std::exp(-xi * wn * t);
    double cs = std::cos(wd * t), sn = std::sin(wd * t);
    double cs0 = std::cos(omega0 * t), sn0 = std::sin(omega0 * t);
    double u = C * sn0 + D * cs0 + e * (A * cs + B * sn);
    double v = C * omega0 * cs0 - D * omega0 * sn0 +
               e * ((B * wd - xi * wn * A) * cs - (A * wd + xi * wn * B) * sn);
    return {u, v};
}

Trajectory rk4_reference(const OscillatorParams& p, const ForcingSpec& forcing,
                         const InitialConditions& ics, double h_ref, std::size_t n,
                         double jhat0) {
    if (!(h_ref > 0.0)) throw std::invalid_argument("rk4_reference: h must be positive");
    Trajectory traj;
    traj.alg = AlgorithmId::NewmarkCAA;  // tag unused; reference data
    traj.h = h_ref;
    traj.t.resize(n + 1);
    traj.u.resize(n + 1);
    traj.v.resize(n + 1);
    traj.J.resize(n + 1);
    traj.energy.resize(n + 1);

    auto fval = [&](double t) { return forcing_value(forcing, p, t); };
    double u = ics.u0, v = ics.v0;
    double J = dependent_initial_impulse(p, ics, jhat0);
    auto du = [&](double vv) { return vv; };
    auto dv = [&](double t, double uu, double vv) {
        return (fval(t) - p.c * vv - uu / p.a) / p.m;
    };
    auto dJ = [&](double uu) { return uu / p.a; };

    std::vector<double> fnodes(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        double t = static_cast<double>(k) * h_ref;
        traj.t[k] = t;
        traj.u[k] = u;
        traj.v[k] = v;
        traj.J[k] = J;
        traj.energy[k] = total_energy(p, u, v);
        fnodes[k] = fval(t);
        if (k == n) break;
        double k1u = du(v), k1v = dv(t, u, v), k1J = dJ(u);
        double th = t + 0.5 * h_ref;
        double k2u = du(v + 0.5 * h_ref * k1v), k2v = dv(th, u + 0.5 * h_ref * k1u, v + 0.5 * h_ref * k1v),
               k2J = dJ(u + 0.5 * h_ref * k1u);
        double k3u = du(v + 0.5 * h_ref * k2v), k3v = dv(th, u + 0.5 * h_ref * k2u, v + 0.5 * h_ref * k2v),
               k3J = dJ(u + 0.5 * h_ref * k2u);
        double te = t + h_ref;
        double k4u = du(v + h_ref * k3v), k4v = dv(te, u + h_ref * k3u, v + h_ref * k3v),
               k4J = dJ(u + h_ref * k3u);
        u += h_ref / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        v += h_ref / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        J += h_ref / 6.0 * (k1J + 2 * k2J + 2 * k3J + k4J);
    }
    traj.jhat = accumulate_impulse(fnodes, h_ref, jhat0);
    return traj;
}

ErrorNorms error_norms_series(const std::vector<double>& x, const std::vector<double>& ref) {
    if (x.size() != ref.size())
        throw std::invalid_argument("error_norms: series lengths differ");
    ErrorNorms en;
    double ref_max = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = std::abs(x[i] - ref[i]);
        en.max_abs = std::max(en.max_abs, d);
        ref_max = std::max(ref_max, std::abs(ref[i]));
        sq += d * d;
    }
    en.rms = x.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(x.size()));
    en.max_rel = ref_max > 0.0 ? en.max_abs / ref_max : en.max_abs;
    return en;
}

ErrorNorms error_norms(const Trajectory& traj, const Trajectory& reference) {
    if (traj.size() != reference.size() || traj.h != reference.h)
        throw std::invalid_argument("error_norms: trajectories are on different grids");
    return error_norms_series(traj.u, reference.u);
}

namespace {

// closed-form u on the trajectory grid; throws if no closed form applies
std::vector<double> closed_form_u(const OscillatorParams& p, const ForcingSpec& forcing,
                                  const InitialConditions& ics, double h, std::size_t n) {
    std::vector<double> u(n + 1);
    if (std::holds_alternative<ZeroForcing>(forcing)) {
        for (std::size_t k = 0; k <= n; ++k)
            u[k] = exact_free_vibration(p, ics, static_cast<double>(k) * h).u;
        return u;
    }
    if (const auto* s = std::get_if<SinusoidForcing>(&forcing)) {
        if (ics.u0 != 0.0 || ics.v0 != 0.0)
            throw std::invalid_argument("closed form for sinusoid requires rest initial state");
        for (std::size_t k = 0; k <= n; ++k)
            u[k] = exact_sinusoidal_response(p, s->f0, s->omega0, static_cast<double>(k) * h).u;
        return u;
    }
    throw std::invalid_argument("no closed-form reference for tabulated forcing");
}

}  // namespace

std::vector<ConvergenceLevel> convergence_order(AlgorithmId alg, const OscillatorParams& p,
                                                const ForcingSpec& forcing,
                                                const InitialConditions& ics, double h0,
                                                int levels, double duration) {
    if (levels < 3) throw std::invalid_argument("convergence_order: need at least 3 levels");
    std::vector<ConvergenceLevel> out;
    double scale = 0.0;
    for (int lev = 0; lev < levels; ++lev) {
        double h = h0 / std::pow(2.0, lev);
        auto n = static_cast<std::size_t>(std::llround(duration / h));
        Trajectory traj = simulate(alg, p, forcing, ics, h, n);
        std::vector<double> uref = closed_form_u(p, forcing, ics, h, n);
        ConvergenceLevel cl;
        cl.h = h;
        cl.err_final = std::abs(traj.u.back() - uref.back());
        cl.err_max = error_norms_series(traj.u, uref).max_abs;
        for (double uu : uref) scale = std::max(scale, std::abs(uu));
        double floor = 100.0 * 2.220446049250313e-16 * std::max(scale, 1.0);
        cl.roundoff_limited = cl.err_max < floor;
        if (lev > 0 && !cl.roundoff_limited && !out.back().roundoff_limited) {
            cl.order_final = std::log2(out.back().err_final / cl.err_final);
            cl.order_max = std::log2(out.back().err_max / cl.err_max);
        }
        out.push_back(cl);
    }
    return out;
}

double total_energy(const OscillatorParams& p, double u, double v) {
    return 0.5 * p.m * v * v + 0.5 * u * u / p.a;
}

}  // namespace kvlab
