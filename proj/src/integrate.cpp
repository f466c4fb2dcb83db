#include "kvlab/integrate.hpp"

#include <cmath>
#include <stdexcept>

#include "kvlab/csvio.hpp"
#include "kvlab/oracle.hpp"

namespace kvlab {

std::array<double, 3> initial_state(AlgorithmId alg, const OscillatorParams& p,
                                    const InitialConditions& ics, double jhat0, double f_at_0) {
    double J0 = dependent_initial_impulse(p, ics, jhat0);
    if (is_ehp(alg)) return {ics.u0, p.m * ics.v0, J0};
    if (is_mcap(alg)) return {ics.u0, J0, 0.0};
    double acc0 = (f_at_0 - p.c * ics.v0 - p.k() * ics.u0) / p.m;
    return {ics.u0, ics.v0, acc0};
}

double reconstruct_velocity(const OscillatorParams& p, double u, double J, double jhat) {
    return (jhat - J - p.c * u) / p.m;
}

StepOperator::StepOperator(AlgorithmId alg, const OscillatorParams& p, double h)
    : alg_(alg), h_(h), mats_(build_step_matrices(alg, p, h)) {
    factorize();
}

void StepOperator::factorize() {
    const int n = mats_.dim;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lu_[i * n + j] = mats_.A1(i, j);
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(lu_[i * n + k]) > std::abs(lu_[p * n + k])) p = i;
        piv_[k] = p;
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(lu_[k * n + j], lu_[p * n + j]);
        if (lu_[k * n + k] == 0.0)
            throw std::domain_error("step matrices singular for " + algorithm_name(alg_) +
                                    " at h=" + std::to_string(h_));
        for (int i = k + 1; i < n; ++i) {
            lu_[i * n + k] /= lu_[k * n + k];
            for (int j = k + 1; j < n; ++j) lu_[i * n + j] -= lu_[i * n + k] * lu_[k * n + j];
        }
    }
}

void StepOperator::solve_inplace(double* rhs) const {
    const int n = mats_.dim;
    for (int k = 0; k < n; ++k)
        if (piv_[k] != k) std::swap(rhs[k], rhs[piv_[k]]);
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) rhs[i] -= lu_[i * n + j] * rhs[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) rhs[i] -= lu_[i * n + j] * rhs[j];
        rhs[i] /= lu_[i * n + i];
    }
}

void StepOperator::step(const double* x, double f0, double f1, double jhat0,
                        double* x_next) const {
    const int n = mats_.dim;
    double rhs[3], sol[3], res[3];
    for (int i = 0; i < n; ++i) {
        long double s = 0.0L;
        for (int j = 0; j < n; ++j) s += static_cast<long double>(mats_.A0(i, j)) * x[j];
        s += static_cast<long double>(mats_.B(i, 0)) * f0 +
             static_cast<long double>(mats_.B(i, 1)) * f1 +
             static_cast<long double>(mats_.B(i, 2)) * jhat0;
        rhs[i] = static_cast<double>(s);
    }
    for (int i = 0; i < n; ++i) sol[i] = rhs[i];
    solve_inplace(sol);
    // one iterative-refinement pass with an extended-precision residual
    for (int i = 0; i < n; ++i) {
        long double r = rhs[i];
        for (int j = 0; j < n; ++j) r -= static_cast<long double>(mats_.A1(i, j)) * sol[j];
        res[i] = static_cast<double>(r);
    }
    solve_inplace(res);
    for (int i = 0; i < n; ++i) x_next[i] = sol[i] + res[i];
}

Trajectory simulate(AlgorithmId alg, const OscillatorParams& p, const ForcingSpec& forcing,
                    const InitialConditions& ics, double h, std::size_t n_steps, double jhat0) {
    if (!(h > 0.0)) throw std::invalid_argument("simulate: h must be positive");
    SampledForce force = sample_forcing(forcing, p, h, n_steps, jhat0);
    StepOperator op(alg, p, h);

    Trajectory traj;
    traj.alg = alg;
    traj.h = h;
    traj.t.resize(n_steps + 1);
    traj.u.resize(n_steps + 1);
    traj.v.resize(n_steps + 1);
    traj.J.resize(n_steps + 1);
    traj.jhat = force.jhat;
    traj.energy.resize(n_steps + 1);

    std::array<double, 3> x = initial_state(alg, p, ics, jhat0, force.f[0]);
    std::array<double, 3> xn{};
    for (std::size_t k = 0; k <= n_steps; ++k) {
        traj.t[k] = static_cast<double>(k) * h;
        double u = x[0], v = 0.0, J = 0.0;
        if (is_ehp(alg)) {
            v = x[1] / p.m;
            J = x[2];
        } else if (is_mcap(alg)) {
            J = x[1];
            v = reconstruct_velocity(p, u, J, force.jhat[k]);
        } else {
            v = x[1];
            J = force.jhat[k] - p.m * v - p.c * u;
        }
        traj.u[k] = u;
        traj.v[k] = v;
        traj.J[k] = J;
        traj.energy[k] = total_energy(p, u, v);
        if (k < n_steps) {
            op.step(x.data(), force.f[k], force.f[k + 1], force.jhat[k], xn.data());
            x = xn;
        }
    }
    return traj;
}

MidpointValues recover_midpoints(AlgorithmId alg, const OscillatorParams& p, double h,
                                 const std::array<double, 3>& x0,
                                 const std::array<double, 3>& x1) {
    MidpointValues mv;
    if (is_newmark(alg)) return mv;
    double u0 = x0[0], u1 = x1[0];
    double J0 = is_ehp(alg) ? x0[2] : x0[1];
    double J1 = is_ehp(alg) ? x1[2] : x1[1];
    bool u_quad = alg == AlgorithmId::EhpUquad || alg == AlgorithmId::EhpUJquad ||
                  alg == AlgorithmId::McapUquad || alg == AlgorithmId::McapUJquad;
    bool j_quad = alg == AlgorithmId::EhpJquad || alg == AlgorithmId::EhpUJquad ||
                  alg == AlgorithmId::McapJquad || alg == AlgorithmId::McapUJquad;
    if (j_quad) mv.J_c = 0.5 * (J0 + J1) + h / (8.0 * p.a) * (u0 - u1);
    if (u_quad) mv.u_c = 1.5 * p.a / h * (J1 - J0) - 0.25 * (u0 + u1);
    return mv;
}

void write_trajectory_csv(std::ostream& os, const OscillatorParams& p, const Trajectory& traj,
                          bool midpoints) {
    os << "t,u,v,J,jhat,energy";
    if (midpoints) os << ",u_c,J_c";
    os << "\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        os << fmt17(traj.t[k]) << ',' << fmt17(traj.u[k]) << ',' << fmt17(traj.v[k]) << ','
           << fmt17(traj.J[k]) << ',' << fmt17(traj.jhat[k]) << ',' << fmt17(traj.energy[k]);
        if (midpoints) {
            if (k + 1 < traj.size()) {
                std::array<double, 3> x0{traj.u[k], 0.0, traj.J[k]};
                std::array<double, 3> x1{traj.u[k + 1], 0.0, traj.J[k + 1]};
                if (is_mcap(traj.alg)) {
                    x0 = {traj.u[k], traj.J[k], 0.0};
                    x1 = {traj.u[k + 1], traj.J[k + 1], 0.0};
                }
                MidpointValues mv = recover_midpoints(traj.alg, p, traj.h, x0, x1);
                os << ',' << (mv.u_c ? fmt17(*mv.u_c) : std::string()) << ','
                   << (mv.J_c ? fmt17(*mv.J_c) : std::string());
            } else {
                os << ",,";
            }
        }
        os << "\n";
    }
}

}  // namespace kvlab
