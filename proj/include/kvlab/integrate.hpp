// Time stepping: x_n solves A1 x_n = A0 x_{n-1} + B (f_{n-1}, f_n, jhat_{n-1}).
// A1 is factorized once per run; each step is one back-substitution.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "kvlab/elements.hpp"
#include "kvlab/model.hpp"

namespace kvlab {

// State layout per family:
//   Ehp*     -> (u, p, J) with p = m * du/dt
//   Mcap*    -> (u, J)
//   Newmark* -> (u, v, acc)
std::array<double, 3> initial_state(AlgorithmId alg, const OscillatorParams& p,
                                    const InitialConditions& ics, double jhat0 = 0.0,
                                    double f_at_0 = 0.0);

// v from the once-integrated momentum balance m v + c u + J - jhat = 0,
// valid at every node for all three families.
double reconstruct_velocity(const OscillatorParams& p, double u, double J, double jhat);

class StepOperator {
public:
    StepOperator(AlgorithmId alg, const OscillatorParams& p, double h);

    AlgorithmId algorithm() const { return alg_; }
    int dim() const { return mats_.dim; }
    const StepMatrices& matrices() const { return mats_; }

    // One step: x_next from x (length dim), end-node loads f0=f_{n-1}, f1=f_n,
    // and jhat0 = jhat_{n-1}.
    void step(const double* x, double f0, double f1, double jhat0, double* x_next) const;

private:
    AlgorithmId alg_;
    double h_;
    StepMatrices mats_;
    std::array<double, 9> lu_{};
    std::array<int, 3> piv_{};
    void factorize();
    void solve_inplace(double* rhs) const;
};

struct Trajectory {
    AlgorithmId alg{};
    double h = 0.0;
    std::vector<double> t, u, v, J, jhat, energy;
    std::size_t size() const { return t.size(); }
};

Trajectory simulate(AlgorithmId alg, const OscillatorParams& p, const ForcingSpec& forcing,
                    const InitialConditions& ics, double h, std::size_t n_steps,
                    double jhat0 = 0.0);

// Interval-midpoint values recovered from the condensation relations; only
// the fields the algorithm actually condenses are set.
struct MidpointValues {
    std::optional<double> u_c;
    std::optional<double> J_c;
};

MidpointValues recover_midpoints(AlgorithmId alg, const OscillatorParams& p, double h,
                                 const std::array<double, 3>& state_prev,
                                 const std::array<double, 3>& state_next);

// CSV columns t,u,v,J,jhat,energy at 17 significant digits; when `midpoints`
// is set, uc/Jc columns are appended (empty where undefined).
void write_trajectory_csv(std::ostream& os, const OscillatorParams& p, const Trajectory& traj,
                          bool midpoints = false);

}  // namespace kvlab
