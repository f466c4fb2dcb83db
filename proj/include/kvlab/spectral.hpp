// Stability, dispersion, reversibility, and symplecticity analysis through
// the amplification matrix A = A1^{-1} A0 of each algorithm.
//
// Eigenvalues are roots of det(A0 - lambda A1), a quadratic or cubic solved
// in closed form and polished by complex Newton steps; no general
// eigensolver is involved.
#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kvlab/elements.hpp"
#include "kvlab/model.hpp"

namespace kvlab {

using Complex = std::complex<double>;

// A1^{-1} A0; undamped (`damped == false`) rebuilds the matrices with c = 0.
Mat<double> amplification_matrix(AlgorithmId alg, const OscillatorParams& p, double h,
                                 bool damped);

// Generalized eigenvalues of (A0, A1).
std::vector<Complex> pencil_eigenvalues(const Mat<double>& A1, const Mat<double>& A0);

struct ClosedFormEigs {
    std::vector<Complex> lambda;
    bool oscillatory = true;  // false once the Jquad/Uquad pair leaves the complex regime
};

// Published eigenvalue formulas for the six mixed-formalism algorithms
// (undamped). Outside the complex-pair regime of the Jquad/Uquad family the
// real-root continuation is returned with `oscillatory = false`.
ClosedFormEigs closed_form_eigenvalues(AlgorithmId alg, double m, double a, double h);

struct PeriodElongation {
    double pe;  // (T_num - T_n) / T_n from the principal-pair phase
    double ad;  // 1 - rho^(T_n/h), amplitude decay per natural period
};

// Dispersion of the undamped algorithm at h/Tn = x; throws when no complex
// conjugate pair exists at that step.
PeriodElongation period_elongation(AlgorithmId alg, double h_over_Tn);

// ||A(h) A(-h) - I||_inf for the undamped amplification matrix.
double check_time_reversibility(AlgorithmId alg, const OscillatorParams& p, double h);

struct SymplecticCheck {
    double det_A;
    double max_eig_modulus_deviation;
    bool oscillatory;
};

SymplecticCheck check_symplectic(AlgorithmId alg, const OscillatorParams& p, double h);

struct SpectralReport {
    AlgorithmId alg{};
    double h_over_Tn = 0.0;
    bool damped = false;
    Mat<double> A;
    std::vector<Complex> eigenvalues;
    double rho = 0.0;
    std::optional<double> pe;
    std::optional<double> ad;
    double reversibility_residual = 0.0;  // always for the undamped matrices
    double det_A = 0.0;
    bool oscillatory = false;
    double closed_form_mismatch = -1.0;  // max relative gap, -1 when no formula applies
};

SpectralReport spectral_point(AlgorithmId alg, const OscillatorParams& p, double h_over_Tn,
                              bool damped);

std::vector<SpectralReport> spectral_radius_sweep(const std::vector<AlgorithmId>& algs,
                                                  const OscillatorParams& p,
                                                  const std::vector<double>& h_over_Tn_grid,
                                                  bool damped);

// Log grid 0.01..10 (60 points) plus the stability-salient steps
// 0.551 and sqrt(12)/(2 pi).
std::vector<double> default_sweep_grid();

void write_spectral_csv(std::ostream& os, const std::vector<SpectralReport>& reports);

}  // namespace kvlab
