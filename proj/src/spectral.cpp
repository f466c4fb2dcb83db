#include "kvlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kvlab/csvio.hpp"

namespace kvlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// canonical undamped system used for scale-free dispersion quantities
OscillatorParams unit_system() { return OscillatorParams(1.0, 0.0, 1.0); }

// det(A0 - lambda A1) expanded as a polynomial in lambda: multilinear
// expansion over column choices, one determinant per subset.
std::vector<double> pencil_charpoly(const Mat<double>& A1, const Mat<double>& A0) {
    const std::size_t n = A1.rows();
    std::vector<double> coeff(n + 1, 0.0);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Mat<double> M(n, n);
        int k = 0;
        for (std::size_t j = 0; j < n; ++j) {
            bool from_a1 = mask & (1u << j);
            if (from_a1) ++k;
            for (std::size_t i = 0; i < n; ++i) M(i, j) = from_a1 ? -A1(i, j) : A0(i, j);
        }
        coeff[k] += M.det();
    }
    return coeff;  // det = sum coeff[k] * lambda^k
}

Complex polyval(const std::vector<double>& c, Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

Complex polyder(const std::vector<double>& c, Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 1;)
        acc = acc * z + static_cast<double>(i) * c[i];
    return acc;
}

void polish(const std::vector<double>& c, Complex& z) {
    for (int it = 0; it < 4; ++it) {
        Complex d = polyder(c, z);
        if (std::abs(d) == 0.0) return;
        Complex step = polyval(c, z) / d;
        z -= step;
        if (std::abs(step) < 1e-18 * std::max(1.0, std::abs(z))) break;
    }
}

std::vector<Complex> quadratic_roots(double c0, double c1, double c2) {
    // c2 z^2 + c1 z + c0
    double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc >= 0.0) {
        double sq = std::sqrt(disc);
        double q = -0.5 * (c1 + (c1 >= 0.0 ? sq : -sq));
        double r1 = q / c2;
        double r2 = (q != 0.0) ? c0 / q : -c1 / c2 - r1;
        return {Complex(r1, 0.0), Complex(r2, 0.0)};
    }
    double re = -c1 / (2.0 * c2);
    double im = std::sqrt(-disc) / (2.0 * c2);
    return {Complex(re, im), Complex(re, -im)};
}

std::vector<Complex> cubic_roots(const std::vector<double>& c) {
    // c[3] z^3 + c[2] z^2 + c[1] z + c[0]
    double a = c[2] / c[3], b = c[1] / c[3], d = c[0] / c[3];
    // depressed: t^3 + p t + q, z = t - a/3
    double p = b - a * a / 3.0;
    double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
    double shift = -a / 3.0;
    std::vector<Complex> roots;
    double disc = 0.25 * q * q + p * p * p / 27.0;
    if (disc <= 0.0) {
        // three real roots, trigonometric form
        double rho = std::sqrt(std::max(-p * p * p / 27.0, 0.0));
        double theta = (rho > 0.0) ? std::acos(std::clamp(-0.5 * q / rho, -1.0, 1.0)) : 0.0;
        double rad = 2.0 * std::sqrt(std::max(-p / 3.0, 0.0));
        for (int k = 0; k < 3; ++k)
            roots.emplace_back(shift + rad * std::cos((theta + kTwoPi * k) / 3.0), 0.0);
    } else {
        double sq = std::sqrt(disc);
        double uu = std::cbrt(-0.5 * q + sq);
        double vv = std::cbrt(-0.5 * q - sq);
        roots.emplace_back(shift + uu + vv, 0.0);
        Complex re(shift - 0.5 * (uu + vv), 0.5 * std::sqrt(3.0) * (uu - vv));
        roots.push_back(re);
        roots.push_back(std::conj(re));
    }
    return roots;
}

}  // namespace

std::vector<Complex> pencil_eigenvalues(const Mat<double>& A1, const Mat<double>& A0) {
    std::vector<double> c = pencil_charpoly(A1, A0);
    std::vector<Complex> roots;
    if (c.back() == 0.0) throw std::domain_error("pencil_eigenvalues: singular leading matrix");
    if (A1.rows() == 2) {
        roots = quadratic_roots(c[0], c[1], c[2]);
    } else if (A1.rows() == 3) {
        roots = cubic_roots(c);
    } else {
        throw std::invalid_argument("pencil_eigenvalues: dimension not supported");
    }
    for (auto& z : roots) polish(c, z);
    std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return roots;
}

Mat<double> amplification_matrix(AlgorithmId alg, const OscillatorParams& p, double h,
                                 bool damped) {
    OscillatorParams q = damped ? p : OscillatorParams(p.m, 0.0, p.a);
    StepMatrices sm = step_matrices_signed(alg, q, h);
    try {
        return sm.A1.solve(sm.A0);
    } catch (const std::domain_error&) {
        throw std::domain_error("amplification_matrix: left matrix singular for " +
                                algorithm_name(alg) + " at h=" + std::to_string(h));
    }
}

ClosedFormEigs closed_form_eigenvalues(AlgorithmId alg, double m, double a, double h) {
    if (is_newmark(alg))
        throw std::invalid_argument("closed_form_eigenvalues: no published formula for Newmark");
    ClosedFormEigs out;
    double ma = m * a, h2 = h * h;
    bool ujquad = (alg == AlgorithmId::EhpUJquad || alg == AlgorithmId::McapUJquad);
    if (ujquad) {
        double den = h2 * h2 + 12.0 * ma * h2 + 144.0 * ma * ma;
        double re = (h2 * h2 - 60.0 * ma * h2 + 144.0 * ma * ma) / den;
        double im = 12.0 * h * (12.0 * ma - h2) * std::sqrt(ma) / den;
        out.lambda = {Complex(re, im), Complex(re, -im)};
    } else {
        double den = 6.0 * ma + h2;
        double re = (6.0 * ma - 2.0 * h2) / den;
        double rad = 36.0 * h2 * ma - 3.0 * h2 * h2;
        if (rad >= 0.0) {
            out.lambda = {Complex(re, std::sqrt(rad) / den), Complex(re, -std::sqrt(rad) / den)};
        } else {
            // real-root continuation outside the complex-pair regime (X < 0)
            out.oscillatory = false;
            double s = std::sqrt(-rad) / den;
            out.lambda = {Complex(re + s, 0.0), Complex(re - s, 0.0)};
        }
    }
    if (is_ehp(alg)) out.lambda.insert(out.lambda.begin(), Complex(1.0, 0.0));
    return out;
}

PeriodElongation period_elongation(AlgorithmId alg, double h_over_Tn) {
    if (!(h_over_Tn > 0.0))
        throw std::invalid_argument("period_elongation: h/Tn must be positive");
    OscillatorParams p = unit_system();  // Tn = 2 pi
    double h = h_over_Tn * p.Tn();
    StepMatrices sm = build_step_matrices(alg, p, h);
    auto eigs = pencil_eigenvalues(sm.A1, sm.A0);
    const Complex* principal = nullptr;
    for (const auto& z : eigs)
        if (z.imag() > 0.0 && (!principal || std::abs(z) > std::abs(*principal))) principal = &z;
    if (!principal) throw std::domain_error("period_elongation: no oscillatory pair for " +
                                            algorithm_name(alg) +
                                            " at h/Tn=" + std::to_string(h_over_Tn));
    double omega_bar = std::atan2(principal->imag(), principal->real());
    double rho = std::abs(*principal);
    double T_num = kTwoPi * h / omega_bar;
    PeriodElongation out;
    out.pe = (T_num - p.Tn()) / p.Tn();
    out.ad = 1.0 - std::pow(rho, p.Tn() / h);
    return out;
}

double check_time_reversibility(AlgorithmId alg, const OscillatorParams& p, double h) {
    Mat<double> Af = amplification_matrix(alg, p, h, false);
    Mat<double> Ab = amplification_matrix(alg, p, -h, false);
    Mat<double> prod = Af * Ab;
    double resid = 0.0;
    for (std::size_t i = 0; i < prod.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < prod.cols(); ++j)
            row += std::abs(prod(i, j) - (i == j ? 1.0 : 0.0));
        resid = std::max(resid, row);
    }
    return resid;
}

SymplecticCheck check_symplectic(AlgorithmId alg, const OscillatorParams& p, double h) {
    OscillatorParams q(p.m, 0.0, p.a);
    StepMatrices sm = build_step_matrices(alg, q, h);
    auto eigs = pencil_eigenvalues(sm.A1, sm.A0);
    SymplecticCheck out;
    out.det_A = sm.A0.det() / sm.A1.det();
    out.max_eig_modulus_deviation = 0.0;
    out.oscillatory = false;
    for (const auto& z : eigs) {
        out.max_eig_modulus_deviation =
            std::max(out.max_eig_modulus_deviation, std::abs(std::abs(z) - 1.0));
        if (z.imag() > 0.0) out.oscillatory = true;
    }
    return out;
}

SpectralReport spectral_point(AlgorithmId alg, const OscillatorParams& p, double h_over_Tn,
                              bool damped) {
    SpectralReport r;
    r.alg = alg;
    r.h_over_Tn = h_over_Tn;
    r.damped = damped;
    double h = h_over_Tn * p.Tn();
    OscillatorParams q = damped ? p : OscillatorParams(p.m, 0.0, p.a);
    StepMatrices sm = build_step_matrices(alg, q, h);
    r.A = sm.A1.solve(sm.A0);
    r.eigenvalues = pencil_eigenvalues(sm.A1, sm.A0);
    r.rho = 0.0;
    const Complex* principal = nullptr;
    for (const auto& z : r.eigenvalues) {
        r.rho = std::max(r.rho, std::abs(z));
        if (z.imag() > 0.0 && (!principal || std::abs(z) > std::abs(*principal))) principal = &z;
    }
    r.oscillatory = principal != nullptr;
    if (principal) {
        double omega_bar = std::atan2(principal->imag(), principal->real());
        double T_num = kTwoPi * h / omega_bar;
        r.pe = (T_num - p.Tn()) / p.Tn();
        r.ad = 1.0 - std::pow(std::abs(*principal), p.Tn() / h);
    }
    r.det_A = sm.A0.det() / sm.A1.det();
    r.reversibility_residual = check_time_reversibility(alg, p, h);
    if (!damped && !is_newmark(alg)) {
        auto cf = closed_form_eigenvalues(alg, q.m, q.a, h);
        double worst = 0.0;
        for (const auto& z : r.eigenvalues) {
            double best = 1e300;
            for (const auto& w : cf.lambda) best = std::min(best, std::abs(z - w));
            worst = std::max(worst, best);
        }
        r.closed_form_mismatch = worst;
    }
    return r;
}

std::vector<SpectralReport> spectral_radius_sweep(const std::vector<AlgorithmId>& algs,
                                                  const OscillatorParams& p,
                                                  const std::vector<double>& grid, bool damped) {
    std::vector<SpectralReport> out;
    out.reserve(algs.size() * grid.size());
    for (AlgorithmId alg : algs)
        for (double x : grid) out.push_back(spectral_point(alg, p, x, damped));
    return out;
}

std::vector<double> default_sweep_grid() {
    std::vector<double> g;
    const int n = 60;
    for (int i = 0; i < n; ++i)
        g.push_back(std::pow(10.0, -2.0 + 3.0 * static_cast<double>(i) / (n - 1)));
    g.push_back(0.551);
    g.push_back(std::sqrt(12.0) / kTwoPi);
    std::sort(g.begin(), g.end());
    return g;
}

void write_spectral_csv(std::ostream& os, const std::vector<SpectralReport>& reports) {
    os << "# pe convention: (T_num - T_n)/T_n from the principal eigenvalue phase; "
          "ad = 1 - rho^(Tn/h)\n";
    os << "# reversibility_residual is computed on the undamped matrices at the same step\n";
    os << "alg,h_over_Tn,damped,rho,pe,ad,det,reversibility_residual,regime\n";
    for (const auto& r : reports) {
        os << algorithm_name(r.alg) << ',' << fmt17(r.h_over_Tn) << ',' << (r.damped ? 1 : 0)
           << ',' << fmt17(r.rho) << ',' << (r.pe ? fmt17(*r.pe) : std::string()) << ','
           << (r.ad ? fmt17(*r.ad) : std::string()) << ',' << fmt17(r.det_A) << ','
           << fmt17(r.reversibility_residual) << ','
           << (r.oscillatory ? "complex-pair" : "real-roots") << "\n";
    }
}

}  // namespace kvlab
