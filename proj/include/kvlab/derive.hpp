// Re-derivation of the one-step matrices from the element weak forms.
//
// This is the oracle against which the closed forms in elements.hpp and the
// published transcriptions in printed.hpp are checked. It shares nothing
// with either: the element equations are assembled from shape-function
// integrals (inner products for the Hamiltonian-boundary-term family,
// convolutions and semi-derivative convolutions for the convolved-action
// family), the midpoint unknowns are condensed out, and the surviving rows
// are arranged into (A1, A0, B).
//
// Integration runs either degree-exact (polynomial integration, valid in any
// ring including Rational) or through 3-point Gauss-Legendre quadrature
// (double only; exact to roundoff for the degree <= 4 integrands here).
#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "kvlab/elements.hpp"
#include "kvlab/poly.hpp"
#include "kvlab/rational.hpp"

namespace kvlab {

enum class IntegrationMode { PolyExact, GaussLegendre3 };

namespace derive_detail {

// Columns of one element equation: nodal unknowns/data it is linear in.
enum Col : int { U0 = 0, U1, UC, J0c, J1c, JCc, P0, P1, F0, F1, JH, NCOLS };

template <class T>
using Form = std::array<T, NCOLS>;

template <class T>
Form<T> zero_form() {
    Form<T> f;
    f.fill(T(0));
    return f;
}

template <class T>
T integrate_product(const Poly<T>& p, const Poly<T>& q, const T& h, IntegrationMode mode) {
    if (mode == IntegrationMode::PolyExact) return (p * q).integral(h);
    if constexpr (std::is_same_v<T, double>) {
        // 3-point Gauss-Legendre on [0, h]; exact through degree 5
        static const double xi[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
        static const double wi[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            double t = 0.5 * h * (1.0 + xi[k]);
            acc += wi[k] * p.eval(t) * q.eval(t);
        }
        return 0.5 * h * acc;
    } else {
        throw std::logic_error("quadrature integration requires double precision");
    }
}

template <class T>
T integrate_convolution(const Poly<T>& p, const Poly<T>& q, const T& h, IntegrationMode mode) {
    if (mode == IntegrationMode::PolyExact) return conv_at(p, q, h);
    if constexpr (std::is_same_v<T, double>) {
        static const double xi[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
        static const double wi[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            double t = 0.5 * h * (1.0 + xi[k]);
            acc += wi[k] * p.eval(t) * q.eval(h - t);
        }
        return 0.5 * h * acc;
    } else {
        throw std::logic_error("quadrature integration requires double precision");
    }
}

// Solves `eq == 0` for the unknown in column `col`; the result expresses that
// unknown as a linear form over the remaining columns.
template <class T>
Form<T> solve_for(const Form<T>& eq, int col, const T& m, const T& a, const T& h) {
    if (scalar_is_zero(eq[col]))
        throw std::domain_error("derivation: singular condensation pivot at (m=" +
                                std::to_string(scalar_to_double(m)) +
                                ", a=" + std::to_string(scalar_to_double(a)) +
                                ", h=" + std::to_string(scalar_to_double(h)) + ")");
    Form<T> expr = zero_form<T>();
    for (int i = 0; i < NCOLS; ++i) {
        if (i == col) continue;
        expr[i] = -eq[i] / eq[col];
    }
    return expr;
}

template <class T>
void substitute(Form<T>& eq, int col, const Form<T>& expr) {
    T w = eq[col];
    if (scalar_is_zero(w)) return;
    eq[col] = T(0);
    for (int i = 0; i < NCOLS; ++i) eq[i] += w * expr[i];
}

template <class T>
StepMatricesT<T> pack_rows(bool ehp, const std::array<Form<T>, 3>& rows, int nrows) {
    StepMatricesT<T> out;
    out.dim = nrows;
    out.A1 = Mat<T>(nrows, nrows);
    out.A0 = Mat<T>(nrows, nrows);
    out.B = Mat<T>(nrows, 3);
    for (int r = 0; r < nrows; ++r) {
        const Form<T>& f = rows[r];
        // the condensation must have removed both midpoint unknowns; under
        // quadrature the cancellation holds to roundoff of the row scale
        if constexpr (std::is_floating_point_v<T>) {
            T scale(0);
            for (const auto& v : f) scale = std::max(scale, std::abs(v));
            if (std::abs(f[UC]) > 1e-12 * scale || std::abs(f[JCc]) > 1e-12 * scale)
                throw std::logic_error("derivation: a midpoint unknown survived condensation");
        } else {
            if (!scalar_is_zero(f[UC]) || !scalar_is_zero(f[JCc]))
                throw std::logic_error("derivation: a midpoint unknown survived condensation");
        }
        if (ehp) {
            out.A1(r, 0) = f[U1];
            out.A1(r, 1) = f[P1];
            out.A1(r, 2) = f[J1c];
            out.A0(r, 0) = -f[U0];
            out.A0(r, 1) = -f[P0];
            out.A0(r, 2) = -f[J0c];
        } else {
            out.A1(r, 0) = f[U1];
            out.A1(r, 1) = f[J1c];
            out.A0(r, 0) = -f[U0];
            out.A0(r, 1) = -f[J0c];
        }
        out.B(r, 0) = -f[F0];
        out.B(r, 1) = -f[F1];
        out.B(r, 2) = -f[JH];
    }
    return out;
}

// Assembled element equations, one linear form per test function.
template <class T>
struct ElementEquations {
    std::vector<Form<T>> u_tests;  // one per u test function (node order 0, 1 [, c])
    std::vector<Form<T>> j_tests;  // one per J test function
    bool u_quadratic = false;
    bool j_quadratic = false;
};

template <class T>
ElementEquations<T> assemble_ehp_equations(AlgorithmId alg, const T& m, const T& c, const T& a,
                                           const T& h, IntegrationMode mode) {
    const bool uq = (alg == AlgorithmId::EhpUquad || alg == AlgorithmId::EhpUJquad);
    const bool jq = (alg == AlgorithmId::EhpJquad || alg == AlgorithmId::EhpUJquad);
    PolyBasis<T> ub = uq ? quadratic_basis<T>(h) : linear_basis<T>(h);
    PolyBasis<T> jb = jq ? quadratic_basis<T>(h) : linear_basis<T>(h);
    PolyBasis<T> fb = linear_basis<T>(h);

    ElementEquations<T> sys;
    sys.u_quadratic = uq;
    sys.j_quadratic = jq;
    const int ucol[3] = {U0, U1, UC};
    const int jcol[3] = {J0c, J1c, JCc};

    for (std::size_t i = 0; i < ub.f.size(); ++i) {
        Form<T> eq = zero_form<T>();
        for (std::size_t j = 0; j < ub.f.size(); ++j)
            eq[ucol[j]] += -m * integrate_product(ub.df[i], ub.df[j], h, mode) +
                           c * integrate_product(ub.f[i], ub.df[j], h, mode);
        for (std::size_t j = 0; j < jb.f.size(); ++j)
            eq[jcol[j]] += integrate_product(ub.f[i], jb.df[j], h, mode);
        for (std::size_t j = 0; j < fb.f.size(); ++j)
            eq[j == 0 ? F0 : F1] += -integrate_product(ub.f[i], fb.f[j], h, mode);
        if (i == 0) eq[P0] = T(-1);
        if (i == 1) eq[P1] = T(1);
        sys.u_tests.push_back(eq);
    }
    for (std::size_t i = 0; i < jb.f.size(); ++i) {
        Form<T> eq = zero_form<T>();
        for (std::size_t j = 0; j < jb.f.size(); ++j)
            eq[jcol[j]] += -a * integrate_product(jb.df[i], jb.df[j], h, mode);
        for (std::size_t j = 0; j < ub.f.size(); ++j)
            eq[ucol[j]] += integrate_product(jb.df[i], ub.f[j], h, mode);
        sys.j_tests.push_back(eq);
    }
    return sys;
}

template <class T>
ElementEquations<T> assemble_mcap_equations(AlgorithmId alg, const T& m, const T& c, const T& a,
                                            const T& h, IntegrationMode mode) {
    const bool uq = (alg == AlgorithmId::McapUquad || alg == AlgorithmId::McapUJquad);
    const bool jq = (alg == AlgorithmId::McapJquad || alg == AlgorithmId::McapUJquad);
    PolyBasis<T> ub = uq ? quadratic_basis<T>(h) : linear_basis<T>(h);
    PolyBasis<T> jb = jq ? quadratic_basis<T>(h) : linear_basis<T>(h);
    PolyBasis<T> fb = linear_basis<T>(h);

    ElementEquations<T> sys;
    sys.u_quadratic = uq;
    sys.j_quadratic = jq;
    const int ucol[3] = {U0, U1, UC};
    const int jcol[3] = {J0c, J1c, JCc};

    for (std::size_t i = 0; i < ub.f.size(); ++i) {
        Form<T> eq = zero_form<T>();
        for (std::size_t j = 0; j < ub.f.size(); ++j)
            eq[ucol[j]] += m * integrate_convolution(ub.df[i], ub.df[j], h, mode) +
                           c * semiconv_at(ub.f[i], ub.f[j], h);
        for (std::size_t j = 0; j < jb.f.size(); ++j)
            eq[jcol[j]] += semiconv_at(ub.f[i], jb.f[j], h);
        for (std::size_t j = 0; j < fb.f.size(); ++j)
            eq[j == 0 ? F0 : F1] += -integrate_convolution(ub.f[i], fb.f[j], h, mode);
        if (i == 1) eq[JH] = T(-1);  // -delta_u(h) * jhat_{n-1}
        sys.u_tests.push_back(eq);
    }
    for (std::size_t i = 0; i < jb.f.size(); ++i) {
        Form<T> eq = zero_form<T>();
        for (std::size_t j = 0; j < jb.f.size(); ++j)
            eq[jcol[j]] += -a * integrate_convolution(jb.df[i], jb.df[j], h, mode);
        for (std::size_t j = 0; j < ub.f.size(); ++j)
            eq[ucol[j]] += semiconv_at(jb.f[i], ub.f[j], h);
        sys.j_tests.push_back(eq);
    }
    return sys;
}

template <class T>
Form<T> form_sum(const Form<T>& a, const Form<T>& b) {
    Form<T> r = a;
    for (int i = 0; i < NCOLS; ++i) r[i] += b[i];
    return r;
}

template <class T>
Form<T> form_diff(const Form<T>& a, const Form<T>& b) {
    Form<T> r = a;
    for (int i = 0; i < NCOLS; ++i) r[i] -= b[i];
    return r;
}

template <class T>
bool form_is_zero(const Form<T>& f) {
    for (const auto& v : f)
        if (!scalar_is_zero(v)) return false;
    return true;
}

// EHP only: the J test functions sum to one, so the corresponding test
// equations sum to zero and one of them is discarded as dependent.
template <class T>
bool ehp_discarded_row_identity_holds(const ElementEquations<T>& sys) {
    Form<T> s = form_sum(sys.j_tests[0], sys.j_tests[1]);
    if (sys.j_quadratic) s = form_sum(s, sys.j_tests[2]);
    return form_is_zero(s);
}

// MCAP analogue: summing the J-test equations leaves only the end-point
// evaluation of u, because the semi-derivative convolution of a partition of
// unity against any f reproduces f(h) while the integer-order block cancels.
template <class T>
bool mcap_jtest_sum_is_u_at_h(const ElementEquations<T>& sys) {
    Form<T> s = form_sum(sys.j_tests[0], sys.j_tests[1]);
    if (sys.j_quadratic) s = form_sum(s, sys.j_tests[2]);
    Form<T> expect = zero_form<T>();
    expect[U1] = T(1);
    return form_is_zero(form_diff(s, expect));
}

}  // namespace derive_detail

template <class T>
StepMatricesT<T> derive_ehp_matrices_t(AlgorithmId alg, const T& m, const T& c, const T& a,
                                       const T& h,
                                       IntegrationMode mode = IntegrationMode::PolyExact) {
    using namespace derive_detail;
    if (!is_ehp(alg)) throw std::invalid_argument("derive_ehp_matrices: not an EHP variant");
    auto sys = assemble_ehp_equations<T>(alg, m, c, a, h, mode);

    std::array<Form<T>, 3> rows;
    if (alg == AlgorithmId::EhpJquad) {
        // midpoint impulse condensed from the symmetric combination of the
        // two node J-test equations; third row is their difference
        Form<T> jc_src = form_sum(sys.j_tests[0], sys.j_tests[1]);
        Form<T> jc = solve_for(jc_src, JCc, m, a, h);
        rows[0] = sys.u_tests[0];
        rows[1] = sys.u_tests[1];
        substitute(rows[0], JCc, jc);
        substitute(rows[1], JCc, jc);
        rows[2] = form_diff(sys.j_tests[1], sys.j_tests[0]);
    } else if (alg == AlgorithmId::EhpUquad) {
        // midpoint displacement condensed from the J-test equation
        Form<T> uc = solve_for(sys.j_tests[0], UC, m, a, h);
        rows[0] = sys.u_tests[0];
        rows[1] = sys.u_tests[1];
        rows[2] = sys.u_tests[2];
        for (auto& r : rows) substitute(r, UC, uc);
    } else {
        Form<T> jc = solve_for(form_sum(sys.j_tests[0], sys.j_tests[1]), JCc, m, a, h);
        Form<T> uc = solve_for(form_diff(sys.j_tests[1], sys.j_tests[0]), UC, m, a, h);
        rows[0] = sys.u_tests[0];
        rows[1] = sys.u_tests[1];
        rows[2] = sys.u_tests[2];
        for (auto& r : rows) {
            substitute(r, JCc, jc);
            substitute(r, UC, uc);
        }
    }
    return pack_rows(true, rows, 3);
}

template <class T>
StepMatricesT<T> derive_mcap_matrices_t(AlgorithmId alg, const T& m, const T& c, const T& a,
                                        const T& h,
                                        IntegrationMode mode = IntegrationMode::PolyExact) {
    using namespace derive_detail;
    if (!is_mcap(alg)) throw std::invalid_argument("derive_mcap_matrices: not an MCAP variant");
    auto sys = assemble_mcap_equations<T>(alg, m, c, a, h, mode);

    std::array<Form<T>, 3> rows;
    if (alg == AlgorithmId::McapJquad) {
        Form<T> jc = solve_for(sys.j_tests[2], JCc, m, a, h);
        rows[0] = sys.u_tests[1];
        rows[1] = sys.j_tests[1];
        substitute(rows[0], JCc, jc);
        substitute(rows[1], JCc, jc);
    } else if (alg == AlgorithmId::McapUquad) {
        Form<T> uc = solve_for(sys.j_tests[1], UC, m, a, h);
        rows[0] = sys.u_tests[1];
        rows[1] = sys.u_tests[2];
        substitute(rows[0], UC, uc);
        substitute(rows[1], UC, uc);
    } else {
        // the midpoint-test equations are free of each other's midpoint
        // unknown, so the two substitutions commute
        Form<T> jc = solve_for(sys.j_tests[2], JCc, m, a, h);
        Form<T> uc = solve_for(sys.u_tests[2], UC, m, a, h);
        rows[0] = sys.u_tests[1];
        rows[1] = sys.j_tests[1];
        for (int r = 0; r < 2; ++r) {
            substitute(rows[r], JCc, jc);
            substitute(rows[r], UC, uc);
        }
    }
    return pack_rows(false, rows, 2);
}

// Double-precision convenience wrappers. `exact` selects degree-exact
// polynomial integration instead of quadrature; for bitwise-exact rational
// derivation call the _t<Rational> form with rational inputs.
inline StepMatrices derive_ehp_matrices(AlgorithmId alg, const OscillatorParams& p, double h,
                                        bool exact = true) {
    return derive_ehp_matrices_t<double>(
        alg, p.m, p.c, p.a, h,
        exact ? IntegrationMode::PolyExact : IntegrationMode::GaussLegendre3);
}

inline StepMatrices derive_mcap_matrices(AlgorithmId alg, const OscillatorParams& p, double h,
                                         bool exact = true) {
    return derive_mcap_matrices_t<double>(
        alg, p.m, p.c, p.a, h,
        exact ? IntegrationMode::PolyExact : IntegrationMode::GaussLegendre3);
}

inline StepMatrices derive_step_matrices(AlgorithmId alg, const OscillatorParams& p, double h,
                                         bool exact = true) {
    return is_ehp(alg) ? derive_ehp_matrices(alg, p, h, exact)
                       : derive_mcap_matrices(alg, p, h, exact);
}

}  // namespace kvlab
