// Transcriptions of the published one-step matrices, entry for entry as
// typeset in the source tables, including their typographical defects.
// These are regression anchors only: build_step_matrices() carries the
// derivation-backed forms, and validate.hpp itemizes every difference.
//
// Two sets exist per mixed-formalism algorithm:
//   - "published-damped":        the general damped one-step systems
//   - "published-conservative":  the c = 0 tables (A_left / A_right, no load)
#pragma once

#include <optional>

#include "kvlab/elements.hpp"

namespace kvlab {

template <class T>
std::optional<StepMatricesT<T>> published_damped_matrices_t(AlgorithmId alg, const T& m,
                                                            const T& c, const T& a, const T& h) {
    const auto sc = StepConstantsT<T>::make(m, a, h);
    const T X = sc.X, Y = sc.Y;
    const T h2 = h * h;
    const T cha = c * h * a;
    StepMatricesT<T> out = build_step_matrices_t<T>(alg, m, c, a, h);
    switch (alg) {
        case AlgorithmId::EhpJquad:
        case AlgorithmId::McapJquad:
        case AlgorithmId::McapUJquad:
            // published forms agree with the derivation
            return out;
        case AlgorithmId::EhpUquad:
            // momentum column typeset as -m, and a load entry typeset h/6
            out.A1(1, 1) = -m;
            out.A0(0, 1) = -m;
            out.B(2, 1) = h / T(6);
            return out;
        case AlgorithmId::EhpUJquad:
            out.B(2, 1) = h / T(6);
            return out;
        case AlgorithmId::McapUquad:
            out.A1(0, 0) = (T(3) * m + c * h) / (T(3) * h);
            out.A0(0, 0) = (T(9) * m + T(2) * c * h) / (T(3) * h);
            return out;
        default:
            return std::nullopt;  // Newmark references are not published forms
    }
    (void)X;
    (void)Y;
    (void)h2;
    (void)cha;
}

// Conservative-system tables (c = 0). Only A_left/A_right are published;
// B is returned zeroed.
template <class T>
std::optional<StepMatricesT<T>> published_conservative_matrices_t(AlgorithmId alg, const T& m,
                                                                  const T& a, const T& h) {
    if (is_newmark(alg)) return std::nullopt;
    const auto sc = StepConstantsT<T>::make(m, a, h);
    const T X = sc.X, Y = sc.Y;
    const T h2 = h * h;
    StepMatricesT<T> out;
    out.dim = state_dim(alg);
    out.A1 = Mat<T>(out.dim, out.dim);
    out.A0 = Mat<T>(out.dim, out.dim);
    out.B = Mat<T>(out.dim, 3);
    switch (alg) {
        case AlgorithmId::EhpJquad: {
            T alpha = X / (T(12) * h * a);
            out.A1(0, 0) = alpha;
            out.A1(0, 2) = T(1) / T(2);
            out.A1(1, 0) = -alpha;
            out.A1(1, 1) = T(1);
            out.A1(1, 2) = T(1) / T(2);
            out.A1(2, 0) = T(1);
            out.A1(2, 2) = T(-2) * a / h;
            out.A0(0, 0) = alpha;
            out.A0(0, 1) = T(1);
            out.A0(0, 2) = T(1) / T(2);
            out.A0(1, 0) = -alpha;
            out.A0(1, 2) = T(1) / T(2);
            out.A0(2, 0) = T(-1);
            out.A0(2, 2) = T(-2) * a / h;
            break;
        }
        case AlgorithmId::EhpUquad: {
            T yj = Y / (T(6) * h2);
            out.A1(0, 0) = -m / h;
            out.A1(0, 2) = yj;
            out.A1(1, 0) = T(-3) * m / h;
            out.A1(1, 1) = -m;  // typeset -m; derivation gives +1
            out.A1(1, 2) = yj;
            out.A1(2, 0) = T(4) * m / h;
            out.A1(2, 2) = T(-2) * X / (T(3) * h2);
            out.A0(0, 0) = T(3) * m / h;
            out.A0(0, 1) = -m;  // typeset -m; derivation gives +1
            out.A0(0, 2) = yj;
            out.A0(1, 0) = m / h;
            out.A0(1, 2) = yj;
            out.A0(2, 0) = T(-4) * m / h;
            out.A0(2, 2) = T(-2) * X / (T(3) * h2);
            break;
        }
        case AlgorithmId::EhpUJquad: {
            T yj = Y / (T(6) * h2);
            T ma12 = T(12) * m * a;
            out.A1(0, 0) = (ma12 + h2) / (T(12) * h * a);  // typeset +; derivation gives -
            out.A1(0, 2) = yj;
            out.A1(1, 0) = (T(-3) * ma12 + h2) / (T(12) * h * a);
            out.A1(1, 1) = T(1);
            out.A1(1, 2) = yj;
            out.A1(2, 0) = T(4) * m / h;
            out.A1(2, 2) = T(-2) * X / (T(3) * h2);
            out.A0(0, 0) = (T(3) * ma12 - h2) / (T(12) * h * a);
            out.A0(0, 1) = T(1);
            out.A0(0, 2) = yj;
            out.A0(1, 0) = (ma12 + h2) / (T(12) * h * a);
            out.A0(1, 2) = yj;
            out.A0(2, 0) = T(-4) * m / h;
            out.A0(2, 2) = T(-2) * X / (T(3) * h2);
            break;
        }
        case AlgorithmId::McapJquad: {
            T alpha = X / (T(12) * h * a);
            out.A1(0, 0) = alpha;
            out.A1(0, 1) = T(1) / T(2);
            out.A1(1, 0) = T(1) / T(2);
            out.A1(1, 1) = -a / h;
            out.A0(0, 0) = alpha;
            out.A0(0, 1) = T(-1) / T(2);
            out.A0(1, 0) = T(-1) / T(2);
            out.A0(1, 1) = -a / h;
            break;
        }
        case AlgorithmId::McapUquad: {
            out.A1(0, 0) = -m / h;
            out.A1(0, 1) = Y / (T(6) * h2);
            out.A1(1, 0) = T(4) * m / h;
            out.A1(1, 1) = T(-2) * X / (T(3) * h2);
            out.A0(0, 0) = T(3) * m / h;
            out.A0(0, 1) = (Y - T(6) * h2) / (T(6) * h2);
            out.A0(1, 0) = T(-4) * m / h;
            out.A0(1, 1) = T(-2) * X / (T(3) * h2);
            break;
        }
        case AlgorithmId::McapUJquad: {
            T alpha = X / (T(12) * h * a);
            out.A1(0, 0) = alpha;
            out.A1(0, 1) = T(1) / T(2);
            out.A1(1, 0) = T(1) / T(2);
            out.A1(1, 1) = -X / (T(12) * h * m);
            out.A0(0, 0) = alpha;
            out.A0(0, 1) = T(-1) / T(2);
            out.A0(1, 0) = T(-1) / T(2);
            out.A0(1, 1) = -X / (T(12) * h * m);
            break;
        }
        default:
            return std::nullopt;
    }
    return out;
}

}  // namespace kvlab
