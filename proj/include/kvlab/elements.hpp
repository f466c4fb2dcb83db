// One-step matrices for the eight algorithms.
//
// The six mixed-formalism algorithms advance either the state (u, p, J)
// (Hamiltonian-boundary-term family, "Ehp*") or (u, J) (convolved-action
// family, "Mcap*"); the two Newmark references advance (u, v, acc).
// Every algorithm is expressed as  A1 x_n = A0 x_{n-1} + B (f_{n-1}, f_n,
// jhat_{n-1})^T.  The closed forms below are the ones produced by the
// weak-form derivation in derive.hpp; where published transcriptions differ
// from the derivation, the derivation wins (see validate.hpp).
#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "kvlab/model.hpp"
#include "kvlab/smallmat.hpp"

namespace kvlab {

enum class AlgorithmId {
    EhpJquad,
    EhpUquad,
    EhpUJquad,
    McapJquad,
    McapUquad,
    McapUJquad,
    NewmarkCAA,
    NewmarkLinear,
};

const std::array<AlgorithmId, 8>& all_algorithms();
// the six mixed-variable algorithms (everything but the Newmark references)
const std::array<AlgorithmId, 6>& mixed_algorithms();

std::string algorithm_name(AlgorithmId alg);
// Throws std::invalid_argument listing the valid names.
AlgorithmId parse_algorithm(const std::string& name);

bool is_ehp(AlgorithmId alg);
bool is_mcap(AlgorithmId alg);
bool is_newmark(AlgorithmId alg);
int state_dim(AlgorithmId alg);  // Ehp/Newmark: 3, Mcap: 2

// X = 12ma - h^2, Y = 24ma + h^2, Z = 6ma + h^2.  X controls the oscillatory
// regime of the Jquad/Uquad eigenvalue pair; Z shows up as the condensation
// denominator (det A1 is a multiple of 2Z + 6cha for the Jquad systems).
// The identity -Y + 4X = Y - 6h^2 underlies time reversibility.
template <class T>
struct StepConstantsT {
    T X, Y, Z;
    static StepConstantsT make(const T& m, const T& a, const T& h) {
        T ma = m * a, h2 = h * h;
        return {T(12) * ma - h2, T(24) * ma + h2, T(6) * ma + h2};
    }
};
using StepConstants = StepConstantsT<double>;

template <class T>
struct StepMatricesT {
    int dim = 0;
    Mat<T> A1, A0;
    Mat<T> B;  // dim x 3, columns couple (f_{n-1}, f_n, jhat_{n-1})
};
using StepMatrices = StepMatricesT<double>;

// Closed-form matrices in any coefficient ring (double or Rational).
template <class T>
StepMatricesT<T> build_step_matrices_t(AlgorithmId alg, const T& m, const T& c, const T& a,
                                       const T& h);

StepMatrices build_step_matrices(AlgorithmId alg, const OscillatorParams& p, double h);

// Same matrices with a signed step, for time-reversal analysis.
StepMatrices step_matrices_signed(AlgorithmId alg, const OscillatorParams& p, double h);

// ---------------------------------------------------------------------------

template <class T>
StepMatricesT<T> build_step_matrices_t(AlgorithmId alg, const T& m, const T& c, const T& a,
                                       const T& h) {
    // negative h is meaningful here (time reversal); only h = 0 is degenerate
    if (scalar_is_zero(h))
        throw std::invalid_argument("build_step_matrices: h must be nonzero");
    const auto sc = StepConstantsT<T>::make(m, a, h);
    const T X = sc.X, Y = sc.Y;
    const T h2 = h * h;
    const T cha = c * h * a;

    StepMatricesT<T> out;
    switch (alg) {
        case AlgorithmId::EhpJquad: {
            out.dim = 3;
            out.A1 = Mat<T>(3, 3);
            out.A0 = Mat<T>(3, 3);
            out.B = Mat<T>(3, 3);
            T alpha = (X + T(6) * cha) / (T(12) * h * a);
            T beta = (-X + T(6) * cha) / (T(12) * h * a);
            out.A1(0, 0) = alpha;
            out.A1(0, 2) = T(1) / T(2);
            out.A1(1, 0) = beta;
            out.A1(1, 1) = T(1);
            out.A1(1, 2) = T(1) / T(2);
            out.A1(2, 0) = T(1);
            out.A1(2, 2) = T(-2) * a / h;
            out.A0(0, 0) = alpha;
            out.A0(0, 1) = T(1);
            out.A0(0, 2) = T(1) / T(2);
            out.A0(1, 0) = beta;
            out.A0(1, 2) = T(1) / T(2);
            out.A0(2, 0) = T(-1);
            out.A0(2, 2) = T(-2) * a / h;
            out.B(0, 0) = h / T(3);
            out.B(0, 1) = h / T(6);
            out.B(1, 0) = h / T(6);
            out.B(1, 1) = h / T(3);
            break;
        }
        case AlgorithmId::EhpUquad: {
            out.dim = 3;
            out.A1 = Mat<T>(3, 3);
            out.A0 = Mat<T>(3, 3);
            out.B = Mat<T>(3, 3);
            T jp = (Y + T(6) * cha) / (T(6) * h2);  // J coupling, first row
            T jm = (Y - T(6) * cha) / (T(6) * h2);  // J coupling, second row
            out.A1(0, 0) = -(T(3) * m + c * h) / (T(3) * h);
            out.A1(0, 2) = jp;
            out.A1(1, 0) = (T(-9) * m + T(2) * c * h) / (T(3) * h);
            out.A1(1, 1) = T(1);
            out.A1(1, 2) = jm;
            out.A1(2, 0) = T(2) * (T(6) * m + c * h) / (T(3) * h);
            out.A1(2, 2) = T(-2) * X / (T(3) * h2);
            out.A0(0, 0) = (T(9) * m + T(2) * c * h) / (T(3) * h);
            out.A0(0, 1) = T(1);
            out.A0(0, 2) = jp;
            out.A0(1, 0) = (T(3) * m - c * h) / (T(3) * h);
            out.A0(1, 2) = jm;
            out.A0(2, 0) = T(2) * (T(-6) * m + c * h) / (T(3) * h);
            out.A0(2, 2) = T(-2) * X / (T(3) * h2);
            out.B(0, 0) = h / T(6);
            out.B(1, 1) = h / T(6);
            out.B(2, 0) = h / T(3);
            out.B(2, 1) = h / T(3);
            break;
        }
        case AlgorithmId::EhpUJquad: {
            out.dim = 3;
            out.A1 = Mat<T>(3, 3);
            out.A0 = Mat<T>(3, 3);
            out.B = Mat<T>(3, 3);
            T ma12 = T(12) * m * a;
            T jp = (Y + T(6) * cha) / (T(6) * h2);
            T jm = (Y - T(6) * cha) / (T(6) * h2);
            out.A1(0, 0) = -(ma12 + T(4) * cha + h2) / (T(12) * h * a);
            out.A1(0, 2) = jp;
            out.A1(1, 0) = (T(-3) * ma12 + T(8) * cha + h2) / (T(12) * h * a);
            out.A1(1, 1) = T(1);
            out.A1(1, 2) = jm;
            out.A1(2, 0) = T(2) * (T(6) * m + c * h) / (T(3) * h);
            out.A1(2, 2) = T(-2) * X / (T(3) * h2);
            out.A0(0, 0) = (T(3) * ma12 + T(8) * cha - h2) / (T(12) * h * a);
            out.A0(0, 1) = T(1);
            out.A0(0, 2) = jp;
            out.A0(1, 0) = (ma12 - T(4) * cha + h2) / (T(12) * h * a);
            out.A0(1, 2) = jm;
            out.A0(2, 0) = T(2) * (T(-6) * m + c * h) / (T(3) * h);
            out.A0(2, 2) = T(-2) * X / (T(3) * h2);
            out.B(0, 0) = h / T(6);
            out.B(1, 1) = h / T(6);
            out.B(2, 0) = h / T(3);
            out.B(2, 1) = h / T(3);
            break;
        }
        case AlgorithmId::McapJquad: {
            out.dim = 2;
            out.A1 = Mat<T>(2, 2);
            out.A0 = Mat<T>(2, 2);
            out.B = Mat<T>(2, 3);
            out.A1(0, 0) = (X + T(6) * cha) / (T(12) * h * a);
            out.A1(0, 1) = T(1) / T(2);
            out.A1(1, 0) = T(1) / T(2);
            out.A1(1, 1) = -a / h;
            out.A0(0, 0) = (X - T(6) * cha) / (T(12) * h * a);
            out.A0(0, 1) = T(-1) / T(2);
            out.A0(1, 0) = T(-1) / T(2);
            out.A0(1, 1) = -a / h;
            out.B(0, 0) = h / T(3);
            out.B(0, 1) = h / T(6);
            out.B(0, 2) = T(1);
            break;
        }
        case AlgorithmId::McapUquad: {
            out.dim = 2;
            out.A1 = Mat<T>(2, 2);
            out.A0 = Mat<T>(2, 2);
            out.B = Mat<T>(2, 3);
            out.A1(0, 0) = -(T(3) * m + c * h) / (T(3) * h);
            out.A1(0, 1) = (Y + T(6) * cha) / (T(6) * h2);
            out.A1(1, 0) = T(2) * (T(6) * m + c * h) / (T(3) * h);
            out.A1(1, 1) = T(-2) * X / (T(3) * h2);
            out.A0(0, 0) = (T(9) * m - c * h) / (T(3) * h);
            out.A0(0, 1) = (Y - T(6) * h2 + T(6) * cha) / (T(6) * h2);
            out.A0(1, 0) = T(2) * (T(-6) * m + c * h) / (T(3) * h);
            out.A0(1, 1) = T(-2) * X / (T(3) * h2);
            out.B(0, 0) = h / T(6);
            out.B(0, 2) = T(1);
            out.B(1, 0) = h / T(3);
            out.B(1, 1) = h / T(3);
            break;
        }
        case AlgorithmId::McapUJquad: {
            out.dim = 2;
            out.A1 = Mat<T>(2, 2);
            out.A0 = Mat<T>(2, 2);
            out.B = Mat<T>(2, 3);
            T ham = h * a * m;
            T off1 = (T(6) * m + c * h) / (T(12) * m);
            T off0 = (T(-6) * m + c * h) / (T(12) * m);
            out.A1(0, 0) = (m * X + T(6) * cha * m + c * c * h2 * a) / (T(12) * ham);
            out.A1(0, 1) = off1;
            out.A1(1, 0) = off1;
            out.A1(1, 1) = -X / (T(12) * h * m);
            out.A0(0, 0) = (m * X - T(6) * cha * m + c * c * h2 * a) / (T(12) * ham);
            out.A0(0, 1) = off0;
            out.A0(1, 0) = off0;
            out.A0(1, 1) = -X / (T(12) * h * m);
            out.B(0, 0) = h / T(3) + c * h2 / (T(24) * m);
            out.B(0, 1) = h / T(6) + c * h2 / (T(24) * m);
            out.B(0, 2) = T(1);
            out.B(1, 0) = h2 / (T(24) * m);
            out.B(1, 1) = h2 / (T(24) * m);
            break;
        }
        case AlgorithmId::NewmarkCAA:
        case AlgorithmId::NewmarkLinear: {
            // gamma = 1/2; beta = 1/4 (constant average) or 1/6 (linear)
            T beta = (alg == AlgorithmId::NewmarkCAA) ? T(1) / T(4) : T(1) / T(6);
            T gamma = T(1) / T(2);
            out.dim = 3;
            out.A1 = Mat<T>(3, 3);
            out.A0 = Mat<T>(3, 3);
            out.B = Mat<T>(3, 3);
            out.A1(0, 0) = T(1);
            out.A1(0, 2) = -beta * h2;
            out.A1(1, 1) = T(1);
            out.A1(1, 2) = -gamma * h;
            out.A1(2, 0) = T(1) / a;
            out.A1(2, 1) = c;
            out.A1(2, 2) = m;
            out.A0(0, 0) = T(1);
            out.A0(0, 1) = h;
            out.A0(0, 2) = (T(1) / T(2) - beta) * h2;
            out.A0(1, 1) = T(1);
            out.A0(1, 2) = (T(1) - gamma) * h;
            out.B(2, 1) = T(1);
            break;
        }
    }
    return out;
}

}  // namespace kvlab
