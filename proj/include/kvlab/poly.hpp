// Polynomials in one variable with exact or floating coefficients, plus the
// temporal shape-function bases on [0, h] and their convolution products.
//
// Two products of basis functions are needed by the element assemblies:
//   - the ordinary convolution evaluated at h:   (f * g)(h) = int_0^h f(s) g(h-s) ds
//   - the convolution of semi-derivatives at h, reduced termwise on monomials by
//         (D^1/2 t^p * D^1/2 t^q)(t) = p! q! / (p+q)!  t^{p+q}.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kvlab/smallmat.hpp"

namespace kvlab {

template <class T>
class Poly {
public:
    Poly() : c_{T(0)} {}
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(T(0));
    }
    static Poly constant(T v) { return Poly(std::vector<T>{v}); }

    std::size_t degree() const { return c_.size() - 1; }
    const T& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<T>& coeffs() const { return c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const T& s, const Poly& a) {
        Poly r = a;
        for (auto& v : r.c_) v = s * v;
        return r;
    }

    Poly derivative() const {
        if (c_.size() == 1) return Poly();
        std::vector<T> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = T(static_cast<long long>(i)) * c_[i];
        return Poly(std::move(c));
    }

    T eval(const T& x) const {
        T acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // int_0^h p(t) dt, exact in the coefficient ring.
    T integral(const T& h) const {
        T acc(0);
        T hp = h;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            acc += c_[i] * hp / T(static_cast<long long>(i + 1));
            hp = hp * h;
        }
        return acc;
    }

    // p(h - t) expanded as a polynomial in t.
    Poly reflected(const T& h) const {
        std::vector<T> c(c_.size(), T(0));
        // accumulate c_[k] * (h - t)^k by running binomial expansion
        std::vector<T> pow{T(1)};  // (h - t)^0
        for (std::size_t k = 0; k < c_.size(); ++k) {
            for (std::size_t i = 0; i < pow.size(); ++i) c[i] += c_[k] * pow[i];
            if (k + 1 < c_.size()) {
                std::vector<T> next(pow.size() + 1, T(0));
                for (std::size_t i = 0; i < pow.size(); ++i) {
                    next[i] += h * pow[i];
                    next[i + 1] -= pow[i];
                }
                pow = std::move(next);
            }
        }
        return Poly(std::move(c));
    }

private:
    std::vector<T> c_;
};

template <class T>
T factorial_as(unsigned n) {
    T r(1);
    for (unsigned i = 2; i <= n; ++i) r *= T(static_cast<long long>(i));
    return r;
}

// Convolution of the semi-derivatives of t^p and t^q, evaluated at t:
// Gamma(1+p) Gamma(1+q) / Gamma(1+p+q) * t^{p+q}.  The gamma function is only
// needed at non-negative integers, so it reduces to factorials.
template <class T>
T semiconv_monomials(unsigned p, unsigned q, const T& t) {
    T w = factorial_as<T>(p) * factorial_as<T>(q) / factorial_as<T>(p + q);
    T tp(1);
    for (unsigned i = 0; i < p + q; ++i) tp *= t;
    return w * tp;
}

// (f~ * g~)(h): termwise application of the monomial rule.
template <class T>
T semiconv_at(const Poly<T>& f, const Poly<T>& g, const T& h) {
    T acc(0);
    for (std::size_t p = 0; p < f.coeffs().size(); ++p)
        for (std::size_t q = 0; q < g.coeffs().size(); ++q) {
            if (scalar_is_zero(f[p]) || scalar_is_zero(g[q])) continue;
            acc += f[p] * g[q] *
                   semiconv_monomials<T>(static_cast<unsigned>(p), static_cast<unsigned>(q), h);
        }
    return acc;
}

// (f * g)(h) by exact polynomial integration.
template <class T>
T conv_at(const Poly<T>& f, const Poly<T>& g, const T& h) {
    return (f * g.reflected(h)).integral(h);
}

// Nodal shape functions on [0, h] together with their time derivatives.
// Linear: value at the left node, value at the right node.
// Quadratic: left node, right node, interval midpoint.
template <class T>
struct PolyBasis {
    std::vector<Poly<T>> f;
    std::vector<Poly<T>> df;
};

template <class T>
PolyBasis<T> linear_basis(const T& h) {
    PolyBasis<T> b;
    b.f.push_back(Poly<T>({T(1), T(-1) / h}));  // 1 - t/h
    b.f.push_back(Poly<T>({T(0), T(1) / h}));   // t/h
    for (const auto& p : b.f) b.df.push_back(p.derivative());
    return b;
}

template <class T>
PolyBasis<T> quadratic_basis(const T& h) {
    PolyBasis<T> b;
    T h2 = h * h;
    b.f.push_back(Poly<T>({T(1), T(-3) / h, T(2) / h2}));
    b.f.push_back(Poly<T>({T(0), T(-1) / h, T(2) / h2}));
    b.f.push_back(Poly<T>({T(0), T(4) / h, T(-4) / h2}));
    for (const auto& p : b.f) b.df.push_back(p.derivative());
    return b;
}

// Matrix of semi-derivative convolutions (row~_i * col~_j)(h).
template <class T>
Mat<T> semiconv_basis_matrix(const std::vector<Poly<T>>& rows, const std::vector<Poly<T>>& cols,
                             const T& h) {
    Mat<T> m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = semiconv_at(rows[i], cols[j], h);
    return m;
}

}  // namespace kvlab
