// numerics.hpp - small dense complex linear algebra for three-level problems
//
// Fixed-size complex matrices, closed-form 2x2 and Jacobi 3x3 Hermitian
// eigensolvers, spectral matrix functions and composite quadrature.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace raman {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when a computation breaks down (non-convergence, lost normalization).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool is_finite(const Complex& z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <std::size_t N>
using CVec = std::array<Complex, N>;

// Row-major N x N complex matrix.
template <std::size_t N>
class Matrix {
public:
    static constexpr std::size_t dim = N;

    constexpr Matrix() = default;

    constexpr Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        if (rows.size() != N) throw std::invalid_argument("Matrix: wrong row count");
        std::size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != N) throw std::invalid_argument("Matrix: wrong column count");
            std::size_t c = 0;
            for (const auto& v : row) a_[r * N + c++] = v;
            ++r;
        }
    }

    static constexpr Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static constexpr Matrix diagonal(const std::array<Complex, N>& d) {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    static constexpr Matrix outer(const CVec<N>& u, const CVec<N>& v) {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = u[r] * std::conj(v[c]);
        return m;
    }

    constexpr Complex& operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
    constexpr const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }

    constexpr Matrix adjoint() const {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    constexpr Complex trace() const {
        Complex t{};
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        return std::all_of(a_.begin(), a_.end(), [](const Complex& z) { return is_finite(z); });
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t i = 0; i < N * N; ++i) a_[i] += o.a_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t i = 0; i < N * N; ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Matrix& operator*=(Complex s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) { return a *= -1.0; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
    friend Matrix operator*(Matrix a, double s) { return a *= Complex{s}; }
    friend Matrix operator*(double s, Matrix a) { return a *= Complex{s}; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const Complex ark = a(r, k);
                for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
            }
        return m;
    }

    friend CVec<N> operator*(const Matrix& a, const CVec<N>& v) {
        CVec<N> out{};
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) out[r] += a(r, c) * v[c];
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::array<Complex, N * N> a_{};
};

using CMat2 = Matrix<2>;
using CMat3 = Matrix<3>;

// Induced infinity norm: maximum absolute row sum.
template <std::size_t N>
double norm_inf(const Matrix<N>& m) {
    double best = 0.0;
    for (std::size_t r = 0; r < N; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < N; ++c) s += std::abs(m(r, c));
        best = std::max(best, s);
    }
    return best;
}

template <std::size_t N>
double norm(const CVec<N>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

template <std::size_t N>
Complex inner(const CVec<N>& a, const CVec<N>& b) {
    Complex s{};
    for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// ||U^+ U - I||_inf
template <std::size_t N>
double unitarity_defect(const Matrix<N>& u) {
    return norm_inf(u.adjoint() * u - Matrix<N>::identity());
}

template <std::size_t N>
double hermiticity_defect(const Matrix<N>& a) {
    double d = 0.0;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = r; c < N; ++c) d = std::max(d, std::abs(a(r, c) - std::conj(a(c, r))));
    return d;
}

inline constexpr double kHermitianTolerance = 1e-12;

// Rejects non-finite or non-Hermitian input (relative tolerance 1e-12).
template <std::size_t N>
void require_hermitian(const Matrix<N>& a, const char* who) {
    if (!a.all_finite()) throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
    const double defect = hermiticity_defect(a);
    if (defect > kHermitianTolerance * a.max_abs()) {
        std::ostringstream os;
        os.precision(3);
        os << who << ": matrix is not Hermitian (max |A - A^+| entry = " << defect
           << ", largest entry = " << a.max_abs() << ")";
        throw std::invalid_argument(os.str());
    }
}

// General 3x3 inverse by cofactors. Throws on a (numerically) singular matrix.
inline CMat3 inverse(const CMat3& a) {
    CMat3 cof;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            const std::size_t r1 = (r + 1) % 3, r2 = (r + 2) % 3;
            const std::size_t c1 = (c + 1) % 3, c2 = (c + 2) % 3;
            cof(r, c) = a(r1, c1) * a(r2, c2) - a(r1, c2) * a(r2, c1);
        }
    const Complex det = a(0, 0) * cof(0, 0) + a(0, 1) * cof(0, 1) + a(0, 2) * cof(0, 2);
    const double scale = a.max_abs();
    if (std::abs(det) <= 1e-300 || std::abs(det) < 1e-14 * scale * scale * scale)
        throw NumericalError("inverse: matrix is singular to working precision");
    CMat3 inv;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) inv(r, c) = cof(c, r) / det;
    return inv;
}

// ---------------------------------------------------------------------------
// 2x2 Hermitian eigenproblem, closed form

struct EigenH2 {
    std::array<double, 2> values{};      // ascending: lambda_-, lambda_+
    std::array<CMat2, 2> projectors{};   // matching order
};

inline EigenH2 eig_h2(const CMat2& a) {
    require_hermitian(a, "eig_h2");
    const double p = a(0, 0).real();
    const double q = a(1, 1).real();
    const Complex b = a(0, 1);
    const double mean = 0.5 * (p + q);
    const double half_diff = 0.5 * (p - q);
    const double r = std::hypot(half_diff, std::abs(b));

    EigenH2 out;
    out.values = {mean - r, mean + r};
    if (r == 0.0) {
        // degenerate: any orthogonal pair is valid
        out.projectors[0] = CMat2::diagonal({1.0, 0.0});
        out.projectors[1] = CMat2::diagonal({0.0, 1.0});
        return out;
    }
    // sigma = (A - mean)/r squares to I
    CMat2 sigma{{half_diff / r, b / r}, {std::conj(b) / r, -half_diff / r}};
    out.projectors[0] = 0.5 * (CMat2::identity() - sigma);
    out.projectors[1] = 0.5 * (CMat2::identity() + sigma);
    return out;
}

// ---------------------------------------------------------------------------
// 3x3 Hermitian eigenproblem, cyclic complex Jacobi

struct EigenH3 {
    std::array<double, 3> values{};  // ascending
    CMat3 vectors;                   // unitary, columns are eigenvectors

    CVec<3> vector(std::size_t i) const { return {vectors(0, i), vectors(1, i), vectors(2, i)}; }
    CMat3 projector(std::size_t i) const { return CMat3::outer(vector(i), vector(i)); }
};

namespace detail {

// One Jacobi rotation annihilating a(p,q); accumulates into v.
inline void jacobi_rotate(CMat3& a, CMat3& v, std::size_t p, std::size_t q) {
    const Complex b = a(p, q);
    const double mag = std::abs(b);
    if (mag == 0.0) return;
    const Complex phase = b / mag;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // G = D R with D = diag(1, e^{-i phi} at q) and real rotation R(p,q)
    CMat3 g = CMat3::identity();
    g(p, p) = c;
    g(p, q) = s;
    g(q, p) = -s * std::conj(phase);
    g(q, q) = c * std::conj(phase);

    a = g.adjoint() * a * g;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (std::size_t i = 0; i < 3; ++i) a(i, i) = a(i, i).real();
    v = v * g;
}

}  // namespace detail

inline EigenH3 eig_h3(const CMat3& input) {
    require_hermitian(input, "eig_h3");
    CMat3 a = input;
    CMat3 v = CMat3::identity();

    // symmetrize exactly so rotations act on a Hermitian matrix
    for (std::size_t r = 0; r < 3; ++r) {
        a(r, r) = a(r, r).real();
        for (std::size_t c = r + 1; c < 3; ++c) {
            const Complex m = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = m;
            a(c, r) = std::conj(m);
        }
    }

    constexpr int kMaxSweeps = 64;
    constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double diag = 0.0, off = 0.0;
        for (std::size_t i = 0; i < 3; ++i) diag = std::max(diag, std::abs(a(i, i)));
        for (const auto& [p, q] : kPairs) off = std::max(off, std::abs(a(p, q)));
        if (off <= 1e-14 * diag) {
            converged = true;
            break;
        }
        for (const auto& [p, q] : kPairs) detail::jacobi_rotate(a, v, p, q);
    }
    if (!converged) throw NumericalError("eig_h3: Jacobi sweeps did not converge");

    std::array<std::size_t, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    EigenH3 out;
    for (std::size_t k = 0; k < 3; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < 3; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

// sum_i f(lambda_i) P_i. f may return a real or complex value.
template <class F>
CMat3 mat_func_h3(const EigenH3& spec, F&& f) {
    CMat3 out;
    for (std::size_t i = 0; i < 3; ++i) out += spec.projector(i) * Complex(f(spec.values[i]));
    return out;
}

// ---------------------------------------------------------------------------
// Quadrature

// Composite Simpson over uniformly spaced samples. Works for any T closed
// under addition and scaling by double (double, Complex, Matrix<N>).
template <class T>
T simpson(std::span<const T> values, double step) {
    const std::size_t n = values.size();
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("simpson: need an odd number (>= 3) of samples, got " + std::to_string(n));
    T odd = values[1] * 0.0;
    T even = values[1] * 0.0;
    for (std::size_t i = 1; i + 1 < n; i += 2) odd += values[i];
    for (std::size_t i = 2; i + 1 < n; i += 2) even += values[i];
    T sum = values[0] + values[n - 1];
    sum += odd * 4.0;
    sum += even * 2.0;
    return sum * (step / 3.0);
}

template <class T>
T simpson(const std::vector<T>& values, double step) {
    return simpson(std::span<const T>(values), step);
}

// Node weights for integrating over `intervals` uniform steps. Even counts use
// composite Simpson; odd counts >= 3 put a 3/8 segment on the last three
// intervals; a single interval falls back to the trapezoid rule.
inline std::vector<double> prefix_weights(std::size_t intervals, double step) {
    std::vector<double> w(intervals + 1, 0.0);
    if (intervals == 0) return w;
    if (intervals == 1) {
        w[0] = w[1] = 0.5 * step;
        return w;
    }
    const std::size_t simpson_part = intervals % 2 == 0 ? intervals : intervals - 3;
    for (std::size_t i = 0; i + 2 <= simpson_part; i += 2) {
        w[i] += step / 3.0;
        w[i + 1] += 4.0 * step / 3.0;
        w[i + 2] += step / 3.0;
    }
    if (simpson_part != intervals) {
        const std::size_t s = simpson_part;
        w[s] += 3.0 * step / 8.0;
        w[s + 1] += 9.0 * step / 8.0;
        w[s + 2] += 9.0 * step / 8.0;
        w[s + 3] += 3.0 * step / 8.0;
    }
    return w;
}

}  // namespace raman
