// oracles.hpp - independent reference computations used only by the tests

#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "raman/raman.hpp"

namespace raman::oracle {

// e^{A} by scaling and squaring with a long Taylor series.
inline CMat3 expm(const CMat3& a) {
    int squarings = 0;
    double n = norm_inf(a);
    while (n > 0.5) {
        n *= 0.5;
        ++squarings;
    }
    const CMat3 scaled = a * std::ldexp(1.0, -squarings);
    CMat3 term = CMat3::identity();
    CMat3 sum = CMat3::identity();
    for (int k = 1; k <= 30; ++k) {
        term = term * scaled * (1.0 / k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

inline CMat3 propagate(const CMat3& h, double t) { return expm(h * Complex(0.0, -t)); }

// Roots of the characteristic polynomial of a 2x2 Hermitian matrix, ascending.
inline std::array<double, 2> char_poly_roots(const CMat2& a) {
    const long double tr = a(0, 0).real() + a(1, 1).real();
    const long double det = static_cast<long double>(a(0, 0).real()) * a(1, 1).real() - std::norm(a(0, 1));
    const long double disc = std::sqrt(tr * tr - 4.0L * det);
    return {static_cast<double>((tr - disc) / 2.0L), static_cast<double>((tr + disc) / 2.0L)};
}

// Maximum of f on [a, b]: dense scan, then golden-section refinement of the best bracket.
inline double maximize(const std::function<double(double)>& f, double a, double b, int samples = 4000) {
    double best_x = a, best = f(a);
    const double h = (b - a) / samples;
    for (int i = 1; i <= samples; ++i) {
        const double x = a + h * i;
        const double v = f(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double lo = std::max(a, best_x - h), hi = std::min(b, best_x + h);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        if (f(x1) > f(x2)) hi = x2;
        else lo = x1;
    }
    return std::max(best, f(0.5 * (lo + hi)));
}

inline CMat3 random_hermitian(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    CMat3 a;
    for (std::size_t r = 0; r < 3; ++r) {
        a(r, r) = g(rng);
        for (std::size_t c = r + 1; c < 3; ++c) {
            a(r, c) = Complex(g(rng), g(rng));
            a(c, r) = std::conj(a(r, c));
        }
    }
    return a;
}

inline RamanParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> D(100.0, 800.0), frac(0.02, 0.6), sgn(0.0, 1.0), ph(-kPi, kPi),
        dd(-0.1, 0.1);
    RamanParams p;
    p.delta_avg = D(rng) * (sgn(rng) < 0.2 ? -1.0 : 1.0);
    const double mag = std::abs(p.delta_avg);
    p.omega0 = std::polar(frac(rng) * mag, ph(rng));
    p.omega1 = std::polar(frac(rng) * mag, ph(rng));
    p.delta_2ph = dd(rng) * mag;
    return p;
}

// Solution of U'' = -(m0sq + eta eps) U, U(0) = I, U'(0) = -i H: the exact
// solution of the "on the right" integral equation with eps scaled by eta.
inline CMat3 scaled_exact_right(const RamanParams& p, double eta, double t) {
    const SplitSquare s = testing::split_square_scaled_eps(p, eta);
    const EigenH3 eig = eig_h3(s.m0sq + s.eps);
    const CMat3 c = mat_func_h3(eig, [t](double l) { return std::cos(std::sqrt(l) * t); });
    const CMat3 k = mat_func_h3(eig, [t](double l) { return std::sin(std::sqrt(l) * t) / std::sqrt(l); });
    return c - k * h_new(p) * I;
}

// Mirror image for the "on the left" equation: U'' = -U (m0sq + eta eps).
inline CMat3 scaled_exact_left(const RamanParams& p, double eta, double t) {
    const SplitSquare s = testing::split_square_scaled_eps(p, eta);
    const EigenH3 eig = eig_h3(s.m0sq + s.eps);
    const CMat3 c = mat_func_h3(eig, [t](double l) { return std::cos(std::sqrt(l) * t); });
    const CMat3 k = mat_func_h3(eig, [t](double l) { return std::sin(std::sqrt(l) * t) / std::sqrt(l); });
    return c - h_new(p) * k * I;
}

inline RamanParams fig4() { return {400.0, -16.0, 200.0, 120.0}; }

}  // namespace raman::oracle
