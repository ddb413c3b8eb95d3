// propagators.hpp - exact, reference and reduced evolution of the three-level system

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "raman/model.hpp"
#include "raman/numerics.hpp"

namespace raman {

// Interaction-picture probability amplitudes for |0>, |1>, |e>.
struct StateVec3 {
    Complex c0{1.0};
    Complex c1{};
    Complex ce{};

    static StateVec3 ground() { return {1.0, 0.0, 0.0}; }
    static StateVec3 from(const CVec<3>& v) { return {v[0], v[1], v[2]}; }

    CVec<3> amplitudes() const { return {c0, c1, ce}; }
    double norm() const { return raman::norm(amplitudes()); }

    StateVec3 normalized() const {
        const double n = norm();
        if (!(n > 0.0)) throw std::invalid_argument("StateVec3: cannot normalize a zero state");
        return {c0 / n, c1 / n, ce / n};
    }
};

inline StateVec3 operator*(const CMat3& u, const StateVec3& psi) { return StateVec3::from(u * psi.amplitudes()); }

// ---------------------------------------------------------------------------
// Exact propagator e^{-iHt} = V e^{-i Lambda t} V^+

class ExactPropagator {
public:
    explicit ExactPropagator(const CMat3& h) : eig_(eig_h3(h)) {}

    CMat3 operator()(double t) const {
        if (!std::isfinite(t)) throw std::invalid_argument("ExactPropagator: time must be finite");
        if (t == 0.0) return CMat3::identity();
        return mat_func_h3(eig_, [t](double lambda) { return std::exp(Complex(0.0, -lambda * t)); });
    }

    const EigenH3& eigensystem() const { return eig_; }

private:
    EigenH3 eig_;
};

inline CMat3 exact_unitary(const CMat3& h, double t) { return ExactPropagator(h)(t); }

// ---------------------------------------------------------------------------
// RK4 reference for dU/dt = -i H U. Independent of the eigensolver.

namespace detail {

inline double row_sum_bound(const CMat3& h) { return norm_inf(h); }

inline void rk4_step(const CMat3& h, CMat3& u, double dt) {
    const CMat3 a = h * Complex(0.0, -1.0);
    const CMat3 k1 = a * u;
    const CMat3 k2 = a * (u + k1 * (0.5 * dt));
    const CMat3 k3 = a * (u + k2 * (0.5 * dt));
    const CMat3 k4 = a * (u + k3 * dt);
    u += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
}

// Advances u across [0, span] in equal steps no larger than dt_max and with dt*rho <= 0.05.
inline void rk4_advance(const CMat3& h, CMat3& u, double span, double dt_max) {
    if (span == 0.0) return;
    const double rho = row_sum_bound(h);
    double dt = dt_max;
    if (rho > 0.0) dt = std::min(dt, 0.05 / rho);
    const auto steps = static_cast<std::size_t>(std::ceil(std::abs(span) / dt));
    const double h_step = span / static_cast<double>(std::max<std::size_t>(steps, 1));
    for (std::size_t i = 0; i < std::max<std::size_t>(steps, 1); ++i) rk4_step(h, u, h_step);
}

}  // namespace detail

inline CMat3 ode_oracle(const CMat3& h, double t, double dt_max) {
    if (!(dt_max > 0.0)) throw std::invalid_argument("ode_oracle: dt_max must be positive");
    CMat3 u = CMat3::identity();
    detail::rk4_advance(h, u, t, dt_max);
    return u;
}

// U at each of the (ascending) times, integrating once across the whole range.
inline std::vector<CMat3> ode_trajectory(const CMat3& h, const std::vector<double>& times, double dt_max) {
    if (!(dt_max > 0.0)) throw std::invalid_argument("ode_trajectory: dt_max must be positive");
    std::vector<CMat3> out;
    out.reserve(times.size());
    CMat3 u = CMat3::identity();
    double now = 0.0;
    for (double t : times) {
        if (t < now) throw std::invalid_argument("ode_trajectory: times must be ascending and >= 0");
        detail::rk4_advance(h, u, t - now, dt_max);
        now = t;
        out.push_back(u);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Adiabatic elimination

struct AEModel {
    CMat2 h_eff;
    double e_plus{};
    double e_minus{};
    double omega_r{};
    CMat2 sigma_o;

    CMat2 unitary(double t) const {
        const EigenH2 eig = eig_h2(h_eff);
        CMat2 u;
        for (std::size_t i = 0; i < 2; ++i)
            u += eig.projectors[i] * std::exp(Complex(0.0, -eig.values[i] * t));
        return u;
    }
};

inline AEModel ae_model(const RamanParams& p) {
    p.validate();
    const double D = p.delta_avg;
    const double d = p.delta_2ph;
    const Complex o0 = p.omega0, o1 = p.omega1;

    AEModel m;
    m.h_eff = CMat2{{d + std::norm(o0) / (2.0 * D), o0 * std::conj(o1) / (2.0 * D)},
                    {o1 * std::conj(o0) / (2.0 * D), -d + std::norm(o1) / (2.0 * D)}} *
              -0.5;
    const double wsq = p.omega_sq();
    const double rabi_sq = wsq * wsq / (16.0 * D * D) + d / (2.0 * D) * p.omega_sigma3() + d * d;
    m.omega_r = std::sqrt(std::max(rabi_sq, 0.0));
    const double centre = -wsq / (8.0 * D);
    m.e_plus = centre + 0.5 * m.omega_r;
    m.e_minus = centre - 0.5 * m.omega_r;
    if (m.omega_r > 0.0)
        m.sigma_o = (m.h_eff * 2.0 - CMat2::identity() * (m.e_plus + m.e_minus)) * (1.0 / (m.e_plus - m.e_minus));
    else
        m.sigma_o = CMat2::diagonal({1.0, -1.0});
    return m;
}

/// |c1(t)|^2 from the closed-form AE solution, starting in |0>.
inline double ae_population_1(const RamanParams& p, double t) {
    const AEModel m = ae_model(p);
    if (m.omega_r == 0.0) return 0.0;
    const double D = p.delta_avg;
    const double amp = std::norm(p.omega0) * std::norm(p.omega1) / (8.0 * D * D * m.omega_r * m.omega_r);
    return amp * (1.0 - std::cos(m.omega_r * t));
}

// ---------------------------------------------------------------------------
// Spectral functions of m0sq as even functions of M0

namespace detail {

// cos(sqrt(lambda) t)
inline double cos_sqrt(double lambda, double t) {
    if (lambda >= 0.0) return std::cos(std::sqrt(lambda) * t);
    return std::cosh(std::sqrt(-lambda) * t);
}

// sin(sqrt(lambda) t) / sqrt(lambda), with the lambda -> 0 limit t
inline double sinc_sqrt(double lambda, double t) {
    const double x = lambda * t * t;
    if (std::abs(x) < 1e-8) return t * (1.0 - x / 6.0 + x * x / 120.0);
    if (lambda > 0.0) {
        const double r = std::sqrt(lambda);
        return std::sin(r * t) / r;
    }
    const double r = std::sqrt(-lambda);
    return std::sinh(r * t) / r;
}

}  // namespace detail

inline CMat3 cos_m0(const SpectralData& s, double t) {
    return s.apply([t](double l) { return detail::cos_sqrt(l, t); });
}

inline CMat3 sinc_m0(const SpectralData& s, double t) {
    return s.apply([t](double l) { return detail::sinc_sqrt(l, t); });
}

// Exact solution for delta = 0, built only from the spectral data of m0sq:
// U = cos(M0 t) - i sin(M0 t)/M0 H.
class Delta0Propagator {
public:
    explicit Delta0Propagator(const RamanParams& p) {
        p.validate();
        if (p.delta_2ph != 0.0) throw std::invalid_argument("exact_delta0: requires delta == 0");
        spec_ = spectral_m0sq(p);
        h_ = h_new(p);
    }

    CMat3 operator()(double t) const { return cos_m0(spec_, t) - sinc_m0(spec_, t) * h_ * I; }

private:
    SpectralData spec_;
    CMat3 h_;
};

inline CMat3 exact_delta0(const RamanParams& p, double t) { return Delta0Propagator(p)(t); }

/// |ce(t)|^2 for delta = 0, starting in |0>.
inline double excited_pop_delta0(const RamanParams& p, double t) {
    p.validate();
    if (p.delta_2ph != 0.0) throw std::invalid_argument("excited_pop_delta0: requires delta == 0");
    const double big = p.delta_avg * p.delta_avg + p.omega_sq();
    const double s = std::sin(std::sqrt(big) * t / 2.0);
    return std::norm(p.omega0) / big * s * s;
}

// e^{-i H_eff t} with H_eff = -(1/2) sqrt((Delta + delta s3)^2 + Omega Omega^+),
// the upper block of -M0 with M0 >= 0.
inline CMat2 m0_effective_unitary(const RamanParams& p, double t) {
    const SpectralData s = spectral_m0sq(p);
    const CMat3 u3 = s.projectors[0] * std::exp(Complex(0.0, s.mu_minus() * t)) +
                     s.projectors[1] * std::exp(Complex(0.0, s.mu_plus() * t));
    return CMat2{{u3(0, 0), u3(0, 1)}, {u3(1, 0), u3(1, 1)}};
}

}  // namespace raman
