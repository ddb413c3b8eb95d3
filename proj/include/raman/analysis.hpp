// analysis.hpp - observables built on the propagators: Rabi frequencies,
// resonance detunings, transfer amplitude, fidelity and population traces.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "raman/lippmann_schwinger.hpp"
#include "raman/model.hpp"
#include "raman/numerics.hpp"
#include "raman/propagators.hpp"

namespace raman {

// ---------------------------------------------------------------------------
// Rabi frequencies

/// Adiabatic-elimination Rabi frequency.
inline double rabi_ae(const RamanParams& p) { return ae_model(p).omega_r; }

/// Exact Rabi frequency at delta = 0: (sqrt(Delta^2 + Omega^+ Omega) - |Delta|) / 2.
inline double rabi_exact_delta0(const RamanParams& p) {
    p.validate();
    if (p.delta_2ph != 0.0) throw std::invalid_argument("rabi_exact_delta0: requires delta == 0");
    const double D = std::abs(p.delta_avg);
    const double wsq = p.omega_sq();
    // rationalized form of sqrt(D^2 + w) - D, stable for small w
    return 0.5 * wsq / (std::sqrt(D * D + wsq) + D);
}

/// mu_+ - mu_- from the spectrum of m0sq.
inline double rabi_general(const RamanParams& p) {
    const SpectralData s = spectral_m0sq(p);
    // (mu+^2 - mu-^2) / (mu+ + mu-) avoids cancellation
    const double sum = s.mu_plus() + s.mu_minus();
    if (sum == 0.0) return 0.0;
    return (s.mu_plus_sq - s.mu_minus_sq) / sum;
}

// ---------------------------------------------------------------------------
// Resonance detunings

/// delta that removes the effective AE detuning: (|Omega1|^2 - |Omega0|^2) / (4 Delta).
inline double delta_resonant_ae(const RamanParams& p) {
    p.validate();
    return -p.omega_sigma3() / (4.0 * p.delta_avg);
}

struct LightShiftDetuning {
    double approx{};  // closed-form leading solution
    double exact{};   // root of delta = |O1|^2/(4D + 2 delta) - |O0|^2/(4D - 2 delta)
    int iterations{};
};

inline LightShiftDetuning delta_resonant_lightshift(const RamanParams& p) {
    p.validate();
    const double D = p.delta_avg;
    const double a0 = std::norm(p.omega0);
    const double a1 = std::norm(p.omega1);

    LightShiftDetuning out;
    out.approx = 2.0 * D * (a1 - a0) / (8.0 * D * D + a0 + a1);

    auto residual = [&](double d) { return d - a1 / (4.0 * D + 2.0 * d) + a0 / (4.0 * D - 2.0 * d); };
    auto slope = [&](double d) {
        const double u = 4.0 * D + 2.0 * d, v = 4.0 * D - 2.0 * d;
        return 1.0 + 2.0 * a1 / (u * u) + 2.0 * a0 / (v * v);
    };
    const double scale = std::max(std::abs(out.approx), (a0 + a1) / (4.0 * std::abs(D)));

    double d = out.approx;
    for (int it = 1; it <= 50; ++it) {
        if (4.0 * D + 2.0 * d == 0.0 || 4.0 * D - 2.0 * d == 0.0)
            throw NumericalError("delta_resonant_lightshift: Newton iterate hit a pole of the light-shift equation");
        const double r = residual(d);
        if (r == 0.0) {
            out.exact = d;
            out.iterations = it - 1;
            return out;
        }
        const double step = r / slope(d);
        d -= step;
        if (std::abs(step) <= 1e-12 * std::max(std::abs(d), 1e-300) || std::abs(step) <= 1e-16 * scale) {
            out.exact = d;
            out.iterations = it;
            return out;
        }
    }
    std::ostringstream os;
    os << "delta_resonant_lightshift: Newton did not converge in 50 iterations (residual " << residual(d) << ")";
    throw NumericalError(os.str());
}

// ---------------------------------------------------------------------------

/// Amplitude of the |0> -> |1> oscillation for the M0 effective Hamiltonian.
inline double amplitude_p(const RamanParams& p) {
    p.validate();
    const double ws3 = p.omega_sigma3();
    const double wsq = p.omega_sq();
    const double x = 4.0 * p.delta_2ph * p.delta_avg;
    const double num = (ws3 + x) * (ws3 + x);
    const double den = wsq * wsq + 2.0 * x * ws3 + x * x;
    if (den == 0.0) throw std::invalid_argument("amplitude_p: undefined for Omega = 0 and delta*Delta = 0");
    return 1.0 - num / den;
}

/// |<a|b>|
inline double fidelity(const StateVec3& a, const StateVec3& b) {
    if (a.c0 == b.c0 && a.c1 == b.c1 && a.ce == b.ce) return 1.0;
    return std::min(1.0, std::abs(inner(a.amplitudes(), b.amplitudes())));
}

// ---------------------------------------------------------------------------
// Population traces

struct Trace {
    std::vector<double> times;
    std::vector<double> p0, p1, pe;
    std::vector<double> norm;
    std::string label;

    std::size_t size() const { return times.size(); }

    void push(double t, const StateVec3& s) {
        times.push_back(t);
        p0.push_back(std::norm(s.c0));
        p1.push_back(std::norm(s.c1));
        pe.push_back(std::norm(s.ce));
        norm.push_back(s.norm());
    }
};

struct Method {
    enum class Kind { ExactAE, ExactNew, Ode, AE, Delta0, M0Eff, LS };
    Kind kind{Kind::ExactNew};
    Variant variant{Variant::S};  // LS only
    int order{0};                 // LS only

    bool is_two_level() const { return kind == Kind::AE || kind == Kind::M0Eff; }

    std::string name() const {
        switch (kind) {
            case Kind::ExactAE: return "exact-ae";
            case Kind::ExactNew: return "exact-new";
            case Kind::Ode: return "ode";
            case Kind::AE: return "ae";
            case Kind::Delta0: return "delta0";
            case Kind::M0Eff: return "m0eff";
            case Kind::LS: return "ls-" + std::string(to_string(variant));
        }
        return "?";
    }

    // name plus the order for LS methods, e.g. "ls-R:k=2"
    std::string label() const { return kind == Kind::LS ? name() + ":k=" + std::to_string(order) : name(); }

    static std::optional<Method> parse(std::string_view s, int order = 0) {
        Method m;
        m.order = order;
        if (s == "exact-ae") m.kind = Kind::ExactAE;
        else if (s == "exact-new") m.kind = Kind::ExactNew;
        else if (s == "ode") m.kind = Kind::Ode;
        else if (s == "ae") m.kind = Kind::AE;
        else if (s == "delta0") m.kind = Kind::Delta0;
        else if (s == "m0eff") m.kind = Kind::M0Eff;
        else if (s.size() == 4 && s.substr(0, 3) == "ls-") {
            const auto v = parse_variant(s.substr(3));
            if (!v) return std::nullopt;
            m.kind = Kind::LS;
            m.variant = *v;
        } else {
            return std::nullopt;
        }
        return m;
    }

    static Method ls(Variant v, int k) { return {Kind::LS, v, k}; }
};

inline Trace trace_populations(const Method& method, const RamanParams& p, const StateVec3& psi0_in,
                               const TimeGrid& grid) {
    p.validate();
    if (std::abs(psi0_in.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("trace_populations: initial state must have unit norm");
    const StateVec3 psi0 = psi0_in;
    if (method.is_two_level() && psi0.ce != Complex{})
        throw std::invalid_argument("trace_populations: method " + method.name() +
                                    " is a two-level model and needs ce(0) = 0");

    Trace tr;
    tr.label = method.label();
    const std::vector<double> ts = grid.times();

    auto two_level = [&](const CMat2& u, double t) {
        const CVec<2> v = u * CVec<2>{psi0.c0, psi0.c1};
        tr.push(t, StateVec3{v[0], v[1], 0.0});
    };

    switch (method.kind) {
        case Method::Kind::ExactAE:
        case Method::Kind::ExactNew: {
            const ExactPropagator prop(method.kind == Method::Kind::ExactAE ? h_ae(p) : h_new(p));
            for (double t : ts) tr.push(t, prop(t) * psi0);
            break;
        }
        case Method::Kind::Ode: {
            const CMat3 h = h_new(p);
            const double dt_max = std::min(grid.dt(), 0.01 / std::max(norm_inf(h), 1e-300));
            const auto us = ode_trajectory(h, ts, dt_max);
            for (std::size_t i = 0; i < ts.size(); ++i) tr.push(ts[i], us[i] * psi0);
            break;
        }
        case Method::Kind::AE: {
            const AEModel m = ae_model(p);
            for (double t : ts) two_level(m.unitary(t), t);
            break;
        }
        case Method::Kind::Delta0: {
            const Delta0Propagator prop(p);
            for (double t : ts) tr.push(t, prop(t) * psi0);
            break;
        }
        case Method::Kind::M0Eff: {
            for (double t : ts) two_level(m0_effective_unitary(p, t), t);
            break;
        }
        case Method::Kind::LS: {
            const PropagatorTable table = iterate(method.variant, p, grid, method.order);
            const auto states = apply_normalized(table, psi0);
            for (std::size_t i = 0; i < ts.size(); ++i) tr.push(ts[i], states[i]);
            break;
        }
    }
    return tr;
}

}  // namespace raman
