// model.hpp - Raman parameters, interaction-picture Hamiltonians and the
// block-diagonal / off-diagonal split of the squared Hamiltonian.
//
// Units: hbar = 1, frequencies are angular (rad/us, shown as "MHz"), time in us.
// Level order is |0>, |1>, |e>.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "raman/numerics.hpp"

namespace raman {

struct RamanParams {
    double delta_avg{};   // average detuning Delta
    double delta_2ph{};   // two-photon detuning delta
    Complex omega0{};     // Rabi frequency |0> <-> |e>
    Complex omega1{};     // Rabi frequency |1> <-> |e>

    double detuning0() const { return delta_avg + 0.5 * delta_2ph; }
    double detuning1() const { return delta_avg - 0.5 * delta_2ph; }

    /// Omega^+ Omega
    double omega_sq() const { return std::norm(omega0) + std::norm(omega1); }
    /// Omega^+ sigma_3 Omega
    double omega_sigma3() const { return std::norm(omega0) - std::norm(omega1); }

    RamanParams with_delta(double delta) const {
        RamanParams p = *this;
        p.delta_2ph = delta;
        return p;
    }

    void validate() const {
        if (!std::isfinite(delta_avg) || !std::isfinite(delta_2ph) || !is_finite(omega0) || !is_finite(omega1))
            throw std::invalid_argument("RamanParams: all parameters must be finite");
        if (delta_avg == 0.0) throw std::invalid_argument("RamanParams: average detuning Delta must be nonzero");
    }
};

/// Hamiltonian in the picture used for adiabatic elimination.
inline CMat3 h_ae(const RamanParams& p) {
    p.validate();
    const double d = p.delta_2ph;
    return CMat3{{-0.5 * d, 0.0, 0.5 * p.omega0},
                 {0.0, 0.5 * d, 0.5 * p.omega1},
                 {0.5 * std::conj(p.omega0), 0.5 * std::conj(p.omega1), p.delta_avg}};
}

/// Hamiltonian in the shifted picture: h_ae - (Delta/2) I.
inline CMat3 h_new(const RamanParams& p) {
    p.validate();
    const double D = p.delta_avg;
    const double d = p.delta_2ph;
    return CMat3{{0.5 * (-D - d), 0.0, 0.5 * p.omega0},
                 {0.0, 0.5 * (-D + d), 0.5 * p.omega1},
                 {0.5 * std::conj(p.omega0), 0.5 * std::conj(p.omega1), 0.5 * D}};
}

// (h_new)^2 = m0sq + eps. m0sq is block diagonal (2+1), eps couples the
// blocks and is linear in delta.
struct SplitSquare {
    CMat3 m0sq;
    CMat3 eps;
};

namespace detail {

inline SplitSquare build_split(const RamanParams& p, double eps_scale) {
    const double D = p.delta_avg;
    const double d = p.delta_2ph;
    const Complex o0 = p.omega0, o1 = p.omega1;

    SplitSquare s;
    s.m0sq(0, 0) = 0.25 * ((D + d) * (D + d) + std::norm(o0));
    s.m0sq(0, 1) = 0.25 * o0 * std::conj(o1);
    s.m0sq(1, 0) = 0.25 * o1 * std::conj(o0);
    s.m0sq(1, 1) = 0.25 * ((D - d) * (D - d) + std::norm(o1));
    s.m0sq(2, 2) = 0.25 * (D * D + p.omega_sq());

    // -(delta/4) [[0, s3 Omega], [Omega^+ s3, 0]]
    const double f = -0.25 * d * eps_scale;
    s.eps(0, 2) = f * o0;
    s.eps(1, 2) = -f * o1;
    s.eps(2, 0) = f * std::conj(o0);
    s.eps(2, 1) = -f * std::conj(o1);
    return s;
}

}  // namespace detail

inline SplitSquare split_square(const RamanParams& p) {
    p.validate();
    SplitSquare s = detail::build_split(p, 1.0);
    const CMat3 h = h_new(p);
    const CMat3 sq = h * h;
    if (norm_inf(sq - s.m0sq - s.eps) > 1e-12 * sq.max_abs())
        throw std::logic_error("split_square: m0sq + eps does not reproduce h_new^2");
    return s;
}

namespace testing {

// Scales only the off-diagonal part; m0sq and h_new are untouched. Used to
// probe the order of the Lippmann-Schwinger hierarchy.
inline SplitSquare split_square_scaled_eps(const RamanParams& p, double eta) {
    p.validate();
    return detail::build_split(p, eta);
}

}  // namespace testing

// Eigen-decomposition of m0sq: two eigenvalues in the |0>,|1> block, one on |e>.
struct SpectralData {
    double mu_plus_sq{};
    double mu_minus_sq{};
    double mu_e_sq{};
    // minus, plus, e
    std::array<CMat3, 3> projectors{};
    // set when one Rabi frequency vanishes and the block is already diagonal
    bool diagonal_fallback{false};

    std::array<double, 3> eigenvalues() const { return {mu_minus_sq, mu_plus_sq, mu_e_sq}; }

    double mu_plus() const { return std::sqrt(mu_plus_sq); }
    double mu_minus() const { return std::sqrt(mu_minus_sq); }
    double mu_max() const { return std::sqrt(std::max(mu_plus_sq, mu_e_sq)); }

    // f(m0sq) = sum_i f(lambda_i) P_i
    template <class F>
    CMat3 apply(F&& f) const {
        const auto ev = eigenvalues();
        CMat3 out;
        for (std::size_t i = 0; i < 3; ++i) out += projectors[i] * Complex(f(ev[i]));
        return out;
    }

    CMat3 reconstruct() const {
        return apply([](double x) { return x; });
    }
};

inline SpectralData spectral_m0sq(const RamanParams& p) {
    p.validate();
    const double D = p.delta_avg;
    const double d = p.delta_2ph;
    const double wsq = p.omega_sq();
    const double ws3 = p.omega_sigma3();

    SpectralData s;
    s.mu_e_sq = 0.25 * (D * D + wsq);
    s.projectors[2] = CMat3::diagonal({0.0, 0.0, 1.0});

    if (p.omega0 == Complex{} || p.omega1 == Complex{}) {
        // Omega is an eigencolumn of sigma_3: the block is diagonal already
        s.diagonal_fallback = true;
        const double a = 0.25 * ((D + d) * (D + d) + std::norm(p.omega0));
        const double b = 0.25 * ((D - d) * (D - d) + std::norm(p.omega1));
        const auto p00 = CMat3::diagonal({1.0, 0.0, 0.0});
        const auto p11 = CMat3::diagonal({0.0, 1.0, 0.0});
        s.mu_minus_sq = std::min(a, b);
        s.mu_plus_sq = std::max(a, b);
        s.projectors[0] = a <= b ? p00 : p11;
        s.projectors[1] = a <= b ? p11 : p00;
        return s;
    }

    const double base = 0.25 * (D * D + d * d) + 0.125 * wsq;
    const double root = 0.125 * std::sqrt(wsq * wsq + 8.0 * d * D * ws3 + 16.0 * d * d * D * D);
    s.mu_plus_sq = base + root;
    s.mu_minus_sq = base - root;

    // Eigencolumn [4 mu^2 - (Delta + delta s3)^2]^{-1} Omega, scaled by the
    // product of both diagonal factors so no division is needed
    auto column = [&](double mu_sq) -> CVec<3> {
        return {(4.0 * mu_sq - (D - d) * (D - d)) * p.omega0, (4.0 * mu_sq - (D + d) * (D + d)) * p.omega1, 0.0};
    };
    const CVec<3> vp = column(s.mu_plus_sq);
    const CVec<3> vm = column(s.mu_minus_sq);
    const double np = norm(vp), nm = norm(vm);
    const CMat3 block = CMat3::diagonal({1.0, 1.0, 0.0});
    // the better-conditioned column fixes one projector, the other is its complement
    if (np >= nm) {
        s.projectors[1] = CMat3::outer(vp, vp) * (1.0 / (np * np));
        s.projectors[0] = block - s.projectors[1];
    } else {
        s.projectors[0] = CMat3::outer(vm, vm) * (1.0 / (nm * nm));
        s.projectors[1] = block - s.projectors[0];
    }
    return s;
}

}  // namespace raman
