// lippmann_schwinger.hpp - zeroth-order propagators and the Born-type hierarchy
//
// With (h_new)^2 = m0sq + eps and K(tau) = sin(M0 tau)/M0, the evolution obeys
//
//   R:  U(t) = U0R(t) - int_0^t K(t-t') eps U(t') dt'
//   L:  U(t) = U0L(t) - int_0^t U(t-t') eps K(t') dt'
//   S:  half the sum of R and L
//
// Iterating from U0 gives U_k, accurate to order k in |eps/m0sq|. Integrals are
// evaluated on a uniform grid (Simpson, with a 3/8 tail segment on odd
// prefixes and a three-point rule on the first step). Building order k over n intervals costs O(k n^2) 3x3 products.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "raman/model.hpp"
#include "raman/numerics.hpp"
#include "raman/propagators.hpp"

namespace raman {

// R: H on the right, L: H on the left, S: symmetrized,
// M: arithmetic mean of the R and L tables (equals S at k = 0).
enum class Variant { R, L, S, M };

inline std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::R: return "R";
        case Variant::L: return "L";
        case Variant::S: return "S";
        case Variant::M: return "M";
    }
    return "?";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
    if (s == "R") return Variant::R;
    if (s == "L") return Variant::L;
    if (s == "S") return Variant::S;
    if (s == "M") return Variant::M;
    return std::nullopt;
}

// Everything the hierarchy needs. eps is kept separate from m0sq so tests can
// rescale it without touching the spectral data.
struct LsSystem {
    CMat3 h;
    SpectralData spectral;
    CMat3 eps;

    static LsSystem from(const RamanParams& p) { return {h_new(p), spectral_m0sq(p), split_square(p).eps}; }
};

namespace testing {

inline LsSystem ls_system_scaled_eps(const RamanParams& p, double eta) {
    return {h_new(p), spectral_m0sq(p), split_square_scaled_eps(p, eta).eps};
}

}  // namespace testing

class TimeGrid {
public:
    TimeGrid(double t_end, std::size_t intervals) : t_end_(t_end), n_(intervals) {
        if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("TimeGrid: t_end must be positive");
        if (intervals == 0 || intervals % 2 != 0)
            throw std::invalid_argument("TimeGrid: interval count must be even and positive, got " +
                                        std::to_string(intervals));
    }

    double t_end() const { return t_end_; }
    std::size_t intervals() const { return n_; }
    std::size_t nodes() const { return n_ + 1; }
    double dt() const { return t_end_ / static_cast<double>(n_); }
    double time(std::size_t i) const { return t_end_ * static_cast<double>(i) / static_cast<double>(n_); }

    std::vector<double> times() const {
        std::vector<double> ts(nodes());
        for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = time(i);
        return ts;
    }

private:
    double t_end_;
    std::size_t n_;
};

/// Smallest even interval count with dt * mu_max <= pi/20.
inline std::size_t required_intervals(const SpectralData& s, double t_end) {
    auto n = static_cast<std::size_t>(std::ceil(t_end * s.mu_max() * 20.0 / kPi));
    n = std::max<std::size_t>(n, 2);
    return n + n % 2;
}

inline bool satisfies_density(const TimeGrid& g, const SpectralData& s) {
    return g.dt() * s.mu_max() <= kPi / 20.0 * (1.0 + 1e-12);
}

// ---------------------------------------------------------------------------

inline CMat3 u0(Variant v, const LsSystem& sys, double t) {
    const CMat3 c = cos_m0(sys.spectral, t);
    const CMat3 k = sinc_m0(sys.spectral, t);
    switch (v) {
        case Variant::R: return c - k * sys.h * I;
        case Variant::L: return c - sys.h * k * I;
        case Variant::S:
        case Variant::M: return c - (k * sys.h + sys.h * k) * (0.5 * I);
    }
    throw std::invalid_argument("u0: unknown variant");
}

inline CMat3 u0(Variant v, const RamanParams& p, double t) { return u0(v, LsSystem::from(p), t); }

struct PropagatorTable {
    TimeGrid grid;
    std::vector<CMat3> matrices;  // one per grid node
    int order{};
    Variant variant{};
};

namespace detail {

// One Born increment: next(t_i) = -int_0^{t_i} [kernel term built from prev].
inline std::vector<CMat3> ls_increment(Variant v, const std::vector<CMat3>& kernel_eps,
                                       const std::vector<CMat3>& eps_kernel, const std::vector<CMat3>& prev,
                                       double dt) {
    const std::size_t nodes = prev.size();
    std::vector<CMat3> next(nodes);
    for (std::size_t i = 1; i < nodes; ++i) {
        CMat3 right, left;
        if (i == 1) {
            // [0, dt] alone: quadratic through s = 0, dt, 2 dt. The kernel is odd,
            // so K(dt - 2 dt) = -K(dt); K(0) = 0 drops the middle sample.
            const double w0 = 5.0 * dt / 12.0, w2 = -dt / 12.0;
            if (v != Variant::L) right = (kernel_eps[1] * prev[0]) * w0 - (kernel_eps[1] * prev[2]) * w2;
            if (v != Variant::R) left = (prev[0] * eps_kernel[1]) * w0 - (prev[2] * eps_kernel[1]) * w2;
        } else {
            const std::vector<double> w = prefix_weights(i, dt);
            for (std::size_t j = 0; j <= i; ++j) {
                if (v != Variant::L) right += (kernel_eps[i - j] * prev[j]) * w[j];
                if (v != Variant::R) left += (prev[j] * eps_kernel[i - j]) * w[j];
            }
        }
        switch (v) {
            case Variant::R: next[i] = -right; break;
            case Variant::L: next[i] = -left; break;
            default: next[i] = (right + left) * -0.5; break;
        }
    }
    return next;
}

inline std::vector<CMat3> ls_table(Variant v, const LsSystem& sys, const TimeGrid& grid, int k) {
    const std::size_t nodes = grid.nodes();
    std::vector<CMat3> kernel_eps(nodes), eps_kernel(nodes), total(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        const CMat3 kern = sinc_m0(sys.spectral, grid.time(i));
        kernel_eps[i] = kern * sys.eps;
        eps_kernel[i] = sys.eps * kern;
        total[i] = u0(v, sys, grid.time(i));
    }
    total[0] = CMat3::identity();
    std::vector<CMat3> term = total;
    for (int order = 1; order <= k; ++order) {
        term = ls_increment(v, kernel_eps, eps_kernel, term, grid.dt());
        for (std::size_t i = 0; i < nodes; ++i) total[i] += term[i];
    }
    return total;
}

}  // namespace detail

inline PropagatorTable iterate(Variant v, const LsSystem& sys, const TimeGrid& grid, int k) {
    if (k < 0) throw std::invalid_argument("iterate: order must be >= 0");
    if (!satisfies_density(grid, sys.spectral)) {
        std::ostringstream os;
        os << "iterate: grid too coarse (dt*mu_max must be <= pi/20); need at least "
           << required_intervals(sys.spectral, grid.t_end()) << " intervals, got " << grid.intervals();
        throw std::invalid_argument(os.str());
    }
    PropagatorTable table{grid, {}, k, v};
    if (v == Variant::M && k > 0) {
        auto r = detail::ls_table(Variant::R, sys, grid, k);
        const auto l = detail::ls_table(Variant::L, sys, grid, k);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = (r[i] + l[i]) * 0.5;
        table.matrices = std::move(r);
    } else {
        table.matrices = detail::ls_table(v, sys, grid, k);
    }
    return table;
}

inline PropagatorTable iterate(Variant v, const RamanParams& p, const TimeGrid& grid, int k) {
    return iterate(v, LsSystem::from(p), grid, k);
}

// U_k(t_i) psi0 / |U_k(t_i) psi0| at each node.
inline std::vector<StateVec3> apply_normalized(const PropagatorTable& table, const StateVec3& psi0) {
    if (std::abs(psi0.norm() - 1.0) > 1e-12) throw std::invalid_argument("apply_normalized: psi0 must have unit norm");
    std::vector<StateVec3> out;
    out.reserve(table.matrices.size());
    for (std::size_t i = 0; i < table.matrices.size(); ++i) {
        const StateVec3 raw = table.matrices[i] * psi0;
        const double n = raw.norm();
        if (!(n >= 1e-6)) {
            std::ostringstream os;
            os << "apply_normalized: |U_k psi0| = " << n << " at t = " << table.grid.time(i)
               << "; the approximation has broken down";
            throw NumericalError(os.str());
        }
        out.push_back({raw.c0 / n, raw.c1 / n, raw.ce / n});
    }
    return out;
}

}  // namespace raman
