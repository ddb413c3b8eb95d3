// Compares the Rabi frequencies and a few populations of the competing
// descriptions for the strongly driven, light-shift compensated case.

#include <cstdio>

#include "raman/raman.hpp"

int main() {
    using namespace raman;

    RamanParams p{400.0, 0.0, 200.0, 120.0};
    p.delta_2ph = delta_resonant_ae(p);

    std::printf("delta (AE resonance)   = %.4f\n", p.delta_2ph);
    std::printf("Omega_R adiabatic elim = %.4f\n", rabi_ae(p));
    std::printf("Omega_R mu+ - mu-      = %.4f\n", rabi_general(p));
    std::printf("transfer amplitude P   = %.6f\n", amplitude_p(p));

    const double t_end = 2.0 * kPi / rabi_general(p);
    const TimeGrid grid(t_end, required_intervals(spectral_m0sq(p), t_end));
    const Trace exact = trace_populations(Method{Method::Kind::ExactNew}, p, StateVec3::ground(), grid);
    const Trace approx = trace_populations(Method::ls(Variant::S, 0), p, StateVec3::ground(), grid);

    std::printf("\n%10s %10s %10s %10s %10s\n", "Delta*t", "p1 exact", "p1 LS-S0", "pe exact", "pe LS-S0");
    for (std::size_t i = 0; i < grid.nodes(); i += grid.intervals() / 10)
        std::printf("%10.2f %10.5f %10.5f %10.5f %10.5f\n", exact.times[i] * p.delta_avg, exact.p1[i], approx.p1[i],
                    exact.pe[i], approx.pe[i]);
    return 0;
}
