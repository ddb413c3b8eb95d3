#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "raman/numerics.hpp"

using namespace raman;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double projector_defect(const CMat2& p) { return std::max(hermiticity_defect(p), norm_inf(p * p - p)); }

}  // namespace

TEST_CASE("eig_h2 on the identity splits into orthogonal projectors", "[numerics][eig_h2]") {
    const EigenH2 e = eig_h2(CMat2::identity());
    CHECK(e.values[0] == 1.0);
    CHECK(e.values[1] == 1.0);
    CHECK(norm_inf(e.projectors[0] + e.projectors[1] - CMat2::identity()) == 0.0);
    CHECK(norm_inf(e.projectors[0] * e.projectors[1]) == 0.0);
}

TEST_CASE("eig_h2 on a diagonal matrix", "[numerics][eig_h2]") {
    const EigenH2 e = eig_h2(CMat2::diagonal({2.0, 5.0}));
    CHECK(e.values[0] == 2.0);
    CHECK(e.values[1] == 5.0);
    CHECK(norm_inf(e.projectors[0] - CMat2::diagonal({1.0, 0.0})) == 0.0);
    CHECK(norm_inf(e.projectors[1] - CMat2::diagonal({0.0, 1.0})) == 0.0);
}

TEST_CASE("eig_h2 on the detuned Raman block matches the characteristic polynomial", "[numerics][eig_h2]") {
    const double D = 400.0, d = -16.0;
    const Complex o0 = 200.0, o1 = 120.0;
    const CMat2 block = CMat2{{(D + d) * (D + d) + std::norm(o0), o0 * std::conj(o1)},
                              {o1 * std::conj(o0), (D - d) * (D - d) + std::norm(o1)}} *
                        0.25;
    const EigenH2 e = eig_h2(block);
    const auto roots = oracle::char_poly_roots(block);
    CHECK_THAT(e.values[0], WithinRel(roots[0], 1e-13));
    CHECK_THAT(e.values[1], WithinRel(roots[1], 1e-13));
    CHECK_THAT(e.values[0], WithinAbs(40864.0, 1e-9));
    CHECK_THAT(e.values[1], WithinAbs(52864.0, 1e-9));
}

TEST_CASE("eig_h2 rejects non-Hermitian input and names the asymmetry", "[numerics][eig_h2]") {
    const CMat2 a{{1.0, 2.0}, {3.0, 1.0}};
    CHECK_THROWS_WITH(eig_h2(a), ContainsSubstring("max |A - A^+|") && ContainsSubstring("1"));
    CHECK_THROWS_AS(eig_h2(a), std::invalid_argument);
}

TEST_CASE("eig_h2 projector properties on random Hermitian matrices", "[numerics][eig_h2][property]") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        const Complex b(g(rng), g(rng));
        const CMat2 a{{g(rng), b}, {std::conj(b), g(rng)}};
        const EigenH2 e = eig_h2(a);
        const double scale = std::max(1.0, a.max_abs());
        REQUIRE(e.values[0] <= e.values[1]);
        for (const auto& p : e.projectors) REQUIRE(projector_defect(p) <= 1e-13);
        REQUIRE(norm_inf(e.projectors[0] * e.projectors[1]) <= 1e-13);
        REQUIRE(norm_inf(e.projectors[0] + e.projectors[1] - CMat2::identity()) <= 1e-13);
        const CMat2 rebuilt = e.projectors[0] * e.values[0] + e.projectors[1] * e.values[1];
        REQUIRE(norm_inf(rebuilt - a) <= 1e-12 * scale);
    }
}

TEST_CASE("eig_h3 on a diagonal matrix returns a permutation", "[numerics][eig_h3]") {
    const EigenH3 e = eig_h3(CMat3::diagonal({2.0, -1.0, 0.0}));
    CHECK(e.values == std::array<double, 3>{-1.0, 0.0, 2.0});
    for (std::size_t c = 0; c < 3; ++c) {
        int ones = 0;
        for (std::size_t r = 0; r < 3; ++r) {
            const double m = std::abs(e.vectors(r, c));
            CHECK((m == 0.0 || m == 1.0));
            ones += m == 1.0;
        }
        CHECK(ones == 1);
    }
}

TEST_CASE("eig_h3 on the shifted-picture Hamiltonian at delta = 0", "[numerics][eig_h3]") {
    // Delta = 400, delta = 0, Omega0 = Omega1 = 40
    const CMat3 h{{-200.0, 0.0, 20.0}, {0.0, -200.0, 20.0}, {20.0, 20.0, 200.0}};
    const EigenH3 e = eig_h3(h);
    const double half = 0.5 * std::sqrt(400.0 * 400.0 + 3200.0);
    CHECK_THAT(e.values[0], WithinAbs(-half, 1e-10));
    CHECK_THAT(e.values[1], WithinAbs(-200.0, 1e-10));
    CHECK_THAT(e.values[2], WithinAbs(half, 1e-10));
    CHECK_THAT(half, WithinAbs(201.990, 5e-4));
    for (std::size_t i = 0; i < 3; ++i) {
        const CVec<3> v = e.vector(i);
        const CVec<3> hv = h * v;
        double residual = 0.0;
        for (std::size_t r = 0; r < 3; ++r) residual = std::max(residual, std::abs(hv[r] - e.values[i] * v[r]));
        CHECK(residual < 1e-10);
    }
}

TEST_CASE("eig_h3 reconstruction and unitarity on random Hermitian matrices", "[numerics][eig_h3][property]") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 1000; ++trial) {
        const CMat3 a = oracle::random_hermitian(rng, trial % 2 ? 1.0 : 300.0);
        const EigenH3 e = eig_h3(a);
        const CMat3 rebuilt = e.vectors * CMat3::diagonal({e.values[0], e.values[1], e.values[2]}) * e.vectors.adjoint();
        REQUIRE(norm_inf(rebuilt - a) <= 1e-12 * norm_inf(a));
        REQUIRE(unitarity_defect(e.vectors) <= 1e-12);
        REQUIRE(e.values[0] <= e.values[1]);
        REQUIRE(e.values[1] <= e.values[2]);
    }
}

TEST_CASE("eig_h3 handles exact degeneracies", "[numerics][eig_h3][property]") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        // a random unitary from the eigenvectors of a random Hermitian matrix
        const CMat3 v = eig_h3(oracle::random_hermitian(rng)).vectors;
        const CMat3 a = v * CMat3::diagonal({1.5, 1.5, -2.0}) * v.adjoint();
        const EigenH3 e = eig_h3(a);
        REQUIRE_THAT(e.values[0], WithinAbs(-2.0, 1e-12));
        REQUIRE_THAT(e.values[1], WithinAbs(1.5, 1e-12));
        REQUIRE_THAT(e.values[2], WithinAbs(1.5, 1e-12));
        REQUIRE(unitarity_defect(e.vectors) <= 1e-12);
        // the degenerate eigenspace projector is basis independent
        const CMat3 p = e.projector(1) + e.projector(2);
        const CMat3 expected = CMat3::identity() - CMat3::outer(v * CVec<3>{0.0, 0.0, 1.0}, v * CVec<3>{0.0, 0.0, 1.0});
        REQUIRE(norm_inf(p - expected) <= 1e-12);
    }
}

TEST_CASE("eig_h3 rejects non-Hermitian and non-finite input", "[numerics][eig_h3]") {
    CMat3 a = CMat3::identity();
    a(0, 2) = Complex(0.0, 1.0);
    CHECK_THROWS_WITH(eig_h3(a), ContainsSubstring("not Hermitian"));
    CMat3 b = CMat3::identity();
    b(1, 1) = std::nan("");
    CHECK_THROWS_AS(eig_h3(b), std::invalid_argument);
}

TEST_CASE("mat_func_h3 basic functions", "[numerics][mat_func_h3]") {
    std::mt19937_64 rng(3);
    const CMat3 a = oracle::random_hermitian(rng);
    const EigenH3 e = eig_h3(a);
    CHECK(norm_inf(mat_func_h3(e, [](double) { return 1.0; }) - CMat3::identity()) <= 1e-14);
    CHECK(norm_inf(mat_func_h3(e, [](double l) { return l; }) - a) <= 1e-12 * norm_inf(a));

    const EigenH3 d = eig_h3(CMat3::diagonal({1.0, 2.0, 3.0}));
    CHECK(norm_inf(mat_func_h3(d, [](double l) { return l * l; }) - CMat3::diagonal({1.0, 4.0, 9.0})) <= 1e-14);
}

TEST_CASE("mat_func_h3 of cos(sqrt(lambda) t) on m0sq matches the delta = 0 closed form", "[numerics][mat_func_h3]") {
    // delta = 0, Delta = 400, Omega0 = 40, Omega1 = 25: cos(M0 t) = P_dark cos(|D| t/2)
    //   + P_bright cos(sqrt(D^2 + W) t/2) on the ground block, cos(sqrt(D^2 + W) t/2) on |e>
    const double D = 400.0;
    const Complex o0 = 40.0, o1 = 25.0;
    const double w = std::norm(o0) + std::norm(o1);
    CMat3 m0sq;
    m0sq(0, 0) = 0.25 * (D * D + std::norm(o0));
    m0sq(0, 1) = 0.25 * o0 * std::conj(o1);
    m0sq(1, 0) = std::conj(m0sq(0, 1));
    m0sq(1, 1) = 0.25 * (D * D + std::norm(o1));
    m0sq(2, 2) = 0.25 * (D * D + w);
    const EigenH3 e = eig_h3(m0sq);
    const CVec<3> bright{o0 / std::sqrt(w), o1 / std::sqrt(w), 0.0};
    const CMat3 pb = CMat3::outer(bright, bright);
    const CMat3 pd = CMat3::diagonal({1.0, 1.0, 0.0}) - pb;
    const CMat3 pe = CMat3::diagonal({0.0, 0.0, 1.0});
    for (double t : {0.0, 0.01, 0.37, 2.5, 11.0}) {
        const double slow = std::cos(std::abs(D) * t / 2.0);
        const double fast = std::cos(std::sqrt(D * D + w) * t / 2.0);
        const CMat3 expected = pd * slow + (pb + pe) * fast;
        const CMat3 got = mat_func_h3(e, [t](double l) { return std::cos(std::sqrt(l) * t); });
        CHECK(norm_inf(got - expected) <= 1e-11);
    }
}

TEST_CASE("mat_func_h3 of exp(-i lambda t) is unitary", "[numerics][mat_func_h3][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const CMat3 a = oracle::random_hermitian(rng, 50.0);
        const EigenH3 e = eig_h3(a);
        const double t = 0.1 * trial;
        const CMat3 u = mat_func_h3(e, [t](double l) { return Complex(std::cos(l * t), -std::sin(l * t)); });
        REQUIRE(unitarity_defect(u) <= 1e-12);
    }
}

TEST_CASE("simpson is exact for polynomials up to cubic", "[numerics][simpson]") {
    std::vector<double> sq(11), cube(11), one(11, 1.0);
    for (int i = 0; i <= 10; ++i) {
        const double x = i / 10.0;
        sq[i] = x * x;
        cube[i] = x * x * x - 2.0 * x;
    }
    CHECK_THAT(simpson(sq, 0.1), WithinAbs(1.0 / 3.0, 1e-15));
    CHECK_THAT(simpson(cube, 0.1), WithinAbs(0.25 - 1.0, 1e-15));
    CHECK_THAT(simpson(one, 0.2), WithinAbs(2.0, 1e-15));
}

TEST_CASE("simpson on sin over half a period", "[numerics][simpson]") {
    std::vector<double> v(101);
    const double h = kPi / 100.0;
    for (int i = 0; i <= 100; ++i) v[i] = std::sin(i * h);
    const double err = std::abs(simpson(v, h) - 2.0);
    // leading error term h^4 / 180 * [f'''(pi) - f'''(0)] = 2 h^4 / 180
    const double leading = 2.0 * std::pow(h, 4) / 180.0;
    CHECK_THAT(err, WithinRel(leading, 1e-3));
    CHECK(err < 1.1e-8);
}

TEST_CASE("simpson rejects even sample counts", "[numerics][simpson]") {
    CHECK_THROWS_AS(simpson(std::vector<double>{1.0, 2.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(simpson(std::vector<double>{1.0, 2.0, 3.0, 4.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(simpson(std::vector<double>{1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("simpson converges at fourth order on a complex exponential", "[numerics][simpson][property]") {
    const double T = 7.3;
    const Complex exact = (std::exp(Complex(0.0, T)) - 1.0) / I;
    auto error = [&](int n) {
        std::vector<Complex> v(n + 1);
        for (int i = 0; i <= n; ++i) v[i] = std::exp(Complex(0.0, T * i / n));
        return std::abs(simpson(v, T / n) - exact);
    };
    for (int n : {64, 128, 256}) {
        const double order = std::log2(error(n) / error(2 * n));
        CHECK(order >= 3.8);
    }
}

TEST_CASE("simpson integrates matrices entrywise", "[numerics][simpson]") {
    std::vector<CMat2> v(5);
    for (int i = 0; i < 5; ++i) v[i] = CMat2{{1.0, Complex(0.0, i)}, {0.0, static_cast<double>(i * i)}};
    const CMat2 s = simpson(v, 0.25);
    CHECK_THAT(s(0, 0).real(), WithinAbs(1.0, 1e-15));
    CHECK_THAT(s(0, 1).imag(), WithinAbs(2.0, 1e-15));  // int_0^1 4x dx
    CHECK_THAT(s(1, 1).real(), WithinAbs(16.0 / 3.0, 1e-14));
}

TEST_CASE("prefix weights integrate cubics for every interval count", "[numerics][simpson]") {
    const double h = 0.13;
    for (std::size_t n = 2; n <= 15; ++n) {
        const auto w = prefix_weights(n, h);
        double sum = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            const double x = h * i;
            sum += w[i] * (x * x * x - x + 1.0);
        }
        const double b = h * n;
        REQUIRE_THAT(sum, WithinAbs(b * b * b * b / 4.0 - b * b / 2.0 + b, 1e-12));
    }
    const auto one = prefix_weights(1, h);
    CHECK(one[0] == 0.5 * h);
    CHECK(one[1] == 0.5 * h);
    CHECK(prefix_weights(0, h).size() == 1);
}

TEST_CASE("inverse of a 3x3 matrix", "[numerics]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        CMat3 a = oracle::random_hermitian(rng) + CMat3::identity() * Complex(0.0, 2.0);
        REQUIRE(norm_inf(a * inverse(a) - CMat3::identity()) <= 1e-12);
    }
    CHECK_THROWS_AS(inverse(CMat3{}), NumericalError);
}
