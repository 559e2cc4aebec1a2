#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "helmscat/errors.hpp"
#include "helmscat/forward.hpp"
#include "helmscat/inversion.hpp"
#include "helmscat/opuc.hpp"
#include "test_util.hpp"

using namespace helmscat;
using testutil::dist;

namespace {

std::vector<Complex> random_disk(std::mt19937_64& rng, std::size_t n, double rmax,
                                 bool complex_valued) {
    std::vector<Complex> r(n);
    for (auto& v : r) {
        if (complex_valued) {
            const double mag = rmax * testutil::uniform01(rng);
            v = std::polar(mag, testutil::uniform(rng, 0.0, 6.28));
        } else {
            v = Complex(testutil::uniform(rng, -rmax, rmax), 0.0);
        }
    }
    return r;
}

} // namespace

TEST_CASE("recurrence basics") {
    SUBCASE("single step") {
        const std::vector<Complex> r{Complex(0.3, 0.2)};
        const auto sz = szego_polynomials(r);
        REQUIRE(sz.phi.size() == 2);
        REQUIRE(sz.phi[1].size() == 2);
        CHECK(dist(sz.phi[1][0], -std::conj(r[0])) <= 1e-15);
        CHECK(dist(sz.phi[1][1], Complex(1.0, 0.0)) <= 1e-15);
        // The second-kind family runs on the negated coefficients.
        CHECK(dist(sz.psi[1][0], std::conj(r[0])) <= 1e-15);
        CHECK(dist(sz.psi[1][1], Complex(1.0, 0.0)) <= 1e-15);
    }
    SUBCASE("free case gives pure powers") {
        const std::vector<Complex> r(4, Complex(0.0, 0.0));
        const auto sz = szego_polynomials(r);
        for (std::size_t j = 0; j <= 4; ++j) {
            REQUIRE(sz.phi[j].size() == j + 1);
            for (std::size_t i = 0; i < j; ++i)
                CHECK(dist(sz.phi[j][i], Complex(0.0, 0.0)) == 0.0);
            CHECK(dist(sz.phi[j][j], Complex(1.0, 0.0)) == 0.0);
        }
    }
    SUBCASE("all members are monic of full degree") {
        std::mt19937_64 rng(0x6f70756331ull);
        const auto r = random_disk(rng, 7, 0.9, true);
        const auto sz = szego_polynomials(r);
        REQUIRE(sz.phi.size() == 8);
        REQUIRE(sz.psi.size() == 8);
        for (std::size_t j = 0; j <= 7; ++j) {
            REQUIRE(sz.phi[j].size() == j + 1);
            REQUIRE(sz.psi[j].size() == j + 1);
            CHECK(dist(sz.phi[j].back(), Complex(1.0, 0.0)) <= 1e-15);
            CHECK(dist(sz.psi[j].back(), Complex(1.0, 0.0)) <= 1e-15);
        }
    }
    SUBCASE("coefficients outside the disk are rejected") {
        CHECK_THROWS_AS(szego_polynomials(std::vector<Complex>{Complex(1.0, 0.0)}),
                        ValidationError);
    }
}

TEST_CASE("dual polynomial") {
    const Poly one{Complex(1.0, 0.0)};
    CHECK(dual(one) == one);

    const Complex r1(0.4, -0.3);
    const Poly phi1{-std::conj(r1), Complex(1.0, 0.0)};
    const Poly d = dual(phi1);
    REQUIRE(d.size() == 2);
    CHECK(dist(d[0], Complex(1.0, 0.0)) == 0.0);
    CHECK(dist(d[1], -r1) == 0.0);

    const Poly z3{Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
                  Complex(1.0, 0.0)};
    const Poly dz3 = dual(z3);
    CHECK(dist(dz3[0], Complex(1.0, 0.0)) == 0.0);
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(dist(dz3[i], Complex(0.0, 0.0)) == 0.0);

    std::mt19937_64 rng(0x6f70756332ull);
    Poly p(6);
    for (auto& c : p)
        c = Complex(testutil::uniform(rng, -1.0, 1.0), testutil::uniform(rng, -1.0, 1.0));
    const Poly dd = dual(dual(p));
    for (std::size_t i = 0; i < p.size(); ++i)
        CHECK(dist(dd[i], p[i]) == 0.0);

    // Defining identity p*(z) = z^deg conj(p(1 / conj(z))) on the circle.
    const Complex z = std::polar(1.0, 0.77);
    const Complex direct = poly_eval(dual(p), z);
    const Complex via = std::pow(z, 5) * std::conj(poly_eval(p, 1.0 / std::conj(z)));
    CHECK(dist(direct, via) <= 1e-14);
}

TEST_CASE("symbolic transfer-matrix product matches the recurrence families") {
    SUBCASE("empty product is the seed matrix") {
        const auto m = matrix_product_polys(std::vector<Complex>{});
        REQUIRE(m.m11.size() == 1);
        CHECK(dist(m.m11[0], Complex(1.0, 0.0)) == 0.0);
        CHECK(dist(m.m12[0], Complex(1.0, 0.0)) == 0.0);
        CHECK(dist(m.m21[0], Complex(-1.0, 0.0)) == 0.0);
        CHECK(dist(m.m22[0], Complex(1.0, 0.0)) == 0.0);
    }
    SUBCASE("one real coefficient") {
        const auto m = matrix_product_polys(std::vector<Complex>{Complex(0.6, 0.0)});
        // Lower-left entry is -(z - r).
        REQUIRE(m.m21.size() == 2);
        CHECK(dist(m.m21[0], Complex(0.6, 0.0)) <= 1e-15);
        CHECK(dist(m.m21[1], Complex(-1.0, 0.0)) <= 1e-15);
    }
    SUBCASE("entries equal the recurrence output coefficientwise") {
        std::mt19937_64 rng(0x6f70756333ull);
        const auto r = random_disk(rng, 5, 0.9, true);
        const auto m = matrix_product_polys(r);
        const auto sz = szego_polynomials(r);
        const Poly phin = sz.phi.back();
        const Poly psin = sz.psi.back();
        REQUIRE(m.m11.size() == 6);
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(dist(m.m11[i], psin[i]) <= 1e-12);
            CHECK(dist(m.m12[i], dual(psin)[i]) <= 1e-12);
            CHECK(dist(m.m21[i], -phin[i]) <= 1e-12);
            CHECK(dist(m.m22[i], dual(phin)[i]) <= 1e-12);
        }
    }
    SUBCASE("entries match the numeric matrix product on the circle") {
        std::mt19937_64 rng(0x6f70756334ull);
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t n =
                1 + static_cast<std::size_t>(testutil::uniform01(rng) * 9);
            const auto r = random_disk(rng, n, 0.9, true);
            const auto entries = matrix_product_polys(r);
            for (int i = 0; i < 20; ++i) {
                const Complex z = std::polar(1.0, testutil::uniform(rng, 0.0, 6.28));
                Mat2 acc{Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(-1.0, 0.0),
                         Complex(1.0, 0.0)};
                for (const Complex& rj : r)
                    acc = acc * transfer_matrix(rj, z);
                CHECK(dist(acc.m11, poly_eval(entries.m11, z)) <= 1e-12);
                CHECK(dist(acc.m12, poly_eval(entries.m12, z)) <= 1e-12);
                CHECK(dist(acc.m21, poly_eval(entries.m21, z)) <= 1e-12);
                CHECK(dist(acc.m22, poly_eval(entries.m22, z)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("g: ratio representation vs the automorphism fold") {
    SUBCASE("g(0) = 0 and the single-coefficient case") {
        std::mt19937_64 rng(0x6f70756335ull);
        const auto r = random_disk(rng, 6, 0.9, true);
        CHECK(dist(g_from_polys(r, Complex(0.0, 0.0)), Complex(0.0, 0.0)) <= 1e-14);

        const std::vector<Complex> one{Complex(0.45, -0.1)};
        for (int i = 0; i < 10; ++i) {
            const Complex z =
                std::polar(testutil::uniform01(rng), testutil::uniform(rng, 0.0, 6.28));
            CHECK(dist(g_from_polys(one, z), one[0] * z) <= 1e-14);
        }
    }
    SUBCASE("diagonal equality with eval_f") {
        std::mt19937_64 rng(0x6f70756336ull);
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t n =
                1 + static_cast<std::size_t>(testutil::uniform01(rng) * 9);
            const auto r = random_disk(rng, n, 0.9, trial % 2 == 0);
            const Complex z =
                std::polar(trial % 3 == 0 ? 1.0 : testutil::uniform01(rng),
                           testutil::uniform(rng, 0.0, 6.28));
            const std::vector<Complex> zs(n, z);
            CHECK(dist(g_from_polys(r, z), eval_f(r, zs)) <= 1e-12);
        }
    }
}

TEST_CASE("Herglotz transform") {
    CHECK(dist(herglotz_F(std::vector<Complex>{}, Complex(0.7, 0.1)), Complex(1.0, 0.0)) ==
          0.0);

    std::mt19937_64 rng(0x6f70756337ull);
    const auto r = random_disk(rng, 5, 0.8, true);
    CHECK(dist(herglotz_F(r, Complex(0.0, 0.0)), Complex(1.0, 0.0)) <= 1e-14);

    CHECK(dist(herglotz_F(std::vector<Complex>{Complex(0.5, 0.0)}, Complex(1.0, 0.0)),
               Complex(3.0, 0.0)) <= 1e-13);

    SUBCASE("positive real part on the disk") {
        for (int i = 0; i < 50; ++i) {
            const Complex z =
                std::polar(testutil::uniform01(rng), testutil::uniform(rng, 0.0, 6.28));
            CHECK(herglotz_F(r, z).real() > 0.0);
        }
    }
    SUBCASE("Taylor coefficients are twice the moments") {
        const std::vector<Complex> rr = random_disk(rng, 4, 0.7, false);
        const auto alpha = testutil::g_taylor(rr, 4);
        const auto m = alpha_to_moments(alpha);
        for (int j = 1; j <= 4; ++j) {
            const Complex fj = testutil::circle_coefficient(
                [&rr](Complex z) { return herglotz_F(rr, z); }, j);
            CHECK(dist(fj, 2.0 * m[static_cast<std::size_t>(j)]) <= 1e-10);
        }
        const Complex f0 = testutil::circle_coefficient(
            [&rr](Complex z) { return herglotz_F(rr, z); }, 0);
        CHECK(dist(f0, Complex(1.0, 0.0)) <= 1e-10);
    }
}

TEST_CASE("moments from Taylor coefficients") {
    SUBCASE("hand cases") {
        const Complex a(0.21, 0.05);
        const Complex b(-0.4, 0.1);
        const auto m1 = alpha_to_moments(std::vector<Complex>{a});
        REQUIRE(m1.size() == 2);
        CHECK(dist(m1[0], Complex(1.0, 0.0)) == 0.0);
        CHECK(dist(m1[1], a) == 0.0);

        const auto m2 = alpha_to_moments(std::vector<Complex>{a, b});
        REQUIRE(m2.size() == 3);
        CHECK(dist(m2[2], b + a * a) <= 1e-15);

        const auto m0 = alpha_to_moments(std::vector<Complex>(5, Complex(0.0, 0.0)));
        for (std::size_t j = 1; j < m0.size(); ++j)
            CHECK(dist(m0[j], Complex(0.0, 0.0)) == 0.0);
    }
    SUBCASE("back-substitution residual and modulus bound") {
        std::mt19937_64 rng(0x6f70756338ull);
        const auto r = random_disk(rng, 12, 0.9, false);
        const auto alpha = testutil::g_taylor(r, 12);
        const auto m = alpha_to_moments(alpha);
        CHECK(dist(m[0], Complex(1.0, 0.0)) == 0.0);
        for (std::size_t j = 1; j < m.size(); ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t i = 1; i <= j; ++i)
                acc += alpha[i - 1] * m[j - i];
            CHECK(dist(m[j], acc) <= 1e-13);
            CHECK(std::abs(m[j]) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("moment inner product") {
    std::mt19937_64 rng(0x6f70756339ull);
    const auto r = random_disk(rng, 8, 0.8, false);
    const auto m = alpha_to_moments(testutil::g_taylor(r, 8));

    SUBCASE("monomial values") {
        const Poly one{Complex(1.0, 0.0)};
        const Poly z{Complex(0.0, 0.0), Complex(1.0, 0.0)};
        CHECK(dist(moment_inner_product(m, one, one), Complex(1.0, 0.0)) == 0.0);
        CHECK(dist(moment_inner_product(m, z, one), std::conj(m[1])) == 0.0);
        CHECK(dist(moment_inner_product(m, one, z), m[1]) == 0.0);
    }
    SUBCASE("conjugate symmetry") {
        Poly p(4), q(3);
        for (auto& c : p)
            c = Complex(testutil::uniform(rng, -1.0, 1.0), testutil::uniform(rng, -1.0, 1.0));
        for (auto& c : q)
            c = Complex(testutil::uniform(rng, -1.0, 1.0), testutil::uniform(rng, -1.0, 1.0));
        CHECK(dist(moment_inner_product(m, p, q),
                   std::conj(moment_inner_product(m, q, p))) <= 1e-14);
    }
    SUBCASE("degree overflow is rejected") {
        const Poly p(10, Complex(1.0, 0.0));
        CHECK_THROWS_AS(moment_inner_product(m, p, p), ValidationError);
    }
    SUBCASE("orthogonality of the recurrence family") {
        const auto sz = szego_polynomials(r);
        for (std::size_t i = 0; i <= 8; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                CHECK(std::abs(moment_inner_product(m, sz.phi[i], sz.phi[j])) <= 1e-10);
            }
        }
    }
    SUBCASE("dual pairing equals the squared norm") {
        const auto sz = szego_polynomials(r);
        const Poly one{Complex(1.0, 0.0)};
        for (std::size_t j = 1; j <= 8; ++j) {
            const Complex lhs = moment_inner_product(m, dual(sz.phi[j]), one);
            const Complex rhs = moment_inner_product(m, sz.phi[j], sz.phi[j]);
            CHECK(dist(lhs, rhs) <= 1e-12);
            CHECK(std::abs(rhs) > 1e-6); // norms stay well away from zero
        }
    }
}

TEST_CASE("bivariate polynomial arithmetic") {
    const BivariatePoly zero;
    CHECK(zero.is_zero());
    CHECK(zero.coefficient(0, 0) == 0);

    const auto c2 = BivariatePoly::constant(Rational(2));
    const auto m11 = BivariatePoly::monomial(1, 1, Rational(-1));
    const auto s = c2 + m11; // 2 - zeta zetabar
    CHECK(s.coefficient(0, 0) == 2);
    CHECK(s.coefficient(1, 1) == -1);
    CHECK(s.degree_zeta() == 1);
    CHECK(s.degree_zetabar() == 1);

    const auto p = s * s; // 4 - 4 zeta zetabar + zeta^2 zetabar^2
    CHECK(p.coefficient(0, 0) == 4);
    CHECK(p.coefficient(1, 1) == -4);
    CHECK(p.coefficient(2, 2) == 1);

    const auto dz = p.d_zeta(); // -4 zetabar + 2 zeta zetabar^2
    CHECK(dz.coefficient(0, 1) == -4);
    CHECK(dz.coefficient(1, 2) == 2);
    const auto dzb = dz.d_zetabar(); // -4 + 4 zeta zetabar
    CHECK(dzb.coefficient(0, 0) == -4);
    CHECK(dzb.coefficient(1, 1) == 4);

    // eval binds zetabar = conj(zeta).
    const Complex zeta(0.3, 0.4);
    CHECK(dist(s.eval(zeta), Complex(2.0 - 0.25, 0.0)) <= 1e-15);
    CHECK(dist(p.scaled(Rational(1, 2)).eval(zeta), 0.5 * std::norm(Complex(2.0 - 0.25, 0.0))) <=
          1e-14);
}

TEST_CASE("weight polynomials") {
    SUBCASE("stated special cases") {
        CHECK(psi_polynomial(0, 0).coefficient(0, 0) == 1);
        CHECK(psi_polynomial(0, 0).degree_zeta() == 0);

        const auto p10 = psi_polynomial(1, 0);
        CHECK(p10.coefficient(1, 0) == 1);
        CHECK(p10.degree_zetabar() == 0);

        const auto p30 = psi_polynomial(3, 0);
        CHECK(p30.coefficient(3, 0) == 1);

        CHECK(psi_polynomial(-1, 2).is_zero());
        CHECK(psi_polynomial(2, -1).is_zero());
        CHECK(psi_polynomial(0, 2).is_zero());
    }
    SUBCASE("first nontrivial weight") {
        const auto p11 = psi_polynomial(1, 1);
        CHECK(p11.coefficient(0, 0) == 1);
        CHECK(p11.coefficient(1, 1) == -1);
        CHECK(p11.degree_zeta() == 1);
        const Complex zeta(0.3, 0.0);
        CHECK(dist(psi_eval(1, 1, zeta), Complex(0.91, 0.0)) <= 1e-15);
        CHECK(dist(psi_eval(1, 1, Complex(0.6, 0.8) * 0.5), Complex(0.75, 0.0)) <= 1e-15);
    }
    SUBCASE("psi_eval agrees with the polynomial it caches") {
        for (int p = 0; p <= 3; ++p) {
            for (int q = 0; q <= 3; ++q) {
                const auto poly = psi_polynomial(p, q);
                const Complex zeta(0.21, -0.35);
                CHECK(dist(psi_eval(p, q, zeta), poly.eval(zeta)) == 0.0);
            }
        }
    }
}

TEST_CASE("coefficient product formula") {
    SUBCASE("leading arrival reduces to the first reflectivity") {
        const std::vector<int> k{1, 0, 0};
        const std::vector<Complex> r{Complex(0.37, 0.0), Complex(-0.5, 0.0),
                                     Complex(0.2, 0.0)};
        CHECK(dist(fourier_coefficient_product(k, r), r[0]) <= 1e-15);

        const std::vector<int> k1{1};
        const std::vector<Complex> r1{Complex(-0.62, 0.0)};
        CHECK(dist(fourier_coefficient_product(k1, r1), r1[0]) <= 1e-15);
    }
    SUBCASE("two-layer hand product") {
        const std::vector<int> k{1, 1};
        const std::vector<Complex> r{Complex(0.3, 0.0), Complex(0.4, 0.0)};
        CHECK(dist(fourier_coefficient_product(k, r), Complex(0.364, 0.0)) <= 1e-15);
    }
    SUBCASE("malformed multi-indices are rejected") {
        const std::vector<Complex> r{Complex(0.3, 0.0), Complex(0.4, 0.0)};
        CHECK_THROWS_AS(fourier_coefficient_product(std::vector<int>{2, 1}, r),
                        ValidationError);
        CHECK_THROWS_AS(fourier_coefficient_product(std::vector<int>{1, -1}, r),
                        ValidationError);
        CHECK_THROWS_AS(fourier_coefficient_product(std::vector<int>{1}, r),
                        ValidationError);
        CHECK_THROWS_AS(
            fourier_coefficient_product(std::vector<int>{}, std::vector<Complex>{}),
            ValidationError);
    }
    SUBCASE("matches torus quadrature for two layers") {
        std::mt19937_64 rng(0x6f7075633aull);
        for (int trial = 0; trial < 3; ++trial) {
            const auto r = random_disk(rng, 2, 0.8, false);
            for (int k2 = 0; k2 <= 2; ++k2) {
                const Complex numeric = testutil::torus_coefficient2(
                    [&r](Complex z1, Complex z2) {
                        const std::vector<Complex> zs{z1, z2};
                        return eval_f(r, zs);
                    },
                    1, k2);
                const std::vector<int> k{1, k2};
                CHECK(dist(numeric, fourier_coefficient_product(k, r)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("Verblunsky round trip through moments") {
    // The reflectivity range shrinks with depth: the recursion's conditioning
    // and the Taylor-coefficient quadrature both degrade exponentially in the
    // summed atanh|r_j|, with a sharp double-precision cliff near 25-30.
    // These ranges are measured to leave >= 10x margin under the tolerance.
    std::mt19937_64 rng(0x6f7075633bull);
    struct Case {
        std::size_t n;
        double rmax;
    };
    for (const Case c : {Case{3, 0.9}, Case{12, 0.8}, Case{50, 0.35}}) {
        const auto r = random_disk(rng, c.n, c.rmax, false);
        const auto alpha = testutil::g_taylor(r, c.n);
        const auto m = alpha_to_moments(alpha);
        const auto back = moments_to_reflectivities(m, c.n);
        REQUIRE(back.size() == c.n);
        double worst = 0.0;
        for (std::size_t j = 0; j < c.n; ++j)
            worst = std::max(worst, dist(back[j], r[j]));
        CHECK(worst <= 1e-10);
    }
}
