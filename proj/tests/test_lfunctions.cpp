#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cubic/characters.hpp"
#include "cubic/lfunctions.hpp"

using namespace cubic;

namespace {

using cd = std::complex<double>;

// Convergent sum for s > 1 with an integral tail estimate.
double direct_hurwitz(double s, double x, long n = 2000000) {
    double sum = 0;
    for (long k = n - 1; k >= 0; --k) sum += std::pow(static_cast<double>(k) + x, -s);
    double N = static_cast<double>(n) + x;
    return sum + std::pow(N, 1 - s) / (s - 1) + 0.5 * std::pow(N, -s);
}

}  // namespace

TEST_CASE("hurwitz zeta") {
    for (double s : {1.0 / 3, 5.0 / 3, 2.0, 3.0}) CHECK(hurwitz_zeta(s, 1) == doctest::Approx(riemann_zeta(s)).epsilon(1e-14));
    CHECK(hurwitz_zeta(5.0 / 3, 0.5) == doctest::Approx(direct_hurwitz(5.0 / 3, 0.5)).epsilon(1e-9));
    CHECK(hurwitz_zeta(1.0 / 3, 1) == doctest::Approx(-0.9733602484).epsilon(1e-9));
    CHECK_THROWS_AS(hurwitz_zeta(1, 0.5), std::domain_error);

    // stability under doubling the summation cutoff
    SpecialValueConfig a, b;
    b.cutoff = 2 * a.cutoff;
    for (double s : {0.25, 1.0 / 3, 0.9, 1.1, 5.0 / 3, 3.0})
        for (double x : {0.01, 0.1, 1.0 / 3, 0.5, 1.0}) {
            CHECK(std::abs(hurwitz_zeta(s, x, a) - hurwitz_zeta(s, x, b)) < 1e-12);
            CHECK(hurwitz_remainder_bound(s, x, a) < 1e-12);
        }
}

TEST_CASE("riemann zeta") {
    CHECK(riemann_zeta(2) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-15));
    CHECK(riemann_zeta(3) == doctest::Approx(direct_hurwitz(3, 1)).epsilon(1e-10));
    double z53 = riemann_zeta(5.0 / 3);
    CHECK(z53 > 1.6449);
    CHECK(z53 < 2.6124);
    CHECK(z53 == doctest::Approx(direct_hurwitz(5.0 / 3, 1)).epsilon(1e-9));
}

TEST_CASE("dirichlet L-values") {
    CHECK(std::abs(dirichlet_l(1.0 / 3, DirichletCharacter()) - riemann_zeta(1.0 / 3)) < 1e-14);
    for (const auto& chi : all_characters(7)) {
        if (chi.order() != 3) continue;
        for (double s : {1.0 / 3, 5.0 / 3}) CHECK(std::abs(dirichlet_l(s, chi.conj()) - std::conj(dirichlet_l(s, chi))) < 1e-12);
        // convergent series at 5/3, tail bounded by the partial sums of a character mod 7
        cd direct = 0;
        const long n = 7 * 400000;
        for (long k = 1; k <= n; ++k) direct += chi(k) * std::pow(static_cast<double>(k), -5.0 / 3);
        CHECK(std::abs(dirichlet_l(5.0 / 3, chi) - direct) < 1e-8);
    }
}

TEST_CASE("L-values contract to hurwitz values under orthogonality") {
    // sum over chi mod m of L(s, chi) conj(chi)(1) = phi(m) m^{-s} zeta(s, 1/m)
    for (i64 m : {5, 7, 9}) {
        cd sum = 0;
        auto chars = all_characters(m);
        for (const auto& chi : chars) sum += dirichlet_l(5.0 / 3, chi);
        double expect = static_cast<double>(chars.size()) * std::pow(static_cast<double>(m), -5.0 / 3) *
                        hurwitz_zeta(5.0 / 3, 1.0 / static_cast<double>(m));
        CHECK(std::abs(sum - expect) < 1e-10);
    }
}

TEST_CASE("gamma values") {
    CHECK(gamma_value(1.0 / 3) * gamma_value(2.0 / 3) == doctest::Approx(2 * std::numbers::pi / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(std::pow(gamma_value(2.0 / 3), 3) == doctest::Approx(std::pow(std::tgamma(2.0 / 3), 3)).epsilon(1e-12));
    CHECK(gamma_value(2.0 / 3) == doctest::Approx(1.3541179394264004169).epsilon(1e-15));
}
