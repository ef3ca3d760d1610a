#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cubic/lfunctions.hpp"
#include "cubic/predictor.hpp"

using namespace cubic;

namespace {

const double kPi = std::numbers::pi;

std::vector<i64> primes_upto(i64 n) {
    std::vector<bool> comp(static_cast<size_t>(n + 1));
    std::vector<i64> out;
    for (i64 i = 2; i <= n; ++i) {
        if (comp[static_cast<size_t>(i)]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
    }
    return out;
}

// Trivial-character term of the secondary AP constant for m prime to 2.
double trivial_k1_term(i64 m) {
    double t = riemann_zeta(1.0 / 3) / riemann_zeta(5.0 / 3);
    for (const auto& f : factor(m)) {
        double p = static_cast<double>(f.p);
        t *= (1 - std::pow(p, -4.0 / 3)) / ((1 - std::pow(p, -5.0 / 3)) * (1 + 1 / p));
    }
    return t;
}

i64 phi(i64 m) { return UnitGroup(m).phi(); }

}  // namespace

TEST_CASE("roberts constants") {
    auto p = roberts_terms(Sign::plus), m = roberts_terms(Sign::minus);
    CHECK(m.A / p.A == doctest::Approx(3).epsilon(1e-15));
    CHECK(m.B / p.B == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(p.B < 0);
    CHECK(m.B < 0);
    CHECK(p.A == doctest::Approx(1 / (12 * zeta3())));
    CHECK(p.B == doctest::Approx(4 * riemann_zeta(1.0 / 3) / (5 * gamma23_cubed() * riemann_zeta(5.0 / 3))));
    CHECK(roberts_K(Sign::minus) == doctest::Approx(std::sqrt(3.0) * roberts_K(Sign::plus)));
}

TEST_CASE("local densities") {
    CHECK(local_density({Kind::TotallySplit, 0}, 5, DensityPoint::One).real() ==
          doctest::Approx((1.0 / 6) / (1 + 1.0 / 5 + 1.0 / 25)));
    CHECK(local_density({Kind::Inert, 0}, 7, DensityPoint::FiveSixths).real() ==
          doctest::Approx(((1 + 1.0 / 7) / 3) / density_normalizer(7, DensityPoint::FiveSixths).real()));
    for (i64 p : {2, 3, 5, 7, 11, 13}) {
        for (auto at : {DensityPoint::One, DensityPoint::FiveSixths}) {
            std::complex<double> sum = 0;
            for (const auto& r : local_rows(p)) sum += local_density(r.symbol, p, at);
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
    // p dividing the conductor of a sextic character
    for (const auto& chi : all_characters(7)) {
        if (chi.order() != 6) continue;
        auto psi = chi.pow(-2);
        auto got = local_density({Kind::TotallySplit, 0}, 7, DensityPoint::FiveSixths, &psi);
        auto want = gauss_sum(chi.pow(2)) / (6.0 * 49 * (1 + 1.0 / 7));
        CHECK(std::abs(got - want) < 1e-12);
    }
    CHECK_THROWS(local_density({Kind::PartiallyRamified, 3}, 5, DensityPoint::One));
}

TEST_CASE("local specification constants") {
    CHECK(spec_terms(Sign::plus, {}).A == doctest::Approx(roberts_terms(Sign::plus).A).epsilon(1e-15));
    CHECK(spec_terms(Sign::minus, {}).B == doctest::Approx(roberts_terms(Sign::minus).B).epsilon(1e-15));

    std::vector<LocalSpec> S{parse_spec("7:inert"), parse_spec("5:partially_ramified")};
    auto t = spec_terms(Sign::plus, S);
    double CS = t.A * 12 * zeta3();
    double KS = t.B * 5 * gamma23_cubed() * riemann_zeta(5.0 / 3) / (4 * riemann_zeta(1.0 / 3));
    CHECK(CS == doctest::Approx(245.0 / 5301).epsilon(1e-12));
    CHECK(std::abs(CS - 0.046217) < 1e-6);
    CHECK(std::abs(KS - 0.030884) < 1e-6);
    CHECK(std::abs(t.main_at(2e6) - 6408.0) < 0.2);
    CHECK(std::abs(t.secondary_at(2e6) + 812.7) < 0.1);
    CHECK(round_half_away(t.at(2e6)) == 5595);
}

TEST_CASE("progression constants mod 7, 49, 343") {
    auto near = [](double x, double y) { return std::abs(x - y) < 1e-6; };
    CHECK(near(ap_folded(7, 1).C1, 0.00993261));
    CHECK(near(ap_folded(7, 5).K1, -0.0101147));
    CHECK(near(ap_folded(7, 2).K1, -0.0313625));
    CHECK(near(ap_folded(49, 21).C1, 0.00141894));
    CHECK(near(ap_folded(49, 21).K1, -0.00159849));
    CHECK(near(ap_folded(343, 49).C1, 0.000405412));
    CHECK(near(ap_folded(343, 49).K1, -0.000664801));
    for (i64 u : {3, 5, 6}) {
        CHECK(ap_folded(343, 49 * u).C1 == 0);
        CHECK(ap_folded(343, 49 * u).K1 == 0);
    }
    CHECK(ap_constants(91, 5).K1 > 0);

    const i64 plus7[] = {17209, 14277, 15316, 17024, 18063, 15131};
    for (i64 a = 1; a < 7; ++a) CHECK(round_half_away(ap_terms(7, a, Sign::plus).at(2e6)) == plus7[a - 1]);
    const i64 minus7[] = {27216, 24366, 25376, 27036, 28046, 25196};
    for (i64 a = 1; a < 7; ++a) CHECK(round_half_away(ap_terms(7, a, Sign::minus).at(1e6)) == minus7[a - 1]);
}

TEST_CASE("character sums collapse to the trivial term") {
    for (i64 m : {7, 9, 13, 91}) {
        double k = 0, c = 0;
        for (i64 a = 1; a < m; ++a) {
            if (gcd64(a, m) != 1) continue;
            auto ap = ap_constants(m, a);
            k += ap.K1;
            c += ap.C1;
        }
        CHECK(std::abs(k - trivial_k1_term(m)) < 1e-8);
        double euler = 1;
        for (const auto& f : factor(m)) euler /= 1 - std::pow(static_cast<double>(f.p), -3);
        CHECK(std::abs(c - euler * static_cast<double>(phi(m)) / static_cast<double>(m)) < 1e-12);
    }
}

TEST_CASE("progressions partition the full count") {
    for (Sign s : {Sign::plus, Sign::minus})
        for (i64 m : {5, 7, 49}) {
            double total = 0;
            for (i64 a = 0; a < m; ++a) total += ap_terms(m, a, s).at(2e6);
            CHECK(total == doctest::Approx(roberts_terms(s).at(2e6)).epsilon(1e-12));
        }
    // odd discriminants are 1 mod 4, and a field is unramified at 2 with density 4/7
    CHECK(ap_terms(28, 3, Sign::plus).A == 0);
    CHECK(ap_terms(28, 1, Sign::plus).A == doctest::Approx(ap_terms(7, 1, Sign::plus).A * 4 / 7));
    CHECK_THROWS_AS(ap_terms(8, 1, Sign::plus), not_implemented_error);
    CHECK_THROWS_AS(ap_terms(35, 5, Sign::plus), not_implemented_error);
}

TEST_CASE("torsion Euler product") {
    // independent product over primes up to 10^7 with no tail term
    const i64 P = 10000000;
    double log_prod = 0;
    for (i64 p : primes_upto(P)) {
        double q = static_cast<double>(p);
        log_prod += std::log1p(-(std::cbrt(q) + 1) / (q * (q + 1)));
    }
    PredictorConfig raw;
    raw.prime_cutoff = P;
    raw.tail_correction = false;
    auto e = torsion_euler_product(nullptr, 1, raw);
    CHECK(std::log(e.value.real()) == doctest::Approx(log_prod).epsilon(1e-12));

    // the tail estimate at 10^5 lands within its bound of the longer product, and closer than the raw product
    auto corrected = torsion_euler_product(nullptr, 1);
    PredictorConfig short_raw;
    short_raw.tail_correction = false;
    auto truncated = torsion_euler_product(nullptr, 1, short_raw);
    CHECK(std::abs(std::log(corrected.value.real()) - log_prod) < corrected.tail_bound);
    CHECK(std::abs(std::log(corrected.value.real()) - log_prod) < std::abs(std::log(truncated.value.real()) - log_prod));
}

TEST_CASE("torsion terms") {
    auto p = torsion_terms(Sign::plus, {}), m = torsion_terms(Sign::minus, {});
    CHECK(m.A / p.A == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(p.A == doctest::Approx(4 / (kPi * kPi)));
    // frozen from the tail-corrected product at 10^5
    CHECK(p.at(1e6) == doctest::Approx(381337.2936).epsilon(1e-9));
    CHECK(m.at(1e6) == doctest::Approx(566448.9173).epsilon(1e-9));

    const i64 mod5[] = {126942, 160239, 160239, 160239, 160239};
    for (i64 a = 0; a < 5; ++a) CHECK(round_half_away(torsion_ap_terms(5, a, Sign::plus).at(2e6)) == mod5[a]);

    // residues 0..6 together give the unrestricted prediction
    for (Sign s : {Sign::plus, Sign::minus}) {
        double total = 0;
        for (i64 a = 0; a < 7; ++a) total += torsion_ap_terms(7, a, s).at(2e6);
        CHECK(total == doctest::Approx(torsion_terms(s, {}).at(2e6)).epsilon(1e-10));
    }
    CHECK_THROWS(torsion_ap_terms(9, 1, Sign::plus));
}

TEST_CASE("torsion local specifications") {
    CHECK(parse_quadratic_type("inert") == QuadraticType::Inert);
    CHECK_THROWS(parse_quadratic_type("bogus"));
    auto inert = torsion_spec(5, QuadraticType::Inert);
    REQUIRE(inert.allowed.size() == 1);
    CHECK(inert.allowed[0].kind == Kind::PartiallySplit);
    auto split = torsion_spec(5, QuadraticType::Split);
    CHECK(split.allowed.size() == 2);
    CHECK_THROWS(torsion_terms(Sign::plus, {parse_spec("5:totally_ramified")}));

    // the three quadratic behaviours at p add up to the unrestricted constants
    for (Sign s : {Sign::plus, Sign::minus}) {
        double A = 0, B = 0;
        for (auto t : {QuadraticType::Split, QuadraticType::Inert, QuadraticType::Ramified}) {
            auto x = torsion_terms(s, {torsion_spec(7, t)});
            A += x.A;
            B += x.B;
        }
        auto all = torsion_terms(s, {});
        CHECK(A == doctest::Approx(all.A).epsilon(1e-12));
        CHECK(B == doctest::Approx(all.B).epsilon(1e-9));
    }
}
