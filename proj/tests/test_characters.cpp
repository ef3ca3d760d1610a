#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cubic/characters.hpp"

using namespace cubic;

namespace {

using cd = std::complex<double>;

bool close(cd a, cd b, double tol = 1e-10) { return std::abs(a - b) < tol; }

DirichletCharacter with_value(i64 m, i64 n, cd target) {
    for (const auto& chi : all_characters(m))
        if (close(chi(n), target)) return chi;
    throw std::logic_error("no such character");
}

}  // namespace

TEST_CASE("unit groups") {
    for (i64 m : {1, 2, 4, 8, 9, 16, 45, 91, 120, 343, 1000}) {
        UnitGroup g(m);
        i64 prod = 1;
        for (const auto& gen : g.generators()) prod *= gen.order;
        CHECK(prod == g.phi());
        for (i64 n = 1; n < m; ++n) {
            if (gcd64(n, m) != 1) continue;
            auto e = g.dlog(n);
            i64 back = 1 % m;
            for (size_t i = 0; i < e.size(); ++i) back = back * powmod(g.generators()[i].value, e[i], m) % m;
            CHECK(back == n);
        }
    }
}

TEST_CASE("character values") {
    CHECK(DirichletCharacter().value(12345).complex() == cd(1, 0));
    const cd w = std::polar(1.0, 2 * std::numbers::pi / 3);
    auto chi = with_value(7, 3, w);
    CHECK(close(chi(2), w * w));  // 2 = 3^2 mod 7
    CHECK(chi.order() == 3);
    for (const auto& c : all_characters(12)) {
        CHECK(c.value(2).zero);
        CHECK(c.value(9).zero);
    }
    CHECK(evaluate(chi, 14).zero);
}

TEST_CASE("orthogonality") {
    for (i64 m = 1; m <= 100; ++m) {
        auto chars = all_characters(m);
        CHECK(static_cast<i64>(chars.size()) == UnitGroup(m).phi());
        for (const auto& chi : chars) {
            cd s = 0;
            for (i64 a = 0; a < m; ++a) s += chi(a);
            CHECK(close(s, chi.is_trivial() ? cd(static_cast<double>(UnitGroup(m).phi()), 0) : cd(0, 0), 1e-8));
        }
        if (m % 7 != 0 && m > 30) continue;  // the double sum is quadratic in phi(m)
        for (i64 a = 1; a < m; ++a)
            for (i64 b = 1; b < m; ++b) {
                if (gcd64(a, m) != 1 || gcd64(b, m) != 1) continue;
                cd s = 0;
                for (const auto& chi : chars) s += chi(a) * std::conj(chi(b));
                CHECK(close(s, a == b ? cd(static_cast<double>(chars.size()), 0) : cd(0, 0), 1e-8));
            }
    }
}

TEST_CASE("conductors and primitive characters") {
    for (i64 m : {12, 45, 63, 91, 100}) {
        for (const auto& chi : all_characters(m)) {
            auto prim = chi.primitive();
            CHECK(prim.modulus() == chi.conductor());
            CHECK(m % chi.conductor() == 0);
            CHECK(prim.is_primitive());
            for (i64 n = 1; n < m; ++n)
                if (gcd64(n, m) == 1) CHECK(close(prim(n), chi(n)));
        }
    }
    CHECK(DirichletCharacter::trivial(9).conductor() == 1);
}

TEST_CASE("order six characters") {
    CHECK(enumerate_order6_characters(5).size() == 1);
    CHECK(enumerate_order6_characters(7).size() == 3);
    CHECK(enumerate_order6_characters(91).size() == 9);
    CHECK(enumerate_order6_characters(9).size() == 3);   // trivial and the two cubic characters of conductor 9
    CHECK(enumerate_order6_characters(3).size() == 1);
    for (const auto& chi : enumerate_order6_characters(91)) {
        CHECK(chi.is_primitive());
        for (i64 p : {7, 13})
            if (chi.modulus() % p == 0) CHECK(chi.local_component(p).order() == 6);
    }
}

TEST_CASE("gauss sums") {
    for (i64 p : {5, 7, 13, 31}) {
        for (const auto& chi : all_characters(p)) {
            if (chi.is_trivial()) continue;
            cd g = gauss_sum(chi);
            CHECK(std::abs(g) == doctest::Approx(std::sqrt(static_cast<double>(p))).epsilon(1e-12));
            CHECK(close(gauss_sum(chi.conj()), chi(-1) * std::conj(g)));
        }
    }
    // exact cyclotomic evaluation for the cubic character mod 7: with w = e(1/3) and z = e(1/7),
    // tau = sum_k chi(3^k) z^{3^k}; collect the exponents of z attached to 1, w, w^2
    const cd w = std::polar(1.0, 2 * std::numbers::pi / 3);
    auto chi = with_value(7, 3, w);
    auto z = [](i64 k) { return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / 7); };
    // cubes mod 7 are {1, 6}; 3 * cubes = {3, 4}; 9 * cubes = {2, 5}
    cd exact = (z(1) + z(6)) + w * (z(3) + z(4)) + w * w * (z(2) + z(5));
    CHECK(close(gauss_sum(chi), exact, 1e-13));
}

TEST_CASE("sextic decomposition") {
    auto triv = decompose_sextic(DirichletCharacter::trivial(7));
    CHECK(triv.psi.is_trivial());
    CHECK(triv.phi.is_trivial());
    for (const auto& chi : all_characters(7)) {
        if (chi.order() != 6) continue;
        auto parts = decompose_sextic(chi);
        CHECK(parts.psi.order() == 3);
        CHECK(parts.phi.order() == 2);
        for (i64 n = 1; n < 7; ++n) CHECK(close(parts.psi(n) * parts.phi(n), chi(n)));
    }
    for (const auto& chi : all_characters(11))
        if (chi.order() == 5) CHECK_THROWS_AS(decompose_sextic(chi), std::domain_error);
}
