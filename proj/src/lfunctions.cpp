#include "cubic/lfunctions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cubic {

namespace {

// B_{2k} / (2k)!
constexpr long double kBernoulliOverFactorial[] = {
    1.0L / 12.0L,                 // B2 / 2!
    -1.0L / 720.0L,               // B4 / 4!
    1.0L / 30240.0L,              // B6 / 6!
    -1.0L / 1209600.0L,           // B8 / 8!
    1.0L / 47900160.0L,           // B10 / 10!
    -691.0L / 1307674368000.0L,   // B12 / 12!
};

}  // namespace

double hurwitz_zeta(double s, double x, const SpecialValueConfig& cfg) {
    if (s == 1.0) throw std::domain_error("hurwitz_zeta has a pole at s = 1");
    if (!(x > 0.0)) throw std::domain_error("hurwitz_zeta needs x > 0");
    int terms = std::min(cfg.bernoulli_terms, 6);
    long double S = s, sum = 0;
    for (int n = 0; n < cfg.cutoff; ++n) sum += std::pow(static_cast<long double>(n) + x, -S);
    long double a = static_cast<long double>(cfg.cutoff) + x;
    sum += std::pow(a, 1 - S) / (S - 1) + 0.5L * std::pow(a, -S);
    // rising factorial s (s+1) ... (s + 2k - 2) times a^{-s-2k+1}
    long double rising = S, power = std::pow(a, -S - 1);
    for (int k = 1; k <= terms; ++k) {
        sum += kBernoulliOverFactorial[k - 1] * rising * power;
        rising *= (S + 2 * k - 1) * (S + 2 * k);
        power /= a * a;
    }
    return static_cast<double>(sum);
}

double hurwitz_remainder_bound(double s, double x, const SpecialValueConfig& cfg) {
    int k = std::min(cfg.bernoulli_terms, 5) + 1;
    long double a = static_cast<long double>(cfg.cutoff) + x;
    long double rising = 1;
    for (int j = 0; j < 2 * k - 1; ++j) rising *= s + j;
    return static_cast<double>(std::fabs(kBernoulliOverFactorial[k - 1] * rising) * std::pow(a, -s - 2 * k + 1));
}

double riemann_zeta(double s) {
    if (s == 2.0) return std::numbers::pi * std::numbers::pi / 6.0;
    return hurwitz_zeta(s, 1.0);
}

std::complex<double> dirichlet_l(double s, const std::vector<std::complex<double>>& values) {
    const auto m = static_cast<i64>(values.size());
    if (m == 1) return riemann_zeta(s);
    std::complex<long double> sum = 0;
    for (i64 a = 1; a <= m; ++a) {
        auto v = values[static_cast<size_t>(a % m)];
        if (v == 0.0) continue;
        long double h = hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(m));
        sum += std::complex<long double>(v.real(), v.imag()) * h;
    }
    long double scale = std::pow(static_cast<long double>(m), -static_cast<long double>(s));
    return {static_cast<double>(sum.real() * scale), static_cast<double>(sum.imag() * scale)};
}

std::complex<double> dirichlet_l(double s, const DirichletCharacter& chi) {
    i64 m = chi.modulus();
    if (m == 1) return riemann_zeta(s);
    std::vector<std::complex<double>> values(static_cast<size_t>(m));
    for (i64 a = 0; a < m; ++a) values[static_cast<size_t>(a)] = chi(a);
    return dirichlet_l(s, values);
}

double gamma_value(double x) { return std::tgamma(x); }

}  // namespace cubic
