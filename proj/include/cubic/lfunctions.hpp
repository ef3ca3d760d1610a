#ifndef CUBIC_LFUNCTIONS_HPP
#define CUBIC_LFUNCTIONS_HPP

#include <complex>
#include <vector>

#include "cubic/characters.hpp"

namespace cubic {

struct SpecialValueConfig {
    int cutoff = 64;            // terms summed before the Euler-Maclaurin tail
    int bernoulli_terms = 4;    // B2 .. B8
    double tolerance = 1e-12;
};

// sum_{n >= 0} (n + x)^{-s}, continued to s < 1. Throws std::domain_error at s = 1.
double hurwitz_zeta(double s, double x, const SpecialValueConfig& cfg = {});

// Bound on the first omitted Euler-Maclaurin term.
double hurwitz_remainder_bound(double s, double x, const SpecialValueConfig& cfg = {});

double riemann_zeta(double s);

// L(s, chi) = m^{-s} sum_a chi(a) zeta(s, a/m). Valid for imprimitive chi as the Dirichlet series.
std::complex<double> dirichlet_l(double s, const DirichletCharacter& chi);

// Same, for a table of values chi(0..m-1).
std::complex<double> dirichlet_l(double s, const std::vector<std::complex<double>>& values);

// Gamma(1/3) and Gamma(2/3); other arguments are passed to std::tgamma.
double gamma_value(double x);

}  // namespace cubic

#endif
