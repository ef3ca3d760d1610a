#include "cubic/predictor.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace cubic {

namespace {

using cd = std::complex<double>;

double pw(double p, double e) { return std::pow(p, e); }

// Primes up to at least n; the cached list may run further, so callers stop at n themselves.
std::shared_ptr<const std::vector<i64>> primes_to(i64 n) {
    static std::mutex mu;
    static std::shared_ptr<const std::vector<i64>> primes = std::make_shared<std::vector<i64>>();
    static i64 limit = 0;
    std::lock_guard lock(mu);
    if (n > limit) {
        std::vector<char> sieve(static_cast<size_t>(n + 1), 1);
        auto fresh = std::make_shared<std::vector<i64>>();
        for (i64 i = 2; i <= n; ++i) {
            if (!sieve[static_cast<size_t>(i)]) continue;
            fresh->push_back(i);
            for (i64 j = i * i; j <= n; j += i) sieve[static_cast<size_t>(j)] = 0;
        }
        primes = std::move(fresh);
        limit = n;
    }
    return primes;
}

cd chi_at(const DirichletCharacter* chi, i64 n) { return chi ? (*chi)(n) : cd(1.0); }

bool divides_modulus(const DirichletCharacter* chi, i64 p) { return chi && chi->modulus() % p == 0; }

i64 primitive_root(i64 p) { return UnitGroup(p).generators().front().local % p; }

// E1(x) = int_x^inf e^-t / t dt
double expint_e1(double x) { return -std::expint(-x); }

cd ratio_13_53(const DirichletCharacter& chi) {
    auto lower = chi.pow(-2).primitive();
    auto upper = chi.pow(2).primitive();
    return dirichlet_l(1.0 / 3.0, lower) / dirichlet_l(5.0 / 3.0, upper);
}

double zeta_ratio() { return riemann_zeta(1.0 / 3.0) / riemann_zeta(5.0 / 3.0); }

double prod_inverse(i64 m, double power) {
    double v = 1;
    for (const auto& f : factor(m)) v /= 1 - pw(static_cast<double>(f.p), -power);
    return v;
}

i64 euler_phi(i64 m) {
    i64 v = m;
    for (const auto& f : factor(m)) v = v / f.p * (f.p - 1);
    return v;
}

int legendre(i64 a, i64 p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace

double PredictionTerms::secondary_at(double X) const { return B * std::pow(X, 5.0 / 6.0); }
double PredictionTerms::at(double X) const { return main_at(X) + secondary_at(X); }

double zeta3() { return riemann_zeta(3.0); }
double gamma23_cubed() {
    double g = gamma_value(2.0 / 3.0);
    return g * g * g;
}
double roberts_C(Sign s) { return s == Sign::plus ? 1.0 : 3.0; }
double roberts_K(Sign s) { return s == Sign::plus ? 1.0 : std::sqrt(3.0); }

PredictionTerms roberts_terms(Sign sign) {
    PredictionTerms t;
    t.A = roberts_C(sign) / (12 * zeta3());
    t.B = roberts_K(sign) * 4 * riemann_zeta(1.0 / 3.0) / (5 * gamma23_cubed() * riemann_zeta(5.0 / 3.0));
    t.descriptor = "cubic fields, sign " + sign_name(sign);
    return t;
}

std::complex<double> raw_local_density(const SplittingSymbol& s, i64 p, DensityPoint at,
                                       const DirichletCharacter* chi) {
    const LocalRow& row = local_row(p, s);
    const double P = static_cast<double>(p);
    if (at == DensityPoint::One) {
        switch (s.kind) {
            case Kind::TotallySplit: return 1.0 / 6;
            case Kind::PartiallySplit: return 1.0 / 2;
            case Kind::Inert: return 1.0 / 3;
            case Kind::PartiallyRamified: return row.multiplier / P;
            case Kind::TotallyRamified: return row.multiplier / (P * P);
        }
    }
    if (!divides_modulus(chi, p)) {
        const cd c = chi_at(chi, p);
        const double u = pw(P, -1.0 / 3);
        switch (s.kind) {
            case Kind::TotallySplit: return std::pow(1.0 + c * u, 3) / 6.0;
            case Kind::PartiallySplit: return (1.0 + c * u) * (1.0 + c * c * u * u) / 2.0;
            case Kind::Inert: return (1 + 1 / P) / 3;
            case Kind::PartiallyRamified: return row.multiplier * std::pow(1.0 + c * u, 2) / P;
            case Kind::TotallyRamified: return row.multiplier * (1.0 + c * u) / (P * P);
        }
    }
    // p divides the conductor of the cubic twist
    if (chi->order() != 3) throw std::domain_error("twisted densities at p | cond need a cubic character");
    const DirichletCharacter local = chi->local_component(p);
    const DirichletCharacter rest = chi->away_from(p);
    const cd rest_p = rest(p);
    if (p != 3) {
        const cd tau = gauss_sum(local.pow(2));
        switch (s.kind) {
            case Kind::TotallySplit: return tau / (6 * P * P);
            case Kind::PartiallySplit: return -tau / (2 * P * P);
            case Kind::Inert: return tau / (3 * P * P);
            case Kind::PartiallyRamified: return row.multiplier * local(4) * rest_p * pw(P, -4.0 / 3);
            case Kind::TotallyRamified: {
                cd v = local(powmod(primitive_root(p), s.subtype - 1, p));
                return (v * v + v * rest_p * pw(P, -1.0 / 3)) / (3 * P * P);
            }
        }
    }
    // p = 3, conductor 9 component
    switch (s.kind) {
        case Kind::TotallySplit: return local(4) / 18.0;
        case Kind::PartiallySplit: return local(4) / 6.0;
        case Kind::Inert: return local(4) / 9.0;
        case Kind::PartiallyRamified: {
            cd v = (1.0 - local(2)) * rest_p * pw(3, -7.0 / 3);
            return s.subtype == 1 ? v : -v;
        }
        case Kind::TotallyRamified: {
            static const i64 us[] = {1, 4, 7};
            switch (s.subtype) {
                case 1: return (local(4) - 1.0) / 81.0;
                case 2: return (2.0 * local(4) + 1.0) / 81.0;
                case 3: return local(2) * rest_p * pw(3, -13.0 / 3);
                case 4: case 5: case 6: return (local(us[s.subtype - 4]) + rest_p * pw(3, -1.0 / 3)) / 243.0;
                default: return local(us[s.subtype - 7]) * rest_p * pw(3, -16.0 / 3);
            }
        }
    }
    throw std::domain_error("unknown ring type");
}

std::complex<double> density_normalizer(i64 p, DensityPoint at, const DirichletCharacter* chi,
                                        DensityFamily family) {
    const double P = static_cast<double>(p);
    if (at == DensityPoint::One) return family == DensityFamily::Fields ? 1 + 1 / P + 1 / (P * P) : 1 + 1 / P;
    if (divides_modulus(chi, p)) return 1 + 1 / P;
    const cd c = chi_at(chi, p);
    const double u = pw(P, -1.0 / 3);
    if (family == DensityFamily::Fields) return (1.0 - c * c * pw(P, -5.0 / 3)) * (1 + 1 / P) / (1.0 - c * u);
    return 1.0 + c * u + c * c * u * u + 2 / P + 2.0 * c * pw(P, -4.0 / 3) + c * c * pw(P, -5.0 / 3);
}

std::complex<double> local_density(const SplittingSymbol& s, i64 p, DensityPoint at, const DirichletCharacter* chi,
                                   DensityFamily family) {
    if (family == DensityFamily::Torsion && s.kind == Kind::TotallyRamified)
        throw std::domain_error("totally ramified rings carry no 3-torsion density");
    return raw_local_density(s, p, at, chi) / density_normalizer(p, at, chi, family);
}

std::complex<double> spec_density(const LocalSpec& spec, DensityPoint at, const DirichletCharacter* chi,
                                  DensityFamily family) {
    cd total = 0;
    for (const auto& row : local_rows(spec.p)) {
        if (!spec.admits(row.symbol)) continue;
        total += local_density(row.symbol, spec.p, at, chi, family);
    }
    return total;
}

PredictionTerms spec_terms(Sign sign, const std::vector<LocalSpec>& specs) {
    PredictionTerms t = roberts_terms(sign);
    std::string names;
    for (const auto& s : merge_specs(specs)) {
        t.A *= spec_density(s, DensityPoint::One).real();
        t.B *= spec_density(s, DensityPoint::FiveSixths).real();
        names += (names.empty() ? "" : " ") + s.str();
    }
    if (!names.empty()) t.descriptor += ", specs " + names;
    return t;
}

EulerProduct torsion_euler_product(const DirichletCharacter* chi2, i64 m, const PredictorConfig& cfg) {
    EulerProduct e;
    e.cutoff = cfg.prime_cutoff;
    const bool trivial = chi2 == nullptr || chi2->is_trivial();
    cd logsum = 0;
    const auto primes = primes_to(cfg.prime_cutoff);
    for (i64 p : *primes) {
        if (p > cfg.prime_cutoff) break;
        if (m % p == 0) continue;
        const double P = static_cast<double>(p);
        cd c = trivial ? cd(1.0) : (*chi2)(p);
        logsum += std::log(1.0 - (c * std::cbrt(P) + 1.0) / (P * (P + 1)));
    }
    const double L = std::log(static_cast<double>(cfg.prime_cutoff));
    // primes above the cutoff, counted with density 1/log t; only the p^{-2} part survives a nontrivial twist
    e.tail_estimate = -(trivial ? expint_e1(2.0 / 3.0 * L) : 0.0) - expint_e1(L);
    const double Pc = static_cast<double>(cfg.prime_cutoff);
    // sum over all integers n > cutoff of n^{-5/3} + n^{-2}, plus the second-order log term
    e.tail_bound = 1.5 * std::pow(Pc, -2.0 / 3.0) + 1 / Pc + std::pow(Pc, -4.0 / 3.0);
    if (cfg.tail_correction) logsum += e.tail_estimate;
    e.value = std::exp(logsum);
    return e;
}

QuadraticType parse_quadratic_type(const std::string& s) {
    if (s == "split" || s == "totally_split") return QuadraticType::Split;
    if (s == "inert") return QuadraticType::Inert;
    if (s == "ramified" || s == "partially_ramified") return QuadraticType::Ramified;
    throw std::invalid_argument("unknown quadratic splitting '" + s + "'");
}

LocalSpec torsion_spec(i64 p, QuadraticType t, int subtype) {
    switch (t) {
        case QuadraticType::Split: return make_spec(p, {{Kind::TotallySplit, 0}, {Kind::Inert, 0}});
        case QuadraticType::Inert: return make_spec(p, {{Kind::PartiallySplit, 0}});
        case QuadraticType::Ramified: return make_spec(p, {{Kind::PartiallyRamified, subtype}});
    }
    throw std::invalid_argument("bad quadratic type");
}

PredictionTerms torsion_terms(Sign sign, const std::vector<LocalSpec>& specs, const PredictorConfig& cfg) {
    for (const auto& s : specs)
        for (const auto& a : s.allowed)
            if (a.kind == Kind::TotallyRamified) throw std::invalid_argument("torsion specs cannot admit total ramification");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    PredictionTerms t;
    t.descriptor = "3-torsion, sign " + sign_name(sign);
    t.A = (3 + roberts_C(sign)) / pi2;
    auto E = torsion_euler_product(nullptr, 1, cfg);
    t.B = roberts_K(sign) * 8 * riemann_zeta(1.0 / 3.0) / (5 * gamma23_cubed()) * E.value.real();
    for (const auto& s : merge_specs(specs)) {
        t.A *= spec_density(s, DensityPoint::One, nullptr, DensityFamily::Torsion).real();
        t.B *= spec_density(s, DensityPoint::FiveSixths, nullptr, DensityFamily::Torsion).real();
        t.descriptor += " " + s.str();
    }
    t.tail_bound = std::fabs(t.B) * std::expm1(E.tail_bound);
    return t;
}

namespace {

// Coprime residue: sum over primitive sextic characters (cubic at 3).
APConstants ap_coprime(i64 m, i64 a) {
    if (m % 8 == 0) throw not_implemented_error("progressions modulo multiples of 8 are not implemented");
    APConstants c;
    c.C1 = prod_inverse(m, 3) / static_cast<double>(m);
    cd K = 0;
    const auto primes = factor(m);
    for (const auto& chi : enumerate_order6_characters(m)) {
        cd term = std::conj(chi(a)) * ratio_13_53(chi);
        for (const auto& f : primes) {
            const double P = static_cast<double>(f.p);
            if (chi.modulus() % f.p != 0) {
                cd v = chi(f.p);
                term *= (1.0 - pw(P, -4.0 / 3) / (v * v)) / ((1.0 - v * v * pw(P, -5.0 / 3)) * (1 + 1 / P));
            } else if (f.p == 3) {
                term *= chi.local_component(3)(4) / 4.0;
            } else {
                cd tau = gauss_sum(chi.local_component(f.p).pow(2));
                term *= tau * tau * tau / (P * P * (1 + 1 / P));
            }
        }
        K += term;
    }
    c.K1 = K.real() / static_cast<double>(euler_phi(m));
    if (m % 4 == 0) {
        double w = (a % 4 == 1) ? 2.0 : 0.0;
        c.C1 *= w;
        c.K1 *= w;
    }
    return c;
}

std::vector<DirichletCharacter> nontrivial_cubic(i64 p) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : all_characters(p))
        if (chi.order() == 3) out.push_back(chi);
    return out;
}

APConstants ap_prime_power(i64 p, int k, i64 a) {
    const double P = static_cast<double>(p);
    const i64 pk = static_cast<i64>(std::llround(std::pow(P, k)));
    APConstants c;
    if (a == 0) {
        if (k >= 3) return c;
        std::vector<SplittingSymbol> allowed{{Kind::TotallyRamified, 0}};
        if (k == 1) allowed.push_back({Kind::PartiallyRamified, 0});
        auto spec = make_spec(p, allowed);
        c.C1 = spec_density(spec, DensityPoint::One).real();
        c.K1 = spec_density(spec, DensityPoint::FiveSixths).real() * zeta_ratio();
        return c;
    }
    int n = 0;
    i64 rest = a;
    while (rest % p == 0) {
        rest /= p;
        ++n;
    }
    if (n >= 3) return c;
    if (n == 1) {
        c.C1 = 1 / (P * P * (1 - pw(P, -3)));
        cd sum = 0;
        for (const auto& psi : nontrivial_cubic(p))
            sum += std::conj(psi(2 * rest)) * dirichlet_l(1.0 / 3, psi) / dirichlet_l(5.0 / 3, psi.pow(2));
        c.K1 = (zeta_ratio() * (1 - pw(P, -2.0 / 3)) * (1 + pw(P, -1.0 / 3)) / (1 - pw(P, -5.0 / 3)) +
                pw(P, -1.0 / 3) * sum.real()) /
               (P * P - 1);
    } else {
        int phi = legendre(-3 * rest, p);
        c.C1 = (1 + phi) / (P * P * P * (1 - pw(P, -3)));
        c.K1 = (1 + phi) * (1 - pw(P, -2.0 / 3)) / (P * P * P * (1 - pw(P, -2)) * (1 - pw(P, -5.0 / 3))) * zeta_ratio();
    }
    double scale = static_cast<double>(pk) / std::pow(P, n + 1);
    c.C1 /= scale;
    c.K1 /= scale;
    return c;
}

}  // namespace

APConstants ap_constants(i64 m, i64 a, const PredictorConfig&) {
    if (m < 1) throw std::invalid_argument("modulus must be positive");
    a %= m;
    if (a < 0) a += m;
    if (m == 1) return {1.0, zeta_ratio()};
    if (gcd64(a, m) == 1) return ap_coprime(m, a);
    auto f = factor(m);
    if (f.size() == 1 && f[0].p > 3) return ap_prime_power(f[0].p, f[0].k, a);
    throw not_implemented_error("progression " + std::to_string(a) + " mod " + std::to_string(m) +
                                " shares factors with the modulus; only prime powers of p > 3 are tabulated");
}

APConstants ap_folded(i64 m, i64 a, const PredictorConfig& cfg) {
    APConstants c = ap_constants(m, a, cfg);
    c.C1 /= 12 * zeta3();
    c.K1 *= 4 / (5 * gamma23_cubed());
    return c;
}

PredictionTerms ap_terms(i64 m, i64 a, Sign sign, const PredictorConfig& cfg) {
    APConstants c = ap_folded(m, a, cfg);
    PredictionTerms t;
    t.A = roberts_C(sign) * c.C1;
    t.B = roberts_K(sign) * c.K1;
    t.descriptor = "cubic fields, Disc = " + std::to_string(a) + " mod " + std::to_string(m) + ", sign " + sign_name(sign);
    return t;
}

PredictionTerms torsion_ap_terms(i64 m, i64 a, Sign sign, const PredictorConfig& cfg) {
    if (m < 1) throw std::invalid_argument("modulus must be positive");
    if (gcd64(6, m) != 1) throw not_implemented_error("torsion progressions need a modulus prime to 6");
    a %= m;
    if (a < 0) a += m;
    if (m == 1) return torsion_terms(sign, {}, cfg);
    const auto primes = factor(m);
    if (gcd64(a, m) != 1) {
        if (a == 0 && primes.size() == 1 && primes[0].k == 1) {
            PredictionTerms t = torsion_terms(sign, {torsion_spec(m, QuadraticType::Ramified)}, cfg);
            t.descriptor = "3-torsion, D = 0 mod " + std::to_string(m) + ", sign " + sign_name(sign);
            return t;
        }
        throw not_implemented_error("torsion progression " + std::to_string(a) + " mod " + std::to_string(m));
    }
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double norm = static_cast<double>(m) / prod_inverse(m, 2);
    PredictionTerms t;
    t.A = (3 + roberts_C(sign)) / (pi2 * norm);
    cd K = 0;
    double worst_tail = 0;
    for (const auto& chi : enumerate_order6_characters(m)) {
        auto chi2 = chi.pow(2);
        auto E = torsion_euler_product(&chi2, m, cfg);
        worst_tail = std::max(worst_tail, E.tail_bound);
        cd term = std::conj(chi(a)) * dirichlet_l(1.0 / 3, chi.pow(-2).primitive()) * E.value;
        for (const auto& f : primes) {
            const double P = static_cast<double>(f.p);
            if (chi.modulus() % f.p != 0) {
                cd v = chi(f.p);
                term *= 1.0 - pw(P, -4.0 / 3) / (v * v);
            } else {
                cd tau = gauss_sum(chi.local_component(f.p).pow(2));
                term *= tau * tau * tau / (P * P);
            }
        }
        K += term;
    }
    t.B = roberts_K(sign) * 8 / (5 * gamma23_cubed()) * K.real() / norm;
    t.tail_bound = std::fabs(t.B) * std::expm1(worst_tail);
    t.descriptor = "3-torsion, D = " + std::to_string(a) + " mod " + std::to_string(m) + ", sign " + sign_name(sign);
    return t;
}

long long round_half_away(double x) { return std::llround(x); }

}  // namespace cubic
