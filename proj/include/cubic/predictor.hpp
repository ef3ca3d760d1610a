#ifndef CUBIC_PREDICTOR_HPP
#define CUBIC_PREDICTOR_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubic/characters.hpp"
#include "cubic/forms.hpp"
#include "cubic/lfunctions.hpp"
#include "cubic/localdata.hpp"

namespace cubic {

// predicted(X) = A X + B X^{5/6}
struct PredictionTerms {
    double A = 0;
    double B = 0;
    std::string descriptor;
    // Uncertainty in B from truncated Euler products (0 when none are involved).
    double tail_bound = 0;

    double at(double X) const;
    double main_at(double X) const { return A * X; }
    double secondary_at(double X) const;
};

struct PredictorConfig {
    i64 prime_cutoff = 100000;
    // Add the estimated contribution of primes above the cutoff to the log of every Euler product.
    bool tail_correction = true;
    SpecialValueConfig special;
};

struct not_implemented_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Constants appearing in every prediction.
double zeta3();
double gamma23_cubed();
double roberts_C(Sign s);  // 1 or 3
double roberts_K(Sign s);  // 1 or sqrt(3)

PredictionTerms roberts_terms(Sign sign);

enum class DensityPoint { One, FiveSixths };
enum class DensityFamily { Fields, Torsion };

// Normalized local density of one ring type at p. With chi, the twisted tables are used
// (chi must be primitive cubic or trivial; the cubic reduction of a sextic twist is the caller's job).
std::complex<double> local_density(const SplittingSymbol& s, i64 p, DensityPoint at,
                                   const DirichletCharacter* chi = nullptr,
                                   DensityFamily family = DensityFamily::Fields);

// Unnormalized table entry and the matching normalizer, exposed for tests.
std::complex<double> raw_local_density(const SplittingSymbol& s, i64 p, DensityPoint at,
                                       const DirichletCharacter* chi = nullptr);
std::complex<double> density_normalizer(i64 p, DensityPoint at, const DirichletCharacter* chi = nullptr,
                                        DensityFamily family = DensityFamily::Fields);

// Sum of normalized densities over the rings a spec admits.
std::complex<double> spec_density(const LocalSpec& spec, DensityPoint at, const DirichletCharacter* chi = nullptr,
                                  DensityFamily family = DensityFamily::Fields);

PredictionTerms spec_terms(Sign sign, const std::vector<LocalSpec>& specs);

struct EulerProduct {
    std::complex<double> value;
    i64 cutoff = 0;
    double tail_estimate = 0;  // estimated log contribution of primes above the cutoff (applied when enabled)
    double tail_bound = 0;     // bound on |log| of the omitted factors
};

// prod over p <= cutoff, p not dividing m, of (1 - (chi2(p) p^{1/3} + 1) / (p (p + 1))).
// chi2 may be null (trivial).
EulerProduct torsion_euler_product(const DirichletCharacter* chi2, i64 m, const PredictorConfig& cfg = {});

// Specs are quadratic-side (split -> {TS, I}, inert -> {PS}, ramified -> PR rows) once converted by torsion_spec.
PredictionTerms torsion_terms(Sign sign, const std::vector<LocalSpec>& specs, const PredictorConfig& cfg = {});

enum class QuadraticType { Split, Inert, Ramified };
QuadraticType parse_quadratic_type(const std::string& s);
// Cubic-side spec for the cubic fields attached to a quadratic field with the given behaviour at p.
LocalSpec torsion_spec(i64 p, QuadraticType t, int subtype = 0);

struct APConstants {
    double C1 = 0;  // density of Disc = a mod m among fields
    double K1 = 0;  // secondary constant, raw
};

// Raw C1(m,a), K1(m,a) with N(X; m, a) = C1 C/(12 zeta(3)) X + K1 4K/(5 Gamma(2/3)^3) X^{5/6}.
APConstants ap_constants(i64 m, i64 a, const PredictorConfig& cfg = {});
// Same numbers with 1/(12 zeta(3)) and 4/(5 Gamma(2/3)^3) absorbed; these are the printed values.
APConstants ap_folded(i64 m, i64 a, const PredictorConfig& cfg = {});

// Folded constants times the sign constants.
PredictionTerms ap_terms(i64 m, i64 a, Sign sign, const PredictorConfig& cfg = {});

// 3-torsion summed over fundamental D = a mod m. Needs gcd(6, m) = 1; a may be coprime to m or,
// for prime m, zero.
PredictionTerms torsion_ap_terms(i64 m, i64 a, Sign sign, const PredictorConfig& cfg = {});

// Rounding used for "expected" columns.
long long round_half_away(double x);

}  // namespace cubic

#endif
