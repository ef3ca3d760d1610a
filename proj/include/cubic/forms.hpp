#ifndef CUBIC_FORMS_HPP
#define CUBIC_FORMS_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubic {

using i64 = std::int64_t;
using i128 = __int128;

// a u^3 + b u^2 v + c u v^2 + d v^3
struct CubicForm {
    i64 a = 0, b = 0, c = 0, d = 0;
    auto operator<=>(const CubicForm&) const = default;
    std::string str() const;
};

// [[p, q], [r, s]], acting by f -> f((u,v) g) / det g
struct Unimodular {
    i64 p = 1, q = 0, r = 0, s = 1;
    i64 det() const { return p * s - q * r; }
    Unimodular operator*(const Unimodular& o) const {
        return {p * o.p + q * o.r, p * o.q + q * o.s, r * o.p + s * o.r, r * o.q + s * o.s};
    }
    bool operator==(const Unimodular&) const = default;
};

enum class Sign { plus, minus };

inline int sign_value(Sign s) { return s == Sign::plus ? 1 : -1; }
Sign parse_sign(const std::string& s);
std::string sign_name(Sign s);

struct arithmetic_range_error : std::range_error {
    using std::range_error::range_error;
};

inline constexpr i64 kCoefficientGuard = i64{1} << 20;
inline constexpr i64 kDiscGuard = 100000000;

// Exact, unguarded. Valid whenever every coefficient fits in 2^40.
i128 discriminant_wide(const CubicForm& f);

// Guarded: throws arithmetic_range_error when a coefficient exceeds 2^20.
i64 discriminant(const CubicForm& f);

CubicForm act(const Unimodular& g, const CubicForm& f);

i64 content(const CubicForm& f);

// Rational linear factor test. Throws std::domain_error on Disc = 0.
bool is_irreducible(const CubicForm& f);

bool is_perfect_square(i64 n);
bool has_square_disc(const CubicForm& f);

// Hessian covariant P u^2 + Q u v + R v^2, with Q^2 - 4PR = -3 Disc.
struct Hessian {
    i64 P, Q, R;
};
Hessian hessian(const CubicForm& f);

// Membership in the fundamental set used for class representatives.
bool is_reduced(const CubicForm& f);

// Canonical GL2(Z) representative: the lexicographically largest reduced form in the class.
CubicForm reduce(const CubicForm& f);
CubicForm reduce(const CubicForm& f, Sign sign);

// True iff the reduced form f is its own canonical representative.
bool is_canonical(const CubicForm& f);

// SL2(Z) stabilizer order of an irreducible form (1 or 3).
int stabilizer_order(const CubicForm& f);

// Stabilizer data for arbitrary nondegenerate forms (used by the weight oracle).
struct StabilizerInfo {
    int sl2_order;           // |Stab_SL2|
    bool has_improper;       // some det -1 element fixes f
};
StabilizerInfo stabilizer_info(const CubicForm& f);

// Every 2x2 matrix with entries in {-1,0,1} and determinant +-1.
const std::vector<Unimodular>& small_unimodular();

}  // namespace cubic

#endif
