#ifndef CUBIC_ORACLE_HPP
#define CUBIC_ORACLE_HPP

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubic/forms.hpp"

namespace cubic {

// A point of the dual lattice: form coordinates (x1, x2, x3, x4) with 3 | x2 and 3 | x3.
struct DualForm {
    i64 x1 = 0, x2 = 0, x3 = 0, x4 = 0;

    // Build from the divided coordinates (x1, x2/3, x3/3, x4).
    static DualForm from_divided(i64 x1, i64 y2, i64 y3, i64 x4);
    void validate() const;
    CubicForm as_form() const { return {x1, x2, x3, x4}; }
    bool operator==(const DualForm&) const = default;
};

// [x, y] = x4 y1 - (1/3) x3 y2 + (1/3) x2 y3 - x1 y4, integral on the dual lattice.
i64 pairing(const DualForm& x, const CubicForm& y);

enum class SieveCondition { UComplement, VComplement };  // nonmaximal at p / not in V_p

// 1 when y (taken mod p^2) is nonmaximal at p, or additionally totally ramified for VComplement.
bool condition_holds(const CubicForm& y, i64 p, SieveCondition c);

// p^{-8} sum over y mod p^2 of Phi_p(y) e([x, y] / p^2). p must be 5 or 7.
std::complex<double> phi_hat_bruteforce(const DualForm& x, i64 p, SieveCondition c);

// Phi-hat at every x mod p^2 at once, indexed by the divided coordinates (x1, x2/3, x3/3, x4) mod p^2.
std::vector<std::complex<double>> phi_hat_table(i64 p, SieveCondition c);

// Phi-hat for q = p p' via the Chinese remainder split of the exponential, each factor summed separately.
std::complex<double> phi_hat_crt(const DualForm& x, i64 p, i64 pp, SieveCondition c);

struct Verdict {
    std::string check;
    bool pass = false;
    nlohmann::json details;
    nlohmann::json to_json() const;
};

// Compare Phi-hat against the tabulated values at p (exhaustive over x mod p^2 when p = 5, sampled when p = 7).
Verdict verify_phi_hat(i64 p);
// Phi-hat_{pp'} = Phi-hat_p Phi-hat_{p'} at `points` pseudo-random dual points.
Verdict verify_multiplicativity(i64 p, i64 pp, int points, unsigned seed = 1);

// Fields = sum over squarefree q of mu(q) #(irreducible classes nonmaximal at every p | q).
Verdict sieve_identity_check(i64 X, Sign sign);
// Sum over SL2 classes of maximal forms of 1/|Stab| against field, quadratic and Z^3 counts.
Verdict shintani_weight_check(i64 X, Sign sign);

inline constexpr i64 kOracleMaxDisc = 10000;

}  // namespace cubic

#endif
