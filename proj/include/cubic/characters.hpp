#ifndef CUBIC_CHARACTERS_HPP
#define CUBIC_CHARACTERS_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace cubic {

using i64 = std::int64_t;

i64 gcd64(i64 a, i64 b);
i64 powmod(i64 b, i64 e, i64 m);
i64 invmod(i64 a, i64 m);
bool is_prime(i64 n);

struct PrimePower {
    i64 p;
    int k;
    i64 pk;
};
std::vector<PrimePower> factor(i64 n);

// (Z/mZ)^x as a product of cyclic groups, one or two per prime power (CRT layout).
class UnitGroup {
public:
    struct Generator {
        i64 value;   // generator modulo m (other CRT components are 1)
        i64 order;
        i64 prime;   // prime whose component this generator lives in
        i64 local;   // generator modulo the prime power
        i64 pk;
    };

    explicit UnitGroup(i64 m);

    i64 modulus() const { return m_; }
    i64 phi() const { return phi_; }
    const std::vector<Generator>& generators() const { return gens_; }

    // Exponents e_i with n = prod g_i^{e_i} (mod m). n must be a unit.
    std::vector<i64> dlog(i64 n) const;

private:
    i64 m_;
    i64 phi_;
    std::vector<Generator> gens_;
};

// Exact root of unity exp(2 pi i num / den), or zero.
struct CharValue {
    bool zero = true;
    i64 num = 0;
    i64 den = 1;
    std::complex<double> complex() const;
    bool operator==(const CharValue&) const = default;
};

CharValue root_of_unity(i64 num, i64 den);
CharValue operator*(const CharValue& x, const CharValue& y);
CharValue conj(const CharValue& x);

class DirichletCharacter {
public:
    DirichletCharacter();  // trivial character mod 1
    DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<i64> exponents);

    static DirichletCharacter trivial(i64 m);

    i64 modulus() const { return group_->modulus(); }
    const UnitGroup& group() const { return *group_; }
    const std::vector<i64>& exponents() const { return exps_; }

    CharValue value(i64 n) const;
    std::complex<double> operator()(i64 n) const { return value(n).complex(); }

    i64 order() const;
    i64 conductor() const;
    bool is_primitive() const { return conductor() == modulus(); }
    bool is_trivial() const { return order() == 1; }

    DirichletCharacter pow(i64 k) const;
    DirichletCharacter conj() const { return pow(-1); }
    DirichletCharacter operator*(const DirichletCharacter& o) const;

    // Primitive character inducing this one.
    DirichletCharacter primitive() const;

    // Component at p, as a character modulo the full power of p in the modulus.
    DirichletCharacter local_component(i64 p) const;
    // Product of the components away from p, as a character modulo m / p^k.
    DirichletCharacter away_from(i64 p) const;

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<i64> exps_;
};

CharValue evaluate(const DirichletCharacter& chi, i64 n);

// All phi(m) characters modulo m.
std::vector<DirichletCharacter> all_characters(i64 m);

// Primitive characters to moduli dividing m whose p-components have exact order 6,
// except at 3 where the component is of exact order 3 with conductor 9. Includes the trivial character.
std::vector<DirichletCharacter> enumerate_order6_characters(i64 m);

std::complex<double> gauss_sum(const DirichletCharacter& chi);

struct SexticParts {
    DirichletCharacter psi;  // cubic part chi^{-2}
    DirichletCharacter phi;  // quadratic part chi^3
};
SexticParts decompose_sextic(const DirichletCharacter& chi);

}  // namespace cubic

#endif
