#include "cubic/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace cubic {

namespace {

using i128 = __int128;

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<i128>(a) * b % m); }

i64 mod(i64 a, i64 m) {
    a %= m;
    return a < 0 ? a + m : a;
}

i64 primitive_root_mod_p(i64 p) {
    if (p == 2) return 1;
    std::vector<i64> qs;
    for (const auto& f : factor(p - 1)) qs.push_back(f.p);
    for (i64 g = 2;; ++g) {
        bool ok = true;
        for (i64 q : qs)
            if (powmod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
}

// CRT: x = r mod n1, x = 1 mod n2, with gcd(n1, n2) = 1.
i64 crt_with_one(i64 r, i64 n1, i64 n2) {
    if (n2 == 1) return mod(r, n1);
    // x = 1 + n2 * t, n2 t = r - 1 mod n1
    i64 t = mulmod(mod(r - 1, n1), invmod(mod(n2, n1), n1), n1);
    return 1 + n2 * t;
}

// Baby-step giant-step for x with g^x = h mod n, 0 <= x < order.
struct Bsgs {
    i64 g = 1, n = 1, order = 1, step = 1, giant = 1;
    std::unordered_map<i64, i64> baby;

    Bsgs() = default;
    Bsgs(i64 g_, i64 n_, i64 order_) : g(g_), n(n_), order(order_) {
        step = static_cast<i64>(std::ceil(std::sqrt(static_cast<double>(order))));
        baby.reserve(static_cast<size_t>(step) * 2);
        i64 x = 1;
        for (i64 j = 0; j < step; ++j) {
            baby.emplace(x, j);
            x = mulmod(x, g, n);
        }
        giant = powmod(invmod(g, n), step, n);
    }

    i64 operator()(i64 h) const {
        h = mod(h, n);
        for (i64 i = 0; i <= order / step + 1; ++i) {
            auto it = baby.find(h);
            if (it != baby.end()) return mod(i * step + it->second, order);
            h = mulmod(h, giant, n);
        }
        throw std::domain_error("discrete logarithm does not exist");
    }
};

}  // namespace

i64 gcd64(i64 a, i64 b) { return std::gcd(a, b); }

i64 powmod(i64 b, i64 e, i64 m) {
    if (m == 1) return 0;
    i64 r = 1;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

i64 invmod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1 != 0) {
        i64 q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw std::domain_error("not invertible");
    return mod(x, m);
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<PrimePower> factor(i64 n) {
    if (n < 1) throw std::domain_error("factor expects a positive integer");
    std::vector<PrimePower> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        PrimePower f{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++f.k;
            f.pk *= p;
        }
        out.push_back(f);
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

UnitGroup::UnitGroup(i64 m) : m_(m), phi_(1) {
    if (m < 1) throw std::domain_error("modulus must be positive");
    for (const auto& f : factor(m)) {
        i64 rest = m / f.pk;
        i64 local_phi = f.pk / f.p * (f.p - 1);
        phi_ *= local_phi;
        if (f.p == 2) {
            if (f.k == 1) continue;
            gens_.push_back({crt_with_one(f.pk - 1, f.pk, rest), 2, 2, f.pk - 1, f.pk});
            if (f.k >= 3) gens_.push_back({crt_with_one(5, f.pk, rest), f.pk / 4, 2, 5, f.pk});
            continue;
        }
        i64 g = primitive_root_mod_p(f.p);
        if (f.k >= 2 && powmod(g, f.p - 1, f.p * f.p) == 1) g += f.p;
        gens_.push_back({crt_with_one(g, f.pk, rest), local_phi, f.p, g, f.pk});
    }
}

std::vector<i64> UnitGroup::dlog(i64 n) const {
    if (std::gcd(mod(n, m_), m_) != 1) throw std::domain_error("dlog of a non-unit");
    std::vector<i64> out(gens_.size(), 0);
    static thread_local std::unordered_map<i64, std::unordered_map<i64, Bsgs>> cache;
    auto solver = [&](const Generator& g) -> const Bsgs& {
        auto& inner = cache[g.pk];
        auto it = inner.find(g.local);
        if (it == inner.end()) it = inner.emplace(g.local, Bsgs(g.local, g.pk, g.order)).first;
        return it->second;
    };
    for (size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        i64 r = mod(n, g.pk);
        if (g.prime != 2) {
            out[i] = solver(g)(r);
            continue;
        }
        // 2-part: r = (-1)^s 5^e
        if (g.order == 2 && g.local == g.pk - 1) {
            bool minus = r % 4 == 3;
            out[i] = minus ? 1 : 0;
            if (minus) r = g.pk - r;
            if (i + 1 < gens_.size() && gens_[i + 1].prime == 2) {
                out[i + 1] = solver(gens_[i + 1])(r);
                ++i;
            }
        }
    }
    return out;
}

CharValue root_of_unity(i64 num, i64 den) {
    if (den <= 0) throw std::domain_error("bad root of unity");
    num = mod(num, den);
    i64 g = std::gcd(num, den);
    if (g == 0) g = den;
    return {false, num / g, den / g};
}

std::complex<double> CharValue::complex() const {
    if (zero) return {0.0, 0.0};
    if (num == 0) return {1.0, 0.0};
    if (2 * num == den) return {-1.0, 0.0};
    double t = 2 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return std::polar(1.0, t);
}

CharValue operator*(const CharValue& x, const CharValue& y) {
    if (x.zero || y.zero) return {};
    i64 l = std::lcm(x.den, y.den);
    return root_of_unity(x.num * (l / x.den) + y.num * (l / y.den), l);
}

CharValue conj(const CharValue& x) {
    if (x.zero) return x;
    return root_of_unity(-x.num, x.den);
}

DirichletCharacter::DirichletCharacter() : group_(std::make_shared<UnitGroup>(1)) {}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<i64> exponents)
    : group_(std::move(group)), exps_(std::move(exponents)) {
    const auto& gens = group_->generators();
    if (exps_.size() != gens.size()) throw std::invalid_argument("exponent vector has wrong length");
    for (size_t i = 0; i < gens.size(); ++i) exps_[i] = mod(exps_[i], gens[i].order);
}

DirichletCharacter DirichletCharacter::trivial(i64 m) {
    auto G = std::make_shared<UnitGroup>(m);
    return DirichletCharacter(G, std::vector<i64>(G->generators().size(), 0));
}

CharValue DirichletCharacter::value(i64 n) const {
    i64 m = modulus();
    if (std::gcd(mod(n, m), m) != 1) return {};
    if (m == 1) return root_of_unity(0, 1);
    const auto& gens = group_->generators();
    auto logs = group_->dlog(n);
    i64 L = 1;
    for (const auto& g : gens) L = std::lcm(L, g.order);
    i64 num = 0;
    for (size_t i = 0; i < gens.size(); ++i)
        num = mod(num + mulmod(mulmod(exps_[i], logs[i], L), L / gens[i].order, L), L);
    return root_of_unity(num, L);
}

CharValue evaluate(const DirichletCharacter& chi, i64 n) { return chi.value(n); }

i64 DirichletCharacter::order() const {
    i64 o = 1;
    const auto& gens = group_->generators();
    for (size_t i = 0; i < gens.size(); ++i) o = std::lcm(o, gens[i].order / std::gcd(exps_[i], gens[i].order));
    return o;
}

i64 DirichletCharacter::conductor() const {
    const auto& gens = group_->generators();
    i64 cond = 1;
    for (size_t i = 0; i < gens.size(); ++i) {
        const auto& g = gens[i];
        if (g.prime != 2) {
            i64 lo = g.order / std::gcd(exps_[i], g.order);
            if (lo == 1) continue;
            i64 c = g.prime;
            while (lo % g.prime == 0) {
                lo /= g.prime;
                c *= g.prime;
            }
            cond *= c;
            continue;
        }
        // 2-part: generator -1, optionally followed by 5
        i64 e_minus = exps_[i];
        i64 o5 = 1;
        if (i + 1 < gens.size() && gens[i + 1].prime == 2) {
            o5 = gens[i + 1].order / std::gcd(exps_[i + 1], gens[i + 1].order);
            ++i;
        }
        if (o5 > 1)
            cond *= 4 * o5;
        else if (e_minus % 2 != 0)
            cond *= 4;
    }
    return cond;
}

DirichletCharacter DirichletCharacter::pow(i64 k) const {
    std::vector<i64> e = exps_;
    const auto& gens = group_->generators();
    for (size_t i = 0; i < gens.size(); ++i) e[i] = mod(mulmod(mod(e[i], gens[i].order), mod(k, gens[i].order), gens[i].order), gens[i].order);
    return DirichletCharacter(group_, e);
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& o) const {
    if (modulus() != o.modulus()) throw std::invalid_argument("characters have different moduli");
    std::vector<i64> e = exps_;
    for (size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
    return DirichletCharacter(group_, e);
}

DirichletCharacter DirichletCharacter::primitive() const {
    i64 q = conductor();
    i64 m = modulus();
    if (q == m) return *this;
    auto H = std::make_shared<UnitGroup>(q);
    std::vector<i64> e;
    for (const auto& h : H->generators()) {
        i64 n = h.value;
        while (std::gcd(n, m) != 1) n += q;
        CharValue v = value(n);
        if ((v.num * h.order) % v.den != 0) throw std::logic_error("character does not factor through its conductor");
        e.push_back(v.num * h.order / v.den);
    }
    return DirichletCharacter(H, e);
}

DirichletCharacter DirichletCharacter::local_component(i64 p) const {
    i64 pk = 1;
    i64 m = modulus();
    while (m % p == 0) {
        m /= p;
        pk *= p;
    }
    auto H = std::make_shared<UnitGroup>(pk);
    std::vector<i64> e;
    const auto& gens = group_->generators();
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].prime == p) e.push_back(exps_[i]);
    return DirichletCharacter(H, e);
}

DirichletCharacter DirichletCharacter::away_from(i64 p) const {
    i64 m = modulus();
    while (m % p == 0) m /= p;
    auto H = std::make_shared<UnitGroup>(m);
    std::vector<i64> e;
    const auto& gens = group_->generators();
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].prime != p) e.push_back(exps_[i]);
    return DirichletCharacter(H, e);
}

std::vector<DirichletCharacter> all_characters(i64 m) {
    auto G = std::make_shared<UnitGroup>(m);
    const auto& gens = G->generators();
    std::vector<DirichletCharacter> out;
    std::vector<i64> e(gens.size(), 0);
    while (true) {
        out.emplace_back(G, e);
        size_t i = 0;
        for (; i < e.size(); ++i) {
            if (++e[i] < gens[i].order) break;
            e[i] = 0;
        }
        if (i == e.size()) break;
    }
    return out;
}

std::vector<DirichletCharacter> enumerate_order6_characters(i64 m) {
    // Local options per prime: list of (conductor, exponent on the local generator).
    struct Option {
        i64 cond;
        i64 exp;
    };
    std::vector<std::pair<i64, std::vector<Option>>> local;
    for (const auto& f : factor(m)) {
        std::vector<Option> opts{{1, 0}};
        if (f.p > 3 && f.p % 6 == 1) {
            opts.push_back({f.p, (f.p - 1) / 6});
            opts.push_back({f.p, 5 * (f.p - 1) / 6});
        } else if (f.p == 3 && f.k >= 2) {
            opts.push_back({9, 2});
            opts.push_back({9, 4});
        }
        local.emplace_back(f.p, opts);
    }
    std::vector<DirichletCharacter> out;
    std::vector<size_t> idx(local.size(), 0);
    while (true) {
        i64 q = 1;
        std::vector<i64> e;
        for (size_t i = 0; i < local.size(); ++i) {
            const auto& o = local[i].second[idx[i]];
            q *= o.cond;
            if (o.cond > 1) e.push_back(o.exp);
        }
        out.emplace_back(std::make_shared<UnitGroup>(q), e);
        size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < local[i].second.size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.modulus() != y.modulus()) return x.modulus() < y.modulus();
        return x.exponents() < y.exponents();
    });
    return out;
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
    i64 q = chi.modulus();
    std::complex<double> s = 0;
    for (i64 t = 1; t < q; ++t) {
        CharValue v = chi.value(t);
        if (v.zero) continue;
        s += v.complex() * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(q));
    }
    return s;
}

SexticParts decompose_sextic(const DirichletCharacter& chi) {
    if (6 % chi.order() != 0) throw std::domain_error("character is not sextic");
    return {chi.pow(-2), chi.pow(3)};
}

}  // namespace cubic
