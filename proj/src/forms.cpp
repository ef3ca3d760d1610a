#include "cubic/forms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace cubic {

namespace {

i64 narrow(i128 v) {
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw arithmetic_range_error("coefficient overflow in group action");
    return static_cast<i64>(v);
}

i128 eval(const CubicForm& f, i64 u, i64 v) {
    i128 U = u, V = v;
    return f.a * U * U * U + f.b * U * U * V + f.c * U * V * V + f.d * V * V * V;
}

std::vector<i64> divisors(i64 n) {
    n = n < 0 ? -n : n;
    std::vector<i64> small, large;
    for (i64 k = 1; k * k <= n; ++k) {
        if (n % k) continue;
        small.push_back(k);
        if (k != n / k) large.push_back(n / k);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

CubicForm negate(const CubicForm& f) { return {-f.a, -f.b, -f.c, -f.d}; }
CubicForm reflect(const CubicForm& f) { return {f.a, -f.b, f.c, -f.d}; }

bool strictly_interior(const CubicForm& f, i128 D) {
    if (D > 0) {
        Hessian h = hessian(f);
        return std::abs(h.Q) < h.P && h.P < h.R;
    }
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    i128 mid = a * d - b * c;
    i128 lo = -(a - b) * (a - b) - a * c;
    i128 hi = (a + b) * (a + b) + a * c;
    return lo < mid && mid < hi && d * d - a * a + a * c - b * d > 0;
}

CubicForm canonical_of_reduced(const CubicForm& f) {
    CubicForm best = f;
    for (const auto& g : small_unimodular()) {
        CubicForm h = act(g, f);
        if (h > best && is_reduced(h)) best = h;
    }
    return best;
}

// Upper-half-plane root of the quadratic factor (negative discriminant only).
std::complex<long double> complex_root(const CubicForm& f) {
    using ld = long double;
    if (f.a == 0) {
        ld b = f.b, c = f.c, d = f.d;
        ld disc = 4 * b * d - c * c;
        return {-c / (2 * b), std::sqrt(std::max<ld>(disc, 0)) / (2 * std::abs(b))};
    }
    ld a = f.a, b = f.b / a, c = f.c / a, d = f.d / a;
    ld p = c - b * b / 3;
    ld q = 2 * b * b * b / 27 - b * c / 3 + d;
    ld delta = q * q / 4 + p * p * p / 27;
    ld sq = std::sqrt(std::max<ld>(delta, 0));
    ld y = std::cbrt(-q / 2 + sq) + std::cbrt(-q / 2 - sq);
    ld theta = y - b / 3;
    for (int it = 0; it < 4; ++it) {
        ld fv = ((theta + b) * theta + c) * theta + d;
        ld dv = (3 * theta + 2 * b) * theta + c;
        if (dv == 0) break;
        theta -= fv / dv;
    }
    ld q1 = b + theta;
    ld q0 = c + theta * q1;
    ld disc = 4 * q0 - q1 * q1;
    return {-q1 / 2, std::sqrt(std::max<ld>(disc, 0)) / 2};
}

const Unimodular kSwap{0, 1, 1, 0};

Unimodular translation(i64 t) { return {1, 0, t, 1}; }

CubicForm reduce_positive(CubicForm f) {
    for (int guard = 0; guard < 10000; ++guard) {
        Hessian h = hessian(f);
        if (std::abs(h.Q) > h.P) {
            // nearest integer to -Q/(2P)
            long double t = std::floor(-static_cast<long double>(h.Q) / (2.0L * h.P) + 0.5L);
            f = act(translation(static_cast<i64>(t)), f);
        } else if (h.P > h.R) {
            f = act(kSwap, f);
        } else {
            return f;
        }
    }
    throw std::logic_error("positive reduction did not terminate");
}

CubicForm reduce_negative(CubicForm f) {
    for (int guard = 0; guard < 10000; ++guard) {
        if (is_reduced(f)) return f;
        auto eta = complex_root(f);
        if (std::abs(eta.real()) > 0.5L + 1e-12L) {
            f = act(translation(static_cast<i64>(std::llround(eta.real()))), f);
        } else if (std::abs(eta) < 1.0L - 1e-12L) {
            f = act(kSwap, f);
        } else {
            // Rounding left us on a boundary: settle it exactly.
            CubicForm best = f;
            bool found = false;
            for (i64 t : {1, -1}) {
                CubicForm g = act(translation(t), f);
                if (is_reduced(g)) { best = g; found = true; break; }
                CubicForm h = act(kSwap, g);
                if (is_reduced(h)) { best = h; found = true; break; }
            }
            if (!found) {
                CubicForm h = act(kSwap, f);
                if (is_reduced(h)) { best = h; found = true; }
            }
            if (!found) throw std::logic_error("negative reduction stalled at " + f.str());
            return best;
        }
    }
    throw std::logic_error("negative reduction did not terminate");
}

}  // namespace

std::string CubicForm::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," +
           std::to_string(d) + ")";
}

Sign parse_sign(const std::string& s) {
    if (s == "plus" || s == "+" || s == "positive") return Sign::plus;
    if (s == "minus" || s == "-" || s == "negative") return Sign::minus;
    throw std::invalid_argument("unknown sign '" + s + "' (expected plus or minus)");
}

std::string sign_name(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

i128 discriminant_wide(const CubicForm& f) {
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d +
           18 * a * b * c * d;
}

i64 discriminant(const CubicForm& f) {
    for (i64 x : {f.a, f.b, f.c, f.d})
        if (x > kCoefficientGuard || x < -kCoefficientGuard)
            throw arithmetic_range_error("coefficient outside guard 2^20: " + f.str());
    return narrow(discriminant_wide(f));
}

CubicForm act(const Unimodular& g, const CubicForm& f) {
    i64 det = g.det();
    if (det != 1 && det != -1) throw std::domain_error("matrix is not unimodular");
    i128 p = g.p, q = g.q, r = g.r, s = g.s;
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    i128 na = a * p * p * p + b * p * p * q + c * p * q * q + d * q * q * q;
    i128 nd = a * r * r * r + b * r * r * s + c * r * s * s + d * s * s * s;
    i128 nb = 3 * a * p * p * r + b * (p * p * s + 2 * p * q * r) + c * (2 * p * q * s + q * q * r) +
              3 * d * q * q * s;
    i128 nc = 3 * a * p * r * r + b * (2 * p * r * s + q * r * r) + c * (p * s * s + 2 * q * r * s) +
              3 * d * q * s * s;
    return {narrow(na * det), narrow(nb * det), narrow(nc * det), narrow(nd * det)};
}

i64 content(const CubicForm& f) {
    i64 g = std::gcd(std::gcd(f.a, f.b), std::gcd(f.c, f.d));
    if (g == 0) throw std::domain_error("content of the zero form");
    return g;
}

bool is_irreducible(const CubicForm& f0) {
    if (discriminant_wide(f0) == 0) throw std::domain_error("degenerate form " + f0.str());
    i64 g = content(f0);
    CubicForm f{f0.a / g, f0.b / g, f0.c / g, f0.d / g};
    if (f.a == 0 || f.d == 0) return false;
    // Rational root r/s in lowest terms needs s | a and r | d.
    auto ds = divisors(f.a);
    auto rs = divisors(f.d);
    for (i64 s : ds)
        for (i64 r : rs)
            if (std::gcd(r, s) == 1 && (eval(f, r, s) == 0 || eval(f, -r, s) == 0)) return false;
    return true;
}

bool is_perfect_square(i64 n) {
    if (n < 0) return false;
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

bool has_square_disc(const CubicForm& f) {
    i128 D = discriminant_wide(f);
    if (D > std::numeric_limits<i64>::max()) throw arithmetic_range_error("discriminant too large");
    return is_perfect_square(static_cast<i64>(D));
}

Hessian hessian(const CubicForm& f) {
    return {f.b * f.b - 3 * f.a * f.c, f.b * f.c - 9 * f.a * f.d, f.c * f.c - 3 * f.b * f.d};
}

bool is_reduced(const CubicForm& f) {
    i128 D = discriminant_wide(f);
    if (D == 0) return false;
    if (D > 0) {
        Hessian h = hessian(f);
        return std::abs(h.Q) <= h.P && h.P <= h.R;
    }
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    i128 mid = a * d - b * c;
    if (mid < -(a - b) * (a - b) - a * c || mid > (a + b) * (a + b) + a * c) return false;
    return d * d - a * a + a * c - b * d >= 0;
}

CubicForm reduce(const CubicForm& f) {
    i128 D = discriminant_wide(f);
    if (D == 0) throw std::domain_error("cannot reduce degenerate form " + f.str());
    CubicForm r = D > 0 ? reduce_positive(f) : reduce_negative(f);
    return canonical_of_reduced(r);
}

CubicForm reduce(const CubicForm& f, Sign sign) {
    i128 D = discriminant_wide(f);
    if (D == 0) throw std::domain_error("cannot reduce degenerate form " + f.str());
    if ((D > 0) != (sign == Sign::plus)) throw std::domain_error("sign does not match discriminant");
    return reduce(f);
}

bool is_canonical(const CubicForm& f) {
    if (!is_reduced(f)) return false;
    i128 D = discriminant_wide(f);
    if (strictly_interior(f, D)) {
        CubicForm m = std::max({f, negate(f), reflect(f), negate(reflect(f))});
        return m == f;
    }
    return canonical_of_reduced(f) == f;
}

StabilizerInfo stabilizer_info(const CubicForm& f) {
    CubicForm f0 = reduce(f);
    StabilizerInfo info{0, false};
    for (const auto& g : small_unimodular()) {
        if (act(g, f0) != f0) continue;
        if (g.det() == 1)
            ++info.sl2_order;
        else
            info.has_improper = true;
    }
    return info;
}

int stabilizer_order(const CubicForm& f) { return stabilizer_info(f).sl2_order; }

const std::vector<Unimodular>& small_unimodular() {
    static const std::vector<Unimodular> all = [] {
        std::vector<Unimodular> v;
        for (i64 p = -1; p <= 1; ++p)
            for (i64 q = -1; q <= 1; ++q)
                for (i64 r = -1; r <= 1; ++r)
                    for (i64 s = -1; s <= 1; ++s) {
                        Unimodular g{p, q, r, s};
                        if (g.det() == 1 || g.det() == -1) v.push_back(g);
                    }
        return v;
    }();
    return all;
}

}  // namespace cubic
