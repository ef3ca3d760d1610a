#include "cubic/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "cubic/characters.hpp"

namespace cubic {

namespace {

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

i64 isqrt(i64 n) {
    if (n <= 0) return 0;
    auto r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Largest r with r^4 <= n.
i64 iroot4(i64 n) {
    i64 r = isqrt(isqrt(n));
    while ((r + 1) * (r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool by_disc_then_form(const CensusRecord& x, const CensusRecord& y) {
    i64 ax = x.disc < 0 ? -x.disc : x.disc, ay = y.disc < 0 ? -y.disc : y.disc;
    if (ax != ay) return ax < ay;
    return x.form < y.form;
}

void emit(std::vector<CensusRecord>& out, const CubicForm& f, i64 D) {
    if (is_canonical(f)) out.push_back({D, f, false, true});
}

// Positive discriminant, leading coefficient a > 0.
void positive_slice(i64 X, i64 a, std::vector<CensusRecord>& out) {
    const i64 sqrtX = isqrt(X);
    const i64 pmin = std::max<i64>(1, ceil_div(27 * a * a, 4));
    if (pmin > sqrtX) return;
    // b <= 1.5 a + 2 sqrt(P) with P <= sqrt(X)
    const i64 bmax = (3 * a + 4 * iroot4(X) + 4) / 2;
    for (i64 b = 0; b <= bmax; ++b) {
        i64 cmin = ceil_div(b * b - sqrtX, 3 * a);
        i64 cmax = floor_div(b * b - pmin, 3 * a);
        for (i64 c = cmin; c <= cmax; ++c) {
            i64 P = b * b - 3 * a * c;
            if (P < pmin || P > sqrtX) continue;
            // (2b - 3a)^2 <= 16 P whenever 2b > 3a
            if (2 * b > 3 * a && (2 * b - 3 * a) * (2 * b - 3 * a) > 16 * P) continue;
            i64 dmin = ceil_div(b * c - P, 9 * a);
            i64 dmax = floor_div(b * c + P, 9 * a);
            for (i64 d = dmin; d <= dmax; ++d) {
                i64 R = c * c - 3 * b * d;
                if (R < P) continue;
                CubicForm f{a, b, c, d};
                i128 D = discriminant_wide(f);
                if (D <= 0 || D > X) continue;
                emit(out, f, static_cast<i64>(D));
            }
        }
    }
}

// Positive discriminant, a = 0: f = v (b u^2 + c u v + d v^2).
void positive_reducible(i64 X, std::vector<CensusRecord>& out) {
    for (i64 b = 1; b * b * b * b <= X; ++b)
        for (i64 c = -b; c <= b; ++c) {
            i64 dmax = floor_div(c * c - b * b, 3 * b);
            dmax = std::min(dmax, ceil_div(c * c, 4 * b) - 1);
            i64 dmin = ceil_div(c * c * b * b - X, 4 * b * b * b);
            for (i64 d = dmin; d <= dmax; ++d) {
                CubicForm f{0, b, c, d};
                i128 D = discriminant_wide(f);
                if (D <= 0 || D > X) continue;
                emit(out, f, static_cast<i64>(D));
            }
        }
}

// Negative discriminant, a > 0.
void negative_slice(i64 X, i64 a, std::vector<CensusRecord>& out) {
    const i64 bmax = static_cast<i64>(std::floor(std::pow(X / 3.0L, 0.25L) + 1.5L * a)) + 1;
    const i64 cspan = static_cast<i64>(std::floor(a * std::cbrt(static_cast<long double>(X) / (4.0L * a * a * a * a)))) + 1;
    for (i64 b = 0; b <= bmax; ++b)
        for (i64 c = -b; c <= cspan + b; ++c) {
            i64 lo = b * c - (a - b) * (a - b) - a * c;
            i64 hi = b * c + (a + b) * (a + b) + a * c;
            i64 dmin = ceil_div(lo, a), dmax = floor_div(hi, a);
            for (i64 d = dmin; d <= dmax; ++d) {
                if (d * d - a * a + a * c - b * d < 0) continue;
                CubicForm f{a, b, c, d};
                i128 D = discriminant_wide(f);
                if (D >= 0 || -D > X) continue;
                emit(out, f, static_cast<i64>(D));
            }
        }
}

void negative_reducible(i64 X, std::vector<CensusRecord>& out) {
    for (i64 b = 1; 3 * b * b * b * b <= X; ++b)
        for (i64 c = -b; c <= b; ++c) {
            i64 dmax = floor_div(X / (b * b) + c * c, 4 * b) + 1;
            for (i64 d = b; d <= dmax; ++d) {
                CubicForm f{0, b, c, d};
                i128 D = discriminant_wide(f);
                if (D >= 0 || -D > X) continue;
                emit(out, f, static_cast<i64>(D));
            }
        }
}

std::vector<i64> small_primes(i64 limit) {
    std::vector<char> sieve(static_cast<size_t>(limit + 1), 1);
    std::vector<i64> out;
    for (i64 i = 2; i <= limit; ++i) {
        if (!sieve[static_cast<size_t>(i)]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= limit; j += i) sieve[static_cast<size_t>(j)] = 0;
    }
    return out;
}

template <class Fn>
void parallel_for(i64 lo, i64 hi, unsigned threads, Fn fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads == 1 || hi - lo < 2) {
        for (i64 i = lo; i <= hi; ++i) fn(i, 0u);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([=, &fn] {
            for (i64 i = lo + t; i <= hi; i += threads) fn(i, t);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<CensusRecord> enumerate_classes(i64 X, Sign sign, const EnumerationOptions& opt) {
    if (X < 1) return {};
    if (X > kDiscGuard) throw arithmetic_range_error("discriminant bound exceeds guard 10^8");
    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::vector<CensusRecord>> parts(threads + 1);
    i64 amax;
    if (sign == Sign::plus) {
        amax = iroot4(16 * X / 729);
        parallel_for(1, amax, threads, [&](i64 a, unsigned t) { positive_slice(X, a, parts[t]); });
        positive_reducible(X, parts[threads]);
    } else {
        amax = iroot4(16 * X / 27);
        parallel_for(1, amax, threads, [&](i64 a, unsigned t) { negative_slice(X, a, parts[t]); });
        negative_reducible(X, parts[threads]);
    }
    std::vector<CensusRecord> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end(), by_disc_then_form);
    return out;
}

std::vector<CubicForm> enumerate_forms(i64 X, Sign sign, const EnumerationOptions& opt) {
    std::vector<CubicForm> out;
    for (const auto& r : enumerate_classes(X, sign, opt)) out.push_back(r.form);
    return out;
}

bool is_maximal(const CubicForm& f, i64 disc) {
    i64 n = disc < 0 ? -disc : disc;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int v = 0;
        while (n % p == 0) {
            n /= p;
            ++v;
        }
        if (v >= 2 && !is_maximal_at(f, p)) return false;
    }
    return true;
}

bool passes_specs(const CubicForm& f, const std::vector<LocalSpec>& specs) {
    for (const auto& s : specs)
        if (!matches_spec(f, s)) return false;
    return true;
}

std::vector<CensusRecord> enumerate_fields(i64 X, Sign sign, const std::vector<LocalSpec>& specs,
                                           const EnumerationOptions& opt) {
    auto classes = enumerate_classes(X, sign, opt);
    auto primes = small_primes(std::max<i64>(2, isqrt(X) + 1));
    std::vector<CensusRecord> out;
    for (auto& r : classes) {
        if (r.form.a == 0 || !is_irreducible(r.form)) continue;
        i64 n = r.disc < 0 ? -r.disc : r.disc;
        bool maximal = true;
        for (i64 p : primes) {
            if (p * p > n) break;
            if (n % p) continue;
            int v = 0;
            while (n % p == 0) {
                n /= p;
                ++v;
            }
            if (v >= 2 && !is_maximal_at(r.form, p)) {
                maximal = false;
                break;
            }
        }
        if (!maximal || !passes_specs(r.form, specs)) continue;
        r.irreducible = true;
        r.galois = r.disc > 0 && is_perfect_square(r.disc);
        out.push_back(r);
    }
    return out;
}

CoefficientBox coefficient_box(i64 X, Sign sign) {
    const long double x = static_cast<long double>(X);
    CoefficientBox box{};
    if (sign == Sign::plus) {
        i64 A = iroot4(16 * X / 729);
        i64 B = static_cast<i64>(std::floor(1.5L * A + 2 * std::pow(x, 0.25L))) + 1;
        i64 rootX = isqrt(X) + 1;
        i64 C = std::max<i64>(B, (B * B + rootX) / 3 + 1);
        i64 D = std::max<i64>((B * C + rootX) / 9 + 1, (rootX + X) / 4 + 1);
        box = {A, B, C, D};
    } else {
        i64 A = iroot4(16 * X / 27);
        i64 B = static_cast<i64>(std::floor(std::pow(x / 3, 0.25L) + 1.5L * A)) + 1;
        i64 C = B;
        for (i64 a = 1; a <= A; ++a)
            C = std::max<i64>(C, static_cast<i64>(std::floor(a * std::cbrt(x / (4.0L * a * a * a * a)))) + 1 + B);
        i64 D = (X + B * B) / 4 + 1;
        for (i64 a = 1; a <= A; ++a) D = std::max<i64>(D, (B * C + (a + B) * (a + B) + a * C) / a + 1);
        box = {A, B, C, D};
    }
    return box;
}

bool is_squarefree(i64 n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        if (n % p == 0) n /= p;
    }
    return true;
}

bool is_fundamental_discriminant(i64 D) {
    if (D == 0 || D == 1) return false;
    i64 r = residue(D, 16);
    if (r % 4 == 1) return is_squarefree(D);
    if (r == 8 || r == 12) return is_squarefree(D / 4);
    return false;
}

i64 residue(i64 D, i64 m) {
    i64 r = D % m;
    return r < 0 ? r + m : r;
}

std::vector<i64> fundamental_discs(i64 X, Sign sign) {
    // squarefree sieve over |n| <= X
    std::vector<char> sf(static_cast<size_t>(X + 1), 1);
    for (i64 p = 2; p * p <= X; ++p)
        for (i64 j = p * p; j <= X; j += p * p) sf[static_cast<size_t>(j)] = 0;
    const int s = sign_value(sign);
    std::vector<i64> out;
    for (i64 n = 2; n <= X; ++n) {
        i64 D = s * n;
        i64 r = residue(D, 16);
        bool ok = false;
        if (r % 4 == 1)
            ok = sf[static_cast<size_t>(n)];
        else if (r == 8 || r == 12)
            ok = sf[static_cast<size_t>(n / 4)];
        if (ok) out.push_back(D);
    }
    return out;
}

i64 enumerate_fundamental_discs(i64 X, Sign sign, i64 m, i64 a) {
    if (m < 1) throw std::invalid_argument("modulus must be positive");
    if (a < 0 || a >= m) throw std::invalid_argument("residue must lie in [0, m)");
    i64 count = 0;
    for (i64 D : fundamental_discs(X, sign))
        if (residue(D, m) == a) ++count;
    return count;
}

double fundamental_local_factor(i64 a, i64 p, int k) {
    if (p == 2) {
        i64 r4 = residue(a, 4), r16 = residue(a, 16);
        return (r4 == 1 || r16 == 8 || r16 == 12) ? 1.0 : 0.0;
    }
    if (a % p != 0) return 1.0;
    if (k >= 2 && a % (p * p) != 0) return 1.0;
    if (k == 1) return 1.0 - 1.0 / static_cast<double>(p);
    return 0.0;
}

double fundamental_disc_asymptotic(double X, i64 m, i64 a) {
    if (m % 64 != 0) throw std::invalid_argument("the progression count needs 64 | m");
    double v = 8.0 * X / (std::numbers::pi * std::numbers::pi * static_cast<double>(m)) * fundamental_local_factor(a, 2, 6);
    for (const auto& f : factor(m)) {
        if (f.p == 2) continue;
        double pp = static_cast<double>(f.p);
        v *= fundamental_local_factor(a, f.p, f.k) / (1.0 - 1.0 / (pp * pp));
    }
    return v;
}

census_parse_error::census_parse_error(const std::string& path, std::size_t line_, const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line_) + ": " + what), line(line_) {}

CensusCache build_census(i64 X, Sign sign, const EnumerationOptions& opt) {
    CensusCache c;
    c.sign = sign;
    c.max_disc = X;
    c.records = enumerate_fields(X, sign, {}, opt);
    return c;
}

void save_census(const CensusCache& cache, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << "# cubiccensus sign=" << sign_name(cache.sign) << " max_disc=" << cache.max_disc
            << " enumeration_version=" << cache.version << " records=" << cache.records.size() << "\n";
        out << "sign,disc,a,b,c,d,galois,irreducible\n";
        for (const auto& r : cache.records)
            out << sign_name(cache.sign) << ',' << r.disc << ',' << r.form.a << ',' << r.form.b << ',' << r.form.c
                << ',' << r.form.d << ',' << (r.galois ? 1 : 0) << ',' << (r.irreducible ? 1 : 0) << '\n';
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

i64 parse_int(const std::string& s, const std::string& path, std::size_t line) {
    try {
        size_t used = 0;
        i64 v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw census_parse_error(path, line, "bad integer '" + s + "'");
    }
}

std::string meta_value(const std::string& header, const std::string& key) {
    auto pos = header.find(key + "=");
    if (pos == std::string::npos) return {};
    pos += key.size() + 1;
    auto end = header.find(' ', pos);
    return header.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

}  // namespace

CensusCache load_census(const std::filesystem::path& path) {
    std::ifstream in(path);
    const std::string name = path.string();
    if (!in) throw census_parse_error(name, 0, "cannot open file");
    CensusCache c;
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || line.rfind("# cubiccensus", 0) != 0)
        throw census_parse_error(name, lineno, "missing metadata line");
    try {
        c.sign = parse_sign(meta_value(line, "sign"));
    } catch (const std::exception&) {
        throw census_parse_error(name, lineno, "bad sign in metadata");
    }
    c.max_disc = parse_int(meta_value(line, "max_disc"), name, lineno);
    c.version = static_cast<int>(parse_int(meta_value(line, "enumeration_version"), name, lineno));
    std::string count_text = meta_value(line, "records");
    i64 expected = count_text.empty() ? -1 : parse_int(count_text, name, lineno);
    ++lineno;
    if (!std::getline(in, line) || line != "sign,disc,a,b,c,d,galois,irreducible")
        throw census_parse_error(name, lineno, "missing or wrong header");
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() != 8) throw census_parse_error(name, lineno, "expected 8 fields");
        if (cells[0] != sign_name(c.sign)) throw census_parse_error(name, lineno, "sign differs from metadata");
        CensusRecord r;
        r.disc = parse_int(cells[1], name, lineno);
        r.form = {parse_int(cells[2], name, lineno), parse_int(cells[3], name, lineno), parse_int(cells[4], name, lineno),
                  parse_int(cells[5], name, lineno)};
        i64 g = parse_int(cells[6], name, lineno), irr = parse_int(cells[7], name, lineno);
        if ((g != 0 && g != 1) || (irr != 0 && irr != 1)) throw census_parse_error(name, lineno, "flags must be 0 or 1");
        r.galois = g == 1;
        r.irreducible = irr == 1;
        if (discriminant_wide(r.form) != r.disc) throw census_parse_error(name, lineno, "disc does not match form");
        if (!c.records.empty() && !by_disc_then_form(c.records.back(), r))
            throw census_parse_error(name, lineno, "records out of order");
        c.records.push_back(r);
    }
    if (expected >= 0 && static_cast<i64>(c.records.size()) != expected)
        throw census_parse_error(name, lineno, "truncated file: expected " + std::to_string(expected) + " records");
    return c;
}

}  // namespace cubic
