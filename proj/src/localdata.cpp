#include "cubic/localdata.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cubic/characters.hpp"

namespace cubic {

namespace {

i64 mod(i128 a, i64 m) {
    i128 r = a % m;
    return static_cast<i64>(r < 0 ? r + m : r);
}

i128 eval(const CubicForm& f, i64 u, i64 v) {
    i128 U = u, V = v;
    return f.a * U * U * U + f.b * U * U * V + f.c * U * V * V + f.d * V * V * V;
}

struct RootPoint {
    i64 x, y;      // (x : y) in P^1(F_p)
    int multiplicity;
};

// Roots of f mod p in P^1(F_p) with multiplicities. f must not vanish identically mod p.
std::vector<RootPoint> roots_mod_p(const CubicForm& f, i64 p) {
    std::vector<RootPoint> out;
    i64 a = mod(f.a, p), b = mod(f.b, p), c = mod(f.c, p), d = mod(f.d, p);
    int inf = a != 0 ? 0 : (b != 0 ? 1 : (c != 0 ? 2 : 3));
    if (inf > 0) out.push_back({1, 0, inf});
    // g(x) = f(x, 1), of degree 3 - inf
    std::vector<i64> g{d, c, b, a};  // low to high
    g.resize(static_cast<size_t>(4 - inf));
    for (i64 x = 0; x < p && g.size() > 1; ++x) {
        int mult = 0;
        while (g.size() > 1) {
            // synthetic division by (X - x)
            std::vector<i64> q(g.size() - 1);
            i64 carry = 0;
            for (size_t i = g.size(); i-- > 1;) {
                carry = mod(static_cast<i128>(carry) * x + g[i], p);
                q[i - 1] = carry;
            }
            i64 rem = mod(static_cast<i128>(carry) * x + g[0], p);
            if (rem != 0) break;
            g = q;
            ++mult;
        }
        if (mult > 0) out.push_back({x, 1, mult});
    }
    return out;
}

bool legendre_is_residue(i64 a, i64 p) { return powmod(mod(a, p), (p - 1) / 2, p) == 1; }

i64 least_primitive_root(i64 p) {
    auto fs = factor(p - 1);
    for (i64 g = 2;; ++g) {
        bool ok = true;
        for (const auto& f : fs)
            if (powmod(g, (p - 1) / f.p, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
}

i64 dlog_small(i64 g, i64 h, i64 p) {
    i64 x = 1;
    for (i64 e = 0; e < p - 1; ++e) {
        if (x == h) return e;
        x = x * g % p;
    }
    throw std::domain_error("no discrete log");
}

SplittingSymbol generic_type(const CubicForm& f, i64 p) {
    auto roots = roots_mod_p(f, p);
    std::vector<int> m;
    for (const auto& r : roots) m.push_back(r.multiplicity);
    std::sort(m.begin(), m.end());
    if (m == std::vector<int>{1, 1, 1}) return {Kind::TotallySplit, 0};
    if (m == std::vector<int>{1}) return {Kind::PartiallySplit, 0};
    if (m.empty()) return {Kind::Inert, 0};
    if (m == std::vector<int>{1, 2}) {
        i128 D = discriminant_wide(f);
        return {Kind::PartiallyRamified, legendre_is_residue(mod(D / p, p), p) ? 1 : 2};
    }
    // triple root
    if (p % 3 == 2) return {Kind::TotallyRamified, 1};
    const auto& r = roots.front();
    Unimodular g = r.y == 0 ? Unimodular{1, 0, 0, 1} : Unimodular{r.x, 1, -1, 0};
    i128 top = eval(f, g.p, g.q);
    i64 alpha = mod(top / p, p);
    i64 dd = mod(eval(f, g.r, g.s), p);
    i64 key = mod(static_cast<i128>(alpha) * dd % p * dd, p);
    i64 l = dlog_small(least_primitive_root(p), key, p);
    return {Kind::TotallyRamified, static_cast<int>(1 + l % 3)};
}

std::vector<LocalRow> generic_rows(i64 p) {
    std::vector<LocalRow> rows{
        {{Kind::TotallySplit, 0}, "", 1, 0, 1.0, 6},
        {{Kind::PartiallySplit, 0}, "", 1, 0, 1.0, 2},
        {{Kind::Inert, 0}, "", 1, 0, 1.0, 3},
        {{Kind::PartiallyRamified, 1}, "x^2 + a p, -a square", 2, 1, 0.5, 2},
        {{Kind::PartiallyRamified, 2}, "x^2 + a p, -a nonsquare", 2, 1, 0.5, 2},
    };
    if (p % 3 == 2) {
        rows.push_back({{Kind::TotallyRamified, 1}, "x^3 + a p", 2, 2, 1.0, 1});
    } else {
        for (int j = 1; j <= 3; ++j)
            rows.push_back({{Kind::TotallyRamified, j}, "x^3 + g^" + std::to_string(j - 1) + " p", 2, 2, 1.0 / 3, 3});
    }
    return rows;
}

std::vector<LocalRow> rows_at_2() {
    return {
        {{Kind::TotallySplit, 0}, "", 1, 0, 1.0, 6},
        {{Kind::PartiallySplit, 0}, "", 1, 0, 1.0, 2},
        {{Kind::Inert, 0}, "", 1, 0, 1.0, 3},
        {{Kind::PartiallyRamified, 1}, "x^2 + 2x + 2", 3, 2, 0.25, 2},
        {{Kind::PartiallyRamified, 2}, "x^2 + 2x - 2", 3, 2, 0.25, 2},
        {{Kind::PartiallyRamified, 3}, "x^2 + 2", 4, 3, 0.125, 2},
        {{Kind::PartiallyRamified, 4}, "x^2 - 2", 4, 3, 0.125, 2},
        {{Kind::PartiallyRamified, 5}, "x^2 + 6", 4, 3, 0.125, 2},
        {{Kind::PartiallyRamified, 6}, "x^2 - 6", 4, 3, 0.125, 2},
        {{Kind::TotallyRamified, 1}, "x^3 + 2", 2, 2, 1.0, 1},
    };
}

std::vector<LocalRow> rows_at_3() {
    return {
        {{Kind::TotallySplit, 0}, "", 1, 0, 1.0, 6},
        {{Kind::PartiallySplit, 0}, "", 1, 0, 1.0, 2},
        {{Kind::Inert, 0}, "", 1, 0, 1.0, 3},
        {{Kind::PartiallyRamified, 1}, "x^2 + 3", 2, 1, 0.5, 2},
        {{Kind::PartiallyRamified, 2}, "x^2 - 3", 2, 1, 0.5, 2},
        {{Kind::TotallyRamified, 1}, "x^3 + 3x + 3", 2, 3, 1.0 / 3, 1},
        {{Kind::TotallyRamified, 2}, "x^3 - 3x + 3", 2, 3, 1.0 / 3, 1},
        {{Kind::TotallyRamified, 3}, "x^3 + 3x^2 + 3", 2, 4, 1.0 / 9, 1},
        {{Kind::TotallyRamified, 4}, "x^3 - 3x^2 + 3", 3, 4, 1.0 / 27, 3},
        {{Kind::TotallyRamified, 5}, "x^3 - 3x^2 + 12", 3, 4, 1.0 / 27, 3},
        {{Kind::TotallyRamified, 6}, "x^3 - 3x^2 + 21", 3, 4, 1.0 / 27, 3},
        {{Kind::TotallyRamified, 7}, "x^3 + 3", 3, 5, 1.0 / 27, 1},
        {{Kind::TotallyRamified, 8}, "x^3 + 12", 3, 5, 1.0 / 27, 1},
        {{Kind::TotallyRamified, 9}, "x^3 + 21", 3, 5, 1.0 / 27, 1},
    };
}

// A form for each row at p = 2, 3, in the same order as the rows.
std::vector<CubicForm> row_forms(i64 p) {
    // (u - v)(u^2 + beta u v + gamma v^2)
    auto pr = [](i64 beta, i64 gamma) { return CubicForm{1, beta - 1, gamma - beta, -gamma}; };
    if (p == 2)
        return {{0, 1, 1, 0}, {0, 1, 1, 1}, {1, 0, 1, 1}, pr(2, 2), pr(2, -2), pr(0, 2),
                pr(0, -2),    pr(0, 6),     pr(0, -6),    {1, 0, 0, 2}};
    return {{0, 1, 1, 0},  {0, 1, 0, 1},   {1, 0, -1, 1}, pr(0, 3),      pr(0, -3),
            {1, 0, 3, 3},  {1, 0, -3, 3},  {1, 3, 0, 3},  {1, -3, 0, 3}, {1, -3, 0, 12},
            {1, -3, 0, 21}, {1, 0, 0, 3},  {1, 0, 0, 12}, {1, 0, 0, 21}};
}

// f -> f((u,v) g) / det g over Z/q; det g must be a unit.
CubicForm act_mod(const Unimodular& g, const CubicForm& f, i64 q) {
    i128 p = g.p, qq = g.q, r = g.r, s = g.s;
    i128 a = f.a, b = f.b, c = f.c, d = f.d;
    i128 na = a * p * p * p + b * p * p * qq + c * p * qq * qq + d * qq * qq * qq;
    i128 nd = a * r * r * r + b * r * r * s + c * r * s * s + d * s * s * s;
    i128 nb = 3 * a * p * p * r + b * (p * p * s + 2 * p * qq * r) + c * (2 * p * qq * s + qq * qq * r) +
              3 * d * qq * qq * s;
    i128 nc = 3 * a * p * r * r + b * (2 * p * r * s + qq * r * r) + c * (p * s * s + 2 * qq * r * s) +
              3 * d * qq * s * s;
    i64 inv = invmod(mod(g.det(), q), q);
    return {mod(na * inv, q), mod(nb * inv, q), mod(nc * inv, q), mod(nd * inv, q)};
}

}  // namespace

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::TotallySplit: return "totally_split";
        case Kind::PartiallySplit: return "partially_split";
        case Kind::Inert: return "inert";
        case Kind::PartiallyRamified: return "partially_ramified";
        case Kind::TotallyRamified: return "totally_ramified";
    }
    return "?";
}

Kind parse_kind(const std::string& s) {
    if (s == "totally_split" || s == "ts" || s == "split") return Kind::TotallySplit;
    if (s == "partially_split" || s == "ps") return Kind::PartiallySplit;
    if (s == "inert" || s == "i") return Kind::Inert;
    if (s == "partially_ramified" || s == "pr") return Kind::PartiallyRamified;
    if (s == "totally_ramified" || s == "tr") return Kind::TotallyRamified;
    throw std::invalid_argument("unknown splitting symbol '" + s + "'");
}

std::string SplittingSymbol::str() const {
    std::string s = kind_name(kind);
    if (subtype != 0) s += ":" + std::to_string(subtype);
    return s;
}

std::vector<LocalRow> local_rows(i64 p) {
    if (!is_prime(p)) throw std::domain_error(std::to_string(p) + " is not prime");
    if (p == 2) return rows_at_2();
    if (p == 3) return rows_at_3();
    return generic_rows(p);
}

const LocalRow& local_row(i64 p, const SplittingSymbol& s) {
    static thread_local std::vector<LocalRow> rows;
    static thread_local i64 cached = 0;
    if (cached != p) {
        rows = local_rows(p);
        cached = p;
    }
    for (const auto& r : rows)
        if (r.symbol == s) return r;
    throw std::domain_error("no local ring " + s.str() + " at p = " + std::to_string(p));
}

int subtype_count(i64 p, Kind k) {
    int n = 0;
    for (const auto& r : local_rows(p))
        if (r.symbol.kind == k) ++n;
    return n;
}

bool LocalSpec::admits(const SplittingSymbol& s) const {
    for (const auto& a : allowed) {
        if (a.kind != s.kind) continue;
        if (a.subtype == 0 || a.subtype == s.subtype) return true;
    }
    return false;
}

std::string LocalSpec::str() const {
    std::string s = std::to_string(p) + ":";
    for (size_t i = 0; i < allowed.size(); ++i) s += (i ? "|" : "") + allowed[i].str();
    return s;
}

LocalSpec make_spec(i64 p, std::vector<SplittingSymbol> allowed) {
    if (allowed.empty()) throw std::invalid_argument("empty local specification");
    LocalSpec spec;
    spec.p = p;
    auto rows = local_rows(p);
    for (const auto& a : allowed) {
        bool ramified = a.kind == Kind::PartiallyRamified || a.kind == Kind::TotallyRamified;
        if (!ramified && a.subtype != 0) throw std::invalid_argument("unramified symbols take no subtype");
        if (a.subtype < 0 || a.subtype > subtype_count(p, a.kind))
            throw std::invalid_argument("subtype out of range for " + a.str() + " at " + std::to_string(p));
    }
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    spec.allowed = allowed;
    spec.e_p = 1;
    std::set<int> vals;
    for (const auto& r : rows) {
        if (!spec.admits(r.symbol)) continue;
        spec.e_p = std::max(spec.e_p, r.conductor_exp);
        vals.insert(r.disc_valuation);
    }
    spec.r_p = vals.size() == 1 ? *vals.begin() : -1;
    return spec;
}

LocalSpec parse_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("bad spec '" + text + "'");
    i64 p = 0;
    try {
        size_t used = 0;
        p = std::stoll(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("");
    } catch (...) {
        throw std::invalid_argument("bad prime in spec '" + text + "'");
    }
    if (!is_prime(p)) throw std::invalid_argument("spec prime " + parts[0] + " is not prime");
    SplittingSymbol s{parse_kind(parts[1]), 0};
    if (parts.size() == 3) {
        try {
            s.subtype = std::stoi(parts[2]);
        } catch (...) {
            throw std::invalid_argument("bad subtype in spec '" + text + "'");
        }
        if (s.subtype < 1) throw std::invalid_argument("subtype must be positive in '" + text + "'");
    }
    return make_spec(p, {s});
}

std::vector<LocalSpec> merge_specs(const std::vector<LocalSpec>& specs) {
    std::map<i64, std::vector<SplittingSymbol>> by_prime;
    for (const auto& s : specs) by_prime[s.p].insert(by_prime[s.p].end(), s.allowed.begin(), s.allowed.end());
    std::vector<LocalSpec> out;
    for (auto& [p, allowed] : by_prime) out.push_back(make_spec(p, allowed));
    return out;
}

bool is_maximal_at(const CubicForm& f, i64 p) {
    if (f.a % p == 0 && f.b % p == 0 && f.c % p == 0 && f.d % p == 0) return false;
    i64 p2 = p * p;
    for (const auto& r : roots_mod_p(f, p)) {
        if (r.multiplicity < 2) continue;
        if (mod(eval(f, r.x, r.y), p2) == 0) return false;
    }
    return true;
}

bool is_totally_ramified_at(const CubicForm& f, i64 p) {
    if (!is_maximal_at(f, p)) return false;
    auto roots = roots_mod_p(f, p);
    return roots.size() == 1 && roots.front().multiplicity == 3;
}

bool is_in_Vp(const CubicForm& f, i64 p) { return is_maximal_at(f, p) && !is_totally_ramified_at(f, p); }

SplittingSymbol splitting_type(const CubicForm& f, i64 p) {
    if (!is_maximal_at(f, p))
        throw std::invalid_argument("splitting_type needs a form maximal at " + std::to_string(p) + ": " + f.str());
    if (p == 2 || p == 3) {
        const auto& t = orbit_table(p);
        int idx = t.label_index(f);
        if (idx < 0) throw std::logic_error("orbit table disagrees with the maximality test");
        return local_rows(p)[static_cast<size_t>(idx)].symbol;
    }
    return generic_type(f, p);
}

bool matches_spec(const CubicForm& f, const LocalSpec& spec) {
    return is_maximal_at(f, spec.p) && spec.admits(splitting_type(f, spec.p));
}

i64 residue_index(const CubicForm& f, i64 q) {
    return ((mod(f.a, q) * q + mod(f.b, q)) * q + mod(f.c, q)) * q + mod(f.d, q);
}

CubicForm residue_form(i64 index, i64 q) {
    CubicForm f;
    f.d = index % q;
    index /= q;
    f.c = index % q;
    index /= q;
    f.b = index % q;
    f.a = index / q;
    return f;
}

int OrbitTable::label_index(const CubicForm& f) const { return label_of_[static_cast<size_t>(residue_index(f, q_))]; }

std::vector<OrbitTable::OrbitInfo> OrbitTable::orbits() const {
    std::map<std::int32_t, OrbitInfo> by_root;
    for (size_t i = 0; i < orbit_of_.size(); ++i) {
        auto root = orbit_of_[i];
        auto it = by_root.find(root);
        if (it == by_root.end())
            by_root.emplace(root, OrbitInfo{residue_form(static_cast<i64>(i), q_), 1, label_of_[i]});
        else
            ++it->second.size;
    }
    std::vector<OrbitInfo> out;
    for (auto& [root, info] : by_root) out.push_back(info);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.representative < y.representative; });
    return out;
}

std::map<int, i64> OrbitTable::label_sizes() const {
    std::map<int, i64> out;
    for (auto l : label_of_) ++out[l];
    return out;
}

OrbitTable build_orbit_table(i64 p, int e) {
    if (!((p == 2 && e == 4) || (p == 3 && e == 3)))
        throw std::domain_error("orbit tables are built for (2,4) and (3,3) only");
    OrbitTable t;
    t.p_ = p;
    t.e_ = e;
    i64 q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    t.q_ = q;
    const i64 n = q * q * q * q;
    std::vector<std::int32_t> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::int32_t x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    std::vector<Unimodular> gens{{1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 0}};
    if (p == 2) {
        gens.push_back({-1, 0, 0, 1});
        gens.push_back({5, 0, 0, 1});
    } else {
        gens.push_back({2, 0, 0, 1});
    }
    for (i64 i = 0; i < n; ++i) {
        CubicForm f = residue_form(i, q);
        for (const auto& g : gens) {
            auto x = find(static_cast<std::int32_t>(i));
            auto y = find(static_cast<std::int32_t>(residue_index(act_mod(g, f, q), q)));
            if (x != y) parent[static_cast<size_t>(std::max(x, y))] = std::min(x, y);
        }
    }
    t.orbit_of_.resize(static_cast<size_t>(n));
    for (i64 i = 0; i < n; ++i) t.orbit_of_[static_cast<size_t>(i)] = find(static_cast<std::int32_t>(i));

    std::map<std::int32_t, int> root_label;
    auto forms = row_forms(p);
    for (size_t r = 0; r < forms.size(); ++r) {
        auto root = t.orbit_of_[static_cast<size_t>(residue_index(forms[r], q))];
        if (!root_label.emplace(root, static_cast<int>(r)).second)
            throw std::logic_error("two local rings share an orbit at p = " + std::to_string(p));
    }
    t.label_of_.assign(static_cast<size_t>(n), static_cast<std::int8_t>(OrbitTable::kNonmaximal));
    for (i64 i = 0; i < n; ++i) {
        auto root = t.orbit_of_[static_cast<size_t>(i)];
        auto it = root_label.find(root);
        bool maximal = is_maximal_at(residue_form(i, q), p);
        if (it == root_label.end()) {
            if (maximal) throw std::logic_error("unlabelled maximal orbit at p = " + std::to_string(p));
            continue;
        }
        if (!maximal) throw std::logic_error("labelled orbit contains a nonmaximal form");
        t.label_of_[static_cast<size_t>(i)] = static_cast<std::int8_t>(it->second);
    }
    return t;
}

const OrbitTable& orbit_table(i64 p) {
    static std::once_flag f2, f3;
    static OrbitTable t2, t3;
    if (p == 2) {
        std::call_once(f2, [] { t2 = build_orbit_table(2, 4); });
        return t2;
    }
    if (p == 3) {
        std::call_once(f3, [] { t3 = build_orbit_table(3, 3); });
        return t3;
    }
    throw std::domain_error("no orbit table at p = " + std::to_string(p));
}

void write_orbit_csv(const OrbitTable& t, std::ostream& out) {
    const auto rows = local_rows(t.p());
    out << "a,b,c,d,size,label,ring\n";
    for (const auto& o : t.orbits()) {
        const auto& f = o.representative;
        out << f.a << ',' << f.b << ',' << f.c << ',' << f.d << ',' << o.size << ',' << o.label << ','
            << (o.label == OrbitTable::kNonmaximal ? std::string("nonmaximal")
                                                   : rows[static_cast<size_t>(o.label)].symbol.str())
            << '\n';
    }
}

std::vector<OrbitTable::OrbitInfo> read_orbit_csv(std::istream& in, i64 p) {
    const auto rows = local_rows(p);
    std::string line;
    if (!std::getline(in, line) || line != "a,b,c,d,size,label,ring")
        throw std::invalid_argument("orbit csv: missing header");
    std::vector<OrbitTable::OrbitInfo> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
        auto bad = [&] { return std::invalid_argument("orbit csv line " + std::to_string(lineno) + ": " + line); };
        if (cells.size() != 7) throw bad();
        OrbitTable::OrbitInfo o{};
        try {
            o.representative = {std::stoll(cells[0]), std::stoll(cells[1]), std::stoll(cells[2]), std::stoll(cells[3])};
            o.size = std::stoll(cells[4]);
            o.label = std::stoi(cells[5]);
        } catch (const std::exception&) {
            throw bad();
        }
        if (o.label < OrbitTable::kNonmaximal || o.label >= static_cast<int>(rows.size())) throw bad();
        const std::string want =
            o.label == OrbitTable::kNonmaximal ? "nonmaximal" : rows[static_cast<size_t>(o.label)].symbol.str();
        if (cells[6] != want) throw bad();
        out.push_back(o);
    }
    return out;
}

}  // namespace cubic
