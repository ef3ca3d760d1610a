// Acceptance run: one PASS/FAIL line per criterion, indented detail lines under it.
// Exit status is 1 when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "cubic/census.hpp"
#include "cubic/characters.hpp"
#include "cubic/enumeration.hpp"
#include "cubic/lfunctions.hpp"
#include "cubic/oracle.hpp"
#include "cubic/predictor.hpp"

using namespace cubic;

namespace {

class Criterion {
public:
    Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

    void check(bool ok, const std::string& line) {
        ok_ = ok_ && ok;
        lines_.push_back(fmt::format("    {} {}", ok ? "ok  " : "FAIL", line));
    }
    void info(const std::string& line) { lines_.push_back("    info " + line); }

    bool finish() const {
        fmt::print("{} {} {}\n", ok_ ? "PASS" : "FAIL", id_, title_);
        for (const auto& l : lines_) fmt::print("{}\n", l);
        std::fflush(stdout);
        return ok_;
    }

private:
    int id_;
    std::string title_;
    bool ok_ = true;
    std::vector<std::string> lines_;
};

CensusQuery query(i64 X, Sign s, i64 m = 1, std::optional<i64> a = {}) {
    CensusQuery q;
    q.X = X;
    q.sign = s;
    q.modulus = m;
    q.residue = a;
    return q;
}

const char* sign_symbol(Sign s) { return s == Sign::plus ? "+" : "-"; }

struct Expected {
    i64 m, a;
    Sign sign;
    i64 count, predicted;
};

// Census and predicted columns of the progression tables; + at 2e6, - at 1e6.
const std::vector<Expected> kProgressionTables = {
    {7, 1, Sign::plus, 17229, 17209},    {7, 2, Sign::plus, 14327, 14277},    {7, 3, Sign::plus, 15323, 15316},
    {7, 4, Sign::plus, 17027, 17024},    {7, 5, Sign::plus, 18058, 18063},    {7, 6, Sign::plus, 15150, 15131},
    {7, 1, Sign::minus, 27281, 27216},   {7, 2, Sign::minus, 24343, 24366},   {7, 3, Sign::minus, 25389, 25376},
    {7, 4, Sign::minus, 27035, 27036},   {7, 5, Sign::minus, 28051, 28046},   {7, 6, Sign::minus, 25227, 25196},
    {49, 7, Sign::plus, 2155, 2157},     {49, 14, Sign::plus, 1920, 1910},    {49, 21, Sign::plus, 2562, 2553},
    {49, 28, Sign::plus, 2519, 2553},    {49, 35, Sign::plus, 1921, 1910},    {49, 42, Sign::plus, 2159, 2157},
    {49, 7, Sign::minus, 3555, 3595},    {49, 14, Sign::minus, 3362, 3355},   {49, 21, Sign::minus, 3967, 3980},
    {49, 28, Sign::minus, 3980, 3980},   {49, 35, Sign::minus, 3345, 3355},   {49, 42, Sign::minus, 3590, 3595},
    {343, 49, Sign::plus, 697, 692},     {343, 98, Sign::plus, 690, 692},     {343, 147, Sign::plus, 0, 0},
    {343, 196, Sign::plus, 707, 692},    {343, 245, Sign::plus, 0, 0},        {343, 294, Sign::plus, 0, 0},
    {343, 49, Sign::minus, 1117, 1101},  {343, 98, Sign::minus, 1092, 1101},  {343, 147, Sign::minus, 0, 0},
    {343, 196, Sign::minus, 1083, 1101}, {343, 245, Sign::minus, 0, 0},       {343, 294, Sign::minus, 0, 0},
};

double table_X(Sign s) { return s == Sign::plus ? 2e6 : 1e6; }

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

std::vector<CubicForm> box_search(i64 X, Sign sign) {
    auto B = coefficient_box(X, sign);
    std::set<CubicForm> seen;
    for (i64 a = -B.a; a <= B.a; ++a)
        for (i64 b = -B.b; b <= B.b; ++b)
            for (i64 c = -B.c; c <= B.c; ++c)
                for (i64 d = -B.d; d <= B.d; ++d) {
                    CubicForm f{a, b, c, d};
                    i128 D = discriminant_wide(f) * sign_value(sign);
                    if (D <= 0 || D > X) continue;
                    seen.insert(reduce(f));
                }
    return {seen.begin(), seen.end()};
}

double trivial_k1_term(i64 m) {
    double t = riemann_zeta(1.0 / 3) / riemann_zeta(5.0 / 3);
    for (const auto& f : factor(m)) {
        double p = static_cast<double>(f.p);
        t *= (1 - std::pow(p, -4.0 / 3)) / ((1 - std::pow(p, -5.0 / 3)) * (1 + 1 / p));
    }
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app("acceptance run");
    std::string dir = default_cache_dir().string();
    app.add_option("--cache-dir", dir, "census cache directory");
    CLI11_PARSE(app, argc, argv);

    const auto t0 = std::chrono::steady_clock::now();
    const CensusCache plus = obtain_census(dir, 2000000, Sign::plus);
    const CensusCache minus = obtain_census(dir, 1000000, Sign::minus);
    auto census = [&](Sign s) -> const CensusCache& { return s == Sign::plus ? plus : minus; };
    fmt::print("census ready in {:.1f} s (cache {})\n",
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), dir);

    bool all = true;

    {
        Criterion c(1, "mod-7 field census, sign +, X = 2e6");
        const i64 want[] = {15330, 17229, 14327, 15323, 17027, 18058, 15150};
        auto got = counts_by_residue(plus, query(2000000, Sign::plus, 7));
        for (i64 a = 0; a < 7; ++a) c.check(got[a] == want[a], fmt::format("a={} count {} want {}", a, got[a], want[a]));
        // remaining census columns of the progression tables
        i64 agree = 0;
        for (const auto& e : kProgressionTables)
            agree += count_fields(census(e.sign), query(static_cast<i64>(table_X(e.sign)), e.sign, e.m, e.a)) == e.count;
        c.info(fmt::format("other census columns (mod 7/49/343, both signs): {}/{} agree", agree, kProgressionTables.size()));
        all &= c.finish();
    }

    {
        Criterion c(2, "mod-7/49/343 predicted tables");
        for (const auto& e : kProgressionTables) {
            double v = ap_terms(e.m, e.a, e.sign).at(table_X(e.sign));
            long long r = round_half_away(v);
            c.check(std::llabs(r - e.predicted) <= 1,
                    fmt::format("({},{},{}) {:.3f} -> {} want {}", e.m, e.a, sign_symbol(e.sign), v, r, e.predicted));
        }
        all &= c.finish();
    }

    {
        Criterion c(3, "printed progression constants (folded)");
        for (i64 a = 1; a < 7; ++a) {
            double v = ap_folded(7, a).C1;
            c.check(near(v, 0.00993261, 1e-6), fmt::format("C1(7,{}) = {:.9f}", a, v));
        }
        struct K {
            const char* name;
            double got, want;
        };
        for (auto k : {K{"K1(7,5)", ap_folded(7, 5).K1, -0.0101147}, K{"K1(7,2)", ap_folded(7, 2).K1, -0.0313625},
                       K{"C1(49,21)", ap_folded(49, 21).C1, 0.00141894}, K{"K1(49,21)", ap_folded(49, 21).K1, -0.00159849},
                       K{"C1(343,49)", ap_folded(343, 49).C1, 0.000405412},
                       K{"K1(343,49)", ap_folded(343, 49).K1, -0.000664801}})
            c.check(near(k.got, k.want, 1e-6), fmt::format("{} = {:.9f} want {}", k.name, k.got, k.want));
        all &= c.finish();
    }

    {
        Criterion c(4, "3-torsion headline, |D| < 1e6");
        i64 tp = torsion_sum(plus, query(1000000, Sign::plus));
        i64 tm = torsion_sum(minus, query(1000000, Sign::minus));
        c.check(tp == 381071, fmt::format("sum over D > 0: {} want 381071", tp));
        c.check(tm == 566398, fmt::format("sum over D < 0: {} want 566398", tm));
        double pp = torsion_terms(Sign::plus, {}).at(1e6), pm = torsion_terms(Sign::minus, {}).at(1e6);
        c.check(near(pp, 381337.24, 0.05), fmt::format("predicted D > 0: {:.4f} want 381337.24 +- 0.05", pp));
        c.check(near(pm, 566448.83, 0.05), fmt::format("predicted D < 0: {:.4f} want 566448.83 +- 0.05", pm));
        PredictorConfig raw;
        raw.prime_cutoff = 10000000;
        raw.tail_correction = false;
        c.info(fmt::format("Euler product cut at p <= 1e7, no tail term: {:.4f} and {:.4f}",
                           torsion_terms(Sign::plus, {}, raw).at(1e6), torsion_terms(Sign::minus, {}, raw).at(1e6)));
        PredictorConfig longer;
        longer.prime_cutoff = 10000000;
        c.info(fmt::format("cut at 1e7 with tail term: {:.4f} and {:.4f}", torsion_terms(Sign::plus, {}, longer).at(1e6),
                           torsion_terms(Sign::minus, {}, longer).at(1e6)));
        all &= c.finish();
    }

    {
        Criterion c(5, "local specification {inert at 7, partially ramified at 5}, sign +, X = 2e6");
        auto specs = merge_specs({parse_spec("7:inert"), parse_spec("5:partially_ramified")});
        auto t = spec_terms(Sign::plus, specs);
        double CS = t.A * 12 * zeta3();
        double KS = t.B * 5 * gamma23_cubed() * riemann_zeta(5.0 / 3) / (4 * riemann_zeta(1.0 / 3));
        c.check(near(CS, 0.046217, 1e-6), fmt::format("C(S) = {:.8f}", CS));
        c.check(near(KS, 0.030884, 1e-6), fmt::format("K(S) = {:.8f}", KS));
        c.check(near(t.main_at(2e6), 6408.0, 0.1), fmt::format("main term {:.3f}", t.main_at(2e6)));
        c.info(fmt::format("main term with C(S) rounded to 0.046217 first: {:.3f}", 0.046217 / (12 * zeta3()) * 2e6));
        c.check(near(t.secondary_at(2e6), -812.7, 0.1), fmt::format("secondary term {:.3f}", t.secondary_at(2e6)));
        c.check(round_half_away(t.at(2e6)) == 5595, fmt::format("predicted {:.3f}", t.at(2e6)));
        auto q = query(2000000, Sign::plus);
        q.specs = specs;
        i64 n = count_fields(plus, q);
        c.check(n == 5546, fmt::format("count {} want 5546", n));
        all &= c.finish();
    }

    {
        Criterion c(6, "3-torsion in progressions mod 5 and 7, sign +, X = 2e6");
        auto q = query(2000000, Sign::plus);
        q.mode = CensusMode::Torsion;
        const i64 pred5[] = {126942, 160239, 160239, 160239, 160239};
        const i64 act5[] = {126841, 160373, 160202, 160252, 160207};
        const i64 pred7[] = {95095, 113486, 109566, 110919, 113345, 114699, 110779};
        const i64 act7[] = {95138, 113407, 109506, 110955, 113232, 114741, 110898};
        for (i64 m : {5, 7}) {
            q.modulus = m;
            auto counts = counts_by_residue(plus, q);
            const i64* pred = m == 5 ? pred5 : pred7;
            const i64* act = m == 5 ? act5 : act7;
            i64 printed_total = 0;
            for (i64 a = 0; a < m; ++a) {
                double v = torsion_ap_terms(m, a, Sign::plus).at(2e6);
                long long r = round_half_away(v);
                c.check(std::llabs(r - pred[a]) <= 1, fmt::format("predicted mod {} a={}: {:.2f} -> {} want {}", m, a, v, r, pred[a]));
                c.check(counts[a] == act[a], fmt::format("count mod {} a={}: {} want {}", m, a, counts[a], act[a]));
                printed_total += act[a];
            }
            c.info(fmt::format("mod {}: printed counts add to {}, census total {}", m, printed_total,
                               torsion_sum(plus, query(2000000, Sign::plus))));
        }
        PredictorConfig shorter;
        shorter.prime_cutoff = 10000;
        shorter.tail_correction = false;
        std::string row;
        for (i64 a = 0; a < 7; ++a) row += fmt::format(" {:.2f}", torsion_ap_terms(7, a, Sign::plus, shorter).at(2e6));
        c.info("mod 7 predictions with the Euler product cut at p <= 1e4, no tail term:" + row);
        all &= c.finish();
    }

    bool suite = true;
    {
        Criterion c(7, "property suite");
        for (i64 X : {49, 100, 1000})
            for (Sign s : {Sign::plus, Sign::minus}) {
                auto v = sieve_identity_check(X, s);
                c.check(v.pass, fmt::format("(a) sieve identity X={} sign {}: {}", X, sign_symbol(s), v.details.dump()));
            }
        for (i64 X : {23, 50, 500})
            for (Sign s : {Sign::plus, Sign::minus}) {
                auto v = shintani_weight_check(X, s);
                c.check(v.pass, fmt::format("(b) stabilizer weights X={} sign {}: {}", X, sign_symbol(s), v.details.dump()));
            }
        {
            auto v = verify_phi_hat(5);
            std::string rows;
            for (const char* cond : {"U", "V"}) rows += fmt::format(" {}: {}", cond, v.details.at(cond).at("rows").dump());
            c.check(v.pass, "(c) phi-hat rows at p=5, rows hit" + rows);
        }
        for (Sign s : {Sign::plus, Sign::minus}) {
            auto brute = box_search(5000, s);
            auto forms = enumerate_forms(5000, s);
            std::sort(forms.begin(), forms.end());
            c.check(brute == forms, fmt::format("(d) box search X=5000 sign {}: {} classes, enumeration {}", sign_symbol(s),
                                                brute.size(), forms.size()));
        }
        for (i64 m : {7, 9, 13, 91}) {
            auto chars = all_characters(m);
            double worst = 0;
            for (i64 a = 1; a < m; ++a)
                for (i64 b = 1; b < m; ++b) {
                    if (gcd64(a, m) != 1 || gcd64(b, m) != 1) continue;
                    std::complex<double> s = 0;
                    for (const auto& chi : chars) s += chi(a) * std::conj(chi(b));
                    worst = std::max(worst, std::abs(s - (a == b ? static_cast<double>(chars.size()) : 0.0)));
                }
            double k = 0;
            for (i64 a = 1; a < m; ++a)
                if (gcd64(a, m) == 1) k += ap_constants(m, a).K1;
            double dk = std::abs(k - trivial_k1_term(m));
            c.check(worst < 1e-8 && dk < 1e-8,
                    fmt::format("(e) m={}: orthogonality error {:.1e}, K1 collapse error {:.1e}", m, worst, dk));
        }
        suite = c.finish();
        all &= suite;
    }

    {
        Criterion c(8, "error-term exponents excluded; covered by the property suite");
        c.check(suite, "property suite passed");
        all &= c.finish();
    }

    fmt::print("{}\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
    return all ? 0 : 1;
}
