#include "cubic/census.hpp"

#include <cstdlib>

namespace cubic {

namespace {

void check_cache(const CensusCache& cache, const CensusQuery& q) {
    q.validate();
    if (cache.sign != q.sign) throw std::invalid_argument("census sign does not match the query");
    if (cache.version != kEnumerationVersion)
        throw stale_cache_error("census was built by enumeration version " + std::to_string(cache.version));
    if (cache.max_disc < q.X)
        throw stale_cache_error("census covers |Disc| <= " + std::to_string(cache.max_disc) + ", query needs " +
                                std::to_string(q.X));
}

i64 abs64(i64 v) { return v < 0 ? -v : v; }

bool in_progression(i64 D, const CensusQuery& q) { return !q.residue || residue(D, q.modulus) == *q.residue; }

bool specs_hold(const CubicForm& f, const std::vector<LocalSpec>& specs) {
    for (const auto& s : specs)
        if (!matches_spec(f, s)) return false;
    return true;
}

// Calls fn(D, weight) for every counted object: fields (weight 1) or torsion contributions.
template <class Fn>
void for_each_counted(const CensusCache& cache, const CensusQuery& q, Fn fn) {
    for (const auto& r : cache.records) {
        if (abs64(r.disc) > q.X) break;
        if (!specs_hold(r.form, q.specs)) continue;
        if (q.mode == CensusMode::Fields) {
            fn(r.disc, 1);
            continue;
        }
        bool ntr = nowhere_totally_ramified(r);
        if (ntr != is_fundamental_discriminant(r.disc))
            throw std::logic_error("fundamental test disagrees with local data at Disc " + std::to_string(r.disc));
        if (ntr) fn(r.disc, q.mode == CensusMode::Torsion ? 2 : 1);
    }
    if (q.mode != CensusMode::Torsion) return;
    for (i64 D : fundamental_discs(q.X, q.sign)) {
        if (!q.specs.empty() && !specs_hold(quadratic_ring_form(D), q.specs)) continue;
        fn(D, 1);
    }
}

}  // namespace

void CensusQuery::validate() const {
    if (X < 0) throw std::invalid_argument("X must be nonnegative");
    if (modulus < 1) throw std::invalid_argument("modulus must be positive");
    if (residue && (*residue < 0 || *residue >= modulus)) throw std::invalid_argument("residue must lie in [0, m)");
}

bool nowhere_totally_ramified(const CensusRecord& r) {
    i64 n = abs64(r.disc);
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int v = 0;
        while (n % p == 0) {
            n /= p;
            ++v;
        }
        if (v >= 2 && !is_in_Vp(r.form, p)) return false;
    }
    return true;
}

CubicForm quadratic_ring_form(i64 D) {
    i64 c = residue(D, 2);
    return {0, 1, c, (c * c - D) / 4};
}

i64 run_query(const CensusCache& cache, const CensusQuery& q) {
    check_cache(cache, q);
    i64 total = 0;
    for_each_counted(cache, q, [&](i64 D, i64 w) {
        if (in_progression(D, q)) total += w;
    });
    return total;
}

i64 count_fields(const CensusCache& cache, const CensusQuery& q) {
    CensusQuery c = q;
    c.mode = CensusMode::Fields;
    return run_query(cache, c);
}

i64 count_nowhere_totally_ramified(const CensusCache& cache, const CensusQuery& q) {
    CensusQuery c = q;
    c.mode = CensusMode::NowhereTotallyRamified;
    return run_query(cache, c);
}

i64 torsion_sum(const CensusCache& cache, const CensusQuery& q) {
    CensusQuery c = q;
    c.mode = CensusMode::Torsion;
    return run_query(cache, c);
}

std::vector<i64> counts_by_residue(const CensusCache& cache, const CensusQuery& q) {
    CensusQuery c = q;
    c.residue.reset();
    check_cache(cache, c);
    std::vector<i64> out(static_cast<size_t>(c.modulus), 0);
    for_each_counted(cache, c, [&](i64 D, i64 w) { out[static_cast<size_t>(residue(D, c.modulus))] += w; });
    return out;
}

std::filesystem::path cache_file(const std::filesystem::path& dir, Sign sign) {
    return dir / ("fields_" + sign_name(sign) + ".csv");
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("CUBICCENSUS_CACHE_DIR"); env && *env) return env;
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "cubiccensus";
    return ".cubiccensus";
}

CensusCache obtain_census(const std::filesystem::path& dir, i64 X, Sign sign, const EnumerationOptions& opt) {
    auto path = cache_file(dir, sign);
    if (std::filesystem::exists(path)) {
        try {
            CensusCache c = load_census(path);
            if (c.sign == sign && c.version == kEnumerationVersion && c.max_disc >= X) return c;
        } catch (const census_parse_error&) {
            // unreadable cache: rebuild below
        }
    }
    CensusCache c = build_census(X, sign, opt);
    save_census(c, path);
    return c;
}

}  // namespace cubic
