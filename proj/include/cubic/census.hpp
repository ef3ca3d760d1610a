#ifndef CUBIC_CENSUS_HPP
#define CUBIC_CENSUS_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cubic/enumeration.hpp"
#include "cubic/localdata.hpp"

namespace cubic {

enum class CensusMode { Fields, NowhereTotallyRamified, Torsion };

struct CensusQuery {
    i64 X = 0;
    Sign sign = Sign::plus;
    i64 modulus = 1;
    std::optional<i64> residue;
    // Cubic-side specs. For torsion queries build them with torsion_spec().
    std::vector<LocalSpec> specs;
    CensusMode mode = CensusMode::Fields;

    void validate() const;
};

struct stale_cache_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

i64 count_fields(const CensusCache& cache, const CensusQuery& q);
i64 count_nowhere_totally_ramified(const CensusCache& cache, const CensusQuery& q);
// Sum of #Cl(D)[3] over fundamental D in range: #D + 2 #(nowhere totally ramified fields).
i64 torsion_sum(const CensusCache& cache, const CensusQuery& q);

// Dispatch on q.mode.
i64 run_query(const CensusCache& cache, const CensusQuery& q);

// Counts for every residue a mod m at once (the query's residue is ignored).
std::vector<i64> counts_by_residue(const CensusCache& cache, const CensusQuery& q);

// True when the field is maximal and not totally ramified at every prime dividing Disc.
bool nowhere_totally_ramified(const CensusRecord& r);

// Reducible form (0, 1, c, d) of the ring Z x O_F for the quadratic field of discriminant D.
CubicForm quadratic_ring_form(i64 D);

// Cache files live in dir/fields_<sign>.csv.
std::filesystem::path cache_file(const std::filesystem::path& dir, Sign sign);
// Directory from CUBICCENSUS_CACHE_DIR, else $HOME/.cache/cubiccensus, else ./.cubiccensus.
std::filesystem::path default_cache_dir();

// Load the cache for this sign if it covers X, otherwise enumerate to X and rewrite it.
CensusCache obtain_census(const std::filesystem::path& dir, i64 X, Sign sign, const EnumerationOptions& opt = {});

}  // namespace cubic

#endif
