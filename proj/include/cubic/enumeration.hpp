#ifndef CUBIC_ENUMERATION_HPP
#define CUBIC_ENUMERATION_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubic/forms.hpp"
#include "cubic/localdata.hpp"

namespace cubic {

// Bumped whenever enumeration output could change; stored in cache files.
inline constexpr int kEnumerationVersion = 1;

struct CensusRecord {
    i64 disc = 0;
    CubicForm form;
    bool galois = false;
    bool irreducible = true;
    bool operator==(const CensusRecord&) const = default;
};

struct EnumerationOptions {
    unsigned threads = 0;  // 0: hardware concurrency
};

// One canonical form per GL2(Z)-class with 0 < sign * Disc <= X, ordered by (|Disc|, coefficients).
std::vector<CubicForm> enumerate_forms(i64 X, Sign sign, const EnumerationOptions& opt = {});

// Same classes with their discriminants attached.
std::vector<CensusRecord> enumerate_classes(i64 X, Sign sign, const EnumerationOptions& opt = {});

// Cubic fields: irreducible forms maximal at every prime, optionally restricted by local specs.
std::vector<CensusRecord> enumerate_fields(i64 X, Sign sign, const std::vector<LocalSpec>& specs = {},
                                           const EnumerationOptions& opt = {});

bool is_maximal(const CubicForm& f, i64 disc);
bool passes_specs(const CubicForm& f, const std::vector<LocalSpec>& specs);

// Per-coefficient absolute bounds satisfied by every reduced form with 0 < sign*Disc <= X.
struct CoefficientBox {
    i64 a, b, c, d;
};
CoefficientBox coefficient_box(i64 X, Sign sign);

bool is_fundamental_discriminant(i64 D);
bool is_squarefree(i64 n);

// Residue of a signed integer modulo m in [0, m).
i64 residue(i64 D, i64 m);

// Exact number of fundamental D with 0 < sign*D <= X and D = a mod m.
i64 enumerate_fundamental_discs(i64 X, Sign sign, i64 m = 1, i64 a = 0);

// All fundamental D with 0 < sign*D <= X, in increasing |D|.
std::vector<i64> fundamental_discs(i64 X, Sign sign);

// Local factor of the quadratic-field progression count: e(a, p^k) for odd p, e(a, 2) for p = 2.
double fundamental_local_factor(i64 a, i64 p, int k);
// Asymptotic count 8 X e(a,2) prod e(a,p^k)(1-p^-2)^-1 / (pi^2 m), needs 64 | m.
double fundamental_disc_asymptotic(double X, i64 m, i64 a);

struct CensusCache {
    Sign sign = Sign::plus;
    i64 max_disc = 0;
    int version = kEnumerationVersion;
    std::vector<CensusRecord> records;
    bool operator==(const CensusCache&) const = default;
};

struct census_parse_error : std::runtime_error {
    census_parse_error(const std::string& path, std::size_t line, const std::string& what);
    std::size_t line;
};

CensusCache build_census(i64 X, Sign sign, const EnumerationOptions& opt = {});
void save_census(const CensusCache& cache, const std::filesystem::path& path);
CensusCache load_census(const std::filesystem::path& path);

}  // namespace cubic

#endif
