#ifndef CUBIC_LOCALDATA_HPP
#define CUBIC_LOCALDATA_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <iosfwd>
#include <string>
#include <vector>

#include "cubic/forms.hpp"

namespace cubic {

enum class Kind { TotallySplit, PartiallySplit, Inert, PartiallyRamified, TotallyRamified };

std::string kind_name(Kind k);
Kind parse_kind(const std::string& s);

struct SplittingSymbol {
    Kind kind = Kind::TotallySplit;
    int subtype = 0;  // 0 for unramified kinds; 1-based row index for ramified kinds
    auto operator<=>(const SplittingSymbol&) const = default;
    std::string str() const;
};

// One row of the local ring tables at p.
struct LocalRow {
    SplittingSymbol symbol;
    std::string polynomial;   // generating polynomial over Z_p, or empty for p > 3 generic rows
    int conductor_exp;        // e_p
    int disc_valuation;       // r_p
    double multiplier;        // share of the kind's density carried by this row
    int automorphisms;        // |Aut(R)|
};

// Every local ring type at p (maximal cubic algebras over Z_p), one row per subtype.
std::vector<LocalRow> local_rows(i64 p);
const LocalRow& local_row(i64 p, const SplittingSymbol& s);
int subtype_count(i64 p, Kind k);

// A set of admissible rings at p. An allowed entry with subtype 0 on a ramified kind admits every subtype.
struct LocalSpec {
    i64 p = 2;
    std::vector<SplittingSymbol> allowed;
    int e_p = 1;
    int r_p = 0;   // -1 when the allowed rings have different disc valuations

    bool admits(const SplittingSymbol& s) const;
    std::string str() const;
};

LocalSpec make_spec(i64 p, std::vector<SplittingSymbol> allowed);
// "p:symbol[:subtype]", e.g. "7:inert" or "5:partially_ramified:1"
LocalSpec parse_spec(const std::string& text);
// Merge several parsed specs at the same prime into one spec (union of admitted rings).
std::vector<LocalSpec> merge_specs(const std::vector<LocalSpec>& specs);

bool is_maximal_at(const CubicForm& f, i64 p);
bool is_totally_ramified_at(const CubicForm& f, i64 p);
bool is_in_Vp(const CubicForm& f, i64 p);
SplittingSymbol splitting_type(const CubicForm& f, i64 p);
bool matches_spec(const CubicForm& f, const LocalSpec& spec);

// Orbits of GL2(Z/p^e) on V(Z/p^e), labelled by local ring.
class OrbitTable {
public:
    static constexpr int kNonmaximal = -1;

    struct OrbitInfo {
        CubicForm representative;  // least residue tuple in the orbit
        i64 size;
        int label;                 // index into local_rows(p), or kNonmaximal
    };

    i64 p() const { return p_; }
    int e() const { return e_; }
    i64 modulus() const { return q_; }

    // Label index of the orbit containing f mod p^e (kNonmaximal for nonmaximal orbits).
    int label_index(const CubicForm& f) const;
    std::vector<OrbitInfo> orbits() const;
    // Total number of residue tuples carrying each label (kNonmaximal under key -1).
    std::map<int, i64> label_sizes() const;

    friend OrbitTable build_orbit_table(i64 p, int e);

private:
    i64 p_ = 0;
    int e_ = 0;
    i64 q_ = 0;
    std::vector<std::int32_t> orbit_of_;   // residue index -> orbit root
    std::vector<std::int8_t> label_of_;    // residue index -> label
};

OrbitTable build_orbit_table(i64 p, int e);

// Cached tables for (2,4) and (3,3).
const OrbitTable& orbit_table(i64 p);

inline constexpr int kOrbitGeneratorVersion = 1;

// One line per orbit: a,b,c,d,size,label,ring (representative, orbit size, row index or -1, row name).
void write_orbit_csv(const OrbitTable& t, std::ostream& out);
std::vector<OrbitTable::OrbitInfo> read_orbit_csv(std::istream& in, i64 p);

i64 residue_index(const CubicForm& f, i64 q);
CubicForm residue_form(i64 index, i64 q);

}  // namespace cubic

#endif
