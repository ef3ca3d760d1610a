#ifndef CUBIC_REPORT_HPP
#define CUBIC_REPORT_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubic/predictor.hpp"

namespace cubic {

enum class OutputFormat { Table, Csv, Json };
OutputFormat parse_format(const std::string& s);
std::string format_name(OutputFormat f);

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::filesystem::path cache_dir;
    i64 prime_cutoff = 100000;
    bool tail_correction = true;
    OutputFormat format = OutputFormat::Table;
    // A comparison row fails when |difference| > sigmas * sqrt(|predicted|), or > absolute when set.
    double sigmas = 5.0;
    std::optional<double> absolute;

    PredictorConfig predictor() const;
    double bound(double predicted) const;

    // Keys: cache_dir, prime_cutoff, tail_correction, format, tolerance {sigmas, absolute}.
    // Unknown keys are rejected; a relative cache_dir is taken relative to base.
    static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base);
    static RunConfig load(const std::filesystem::path& file);
    // Make every path absolute.
    void resolve();
};

struct ComparisonRow {
    std::string label;
    i64 empirical = 0;
    double predicted = 0;
    double difference = 0;  // empirical - predicted

    static ComparisonRow make(std::string label, i64 empirical, double predicted);
};

struct CountRow {
    std::string label;
    i64 count = 0;
};

struct PredictionRow {
    std::string label;
    PredictionTerms terms;
    double X = 0;
};

// Header facts printed before the rows (table) or stored under "query" (json). Ignored by csv.
using ReportHeader = std::vector<std::pair<std::string, nlohmann::json>>;

void render_counts(std::ostream& out, OutputFormat f, const ReportHeader& h, const std::vector<CountRow>& rows);
void render_predictions(std::ostream& out, OutputFormat f, const ReportHeader& h,
                        const std::vector<PredictionRow>& rows);
// Returns true when every row is within the configured bound.
bool render_comparison(std::ostream& out, const RunConfig& cfg, const ReportHeader& h,
                       const std::vector<ComparisonRow>& rows);

}  // namespace cubic

#endif
