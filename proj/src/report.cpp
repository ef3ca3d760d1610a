#include "cubic/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <ostream>

namespace cubic {

namespace {

std::string num(double x) { return fmt::format("{}", x); }

void csv_cell(std::ostream& out, const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

void table_header(std::ostream& out, const ReportHeader& h) {
    std::string line = "#";
    for (const auto& [k, v] : h) line += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    out << line << '\n';
}

nlohmann::json header_json(const ReportHeader& h) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : h) j[k] = v;
    return j;
}

size_t label_width(const std::vector<std::string>& labels) {
    size_t w = 5;
    for (const auto& l : labels) w = std::max(w, l.size());
    return w;
}

template <class Row>
std::vector<std::string> labels_of(const std::vector<Row>& rows) {
    std::vector<std::string> out;
    for (const auto& r : rows) out.push_back(r.label);
    return out;
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
    if (s == "table") return OutputFormat::Table;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw config_error("unknown format '" + s + "' (table, csv, json)");
}

std::string format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::Table: return "table";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
    }
    return "";
}

PredictorConfig RunConfig::predictor() const {
    PredictorConfig p;
    p.prime_cutoff = prime_cutoff;
    p.tail_correction = tail_correction;
    return p;
}

double RunConfig::bound(double predicted) const {
    if (absolute) return *absolute;
    return sigmas * std::sqrt(std::abs(predicted));
}

RunConfig RunConfig::from_json(const nlohmann::json& j, const std::filesystem::path& base) {
    if (!j.is_object()) throw config_error("config must be a JSON object");
    RunConfig c;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "cache_dir") {
                std::filesystem::path p = v.get<std::string>();
                c.cache_dir = p.is_absolute() ? p : base / p;
            } else if (key == "prime_cutoff") {
                c.prime_cutoff = v.get<i64>();
            } else if (key == "tail_correction") {
                c.tail_correction = v.get<bool>();
            } else if (key == "format") {
                c.format = parse_format(v.get<std::string>());
            } else if (key == "tolerance") {
                if (!v.is_object()) throw config_error("tolerance must be an object");
                for (const auto& [tk, tv] : v.items()) {
                    if (tk == "sigmas")
                        c.sigmas = tv.get<double>();
                    else if (tk == "absolute")
                        c.absolute = tv.get<double>();
                    else
                        throw config_error("unknown tolerance key '" + tk + "'");
                }
            } else {
                throw config_error("unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("bad config value: ") + e.what());
    }
    if (c.prime_cutoff < 2) throw config_error("prime_cutoff must be at least 2");
    if (c.sigmas <= 0 || (c.absolute && *c.absolute < 0)) throw config_error("tolerances must be positive");
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw config_error("cannot open config " + file.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("config " + file.string() + ": " + e.what());
    }
    return from_json(j, std::filesystem::absolute(file).parent_path());
}

void RunConfig::resolve() { cache_dir = std::filesystem::weakly_canonical(std::filesystem::absolute(cache_dir)); }

ComparisonRow ComparisonRow::make(std::string label, i64 empirical, double predicted) {
    return {std::move(label), empirical, predicted, static_cast<double>(empirical) - predicted};
}

void render_counts(std::ostream& out, OutputFormat f, const ReportHeader& h, const std::vector<CountRow>& rows) {
    switch (f) {
        case OutputFormat::Table: {
            table_header(out, h);
            size_t w = label_width(labels_of(rows));
            out << fmt::format("{:<{}}  {:>12}\n", "label", w, "count");
            for (const auto& r : rows) out << fmt::format("{:<{}}  {:>12}\n", r.label, w, r.count);
            break;
        }
        case OutputFormat::Csv:
            out << "label,count\n";
            for (const auto& r : rows) {
                csv_cell(out, r.label);
                out << ',' << r.count << '\n';
            }
            break;
        case OutputFormat::Json: {
            nlohmann::json j{{"query", header_json(h)}, {"rows", nlohmann::json::array()}};
            for (const auto& r : rows) j["rows"].push_back({{"label", r.label}, {"count", r.count}});
            out << j.dump(2) << '\n';
            break;
        }
    }
}

void render_predictions(std::ostream& out, OutputFormat f, const ReportHeader& h,
                        const std::vector<PredictionRow>& rows) {
    switch (f) {
        case OutputFormat::Table: {
            table_header(out, h);
            size_t w = label_width(labels_of(rows));
            out << fmt::format("{:<{}}  {:>14} {:>14} {:>14} {:>14} {:>14} {:>10} {:>12}\n", "label", w, "A", "B",
                               "main", "secondary", "predicted", "rounded", "truncation");
            for (const auto& r : rows) {
                const auto& t = r.terms;
                out << fmt::format("{:<{}}  {:>14.9f} {:>14.9f} {:>14.3f} {:>14.3f} {:>14.3f} {:>10} {:>12.3g}\n",
                                   r.label, w, t.A, t.B, t.main_at(r.X), t.secondary_at(r.X), t.at(r.X),
                                   round_half_away(t.at(r.X)), t.tail_bound * std::pow(r.X, 5.0 / 6.0));
            }
            break;
        }
        case OutputFormat::Csv:
            out << "label,at,A,B,main,secondary,predicted,rounded,truncation_error\n";
            for (const auto& r : rows) {
                const auto& t = r.terms;
                csv_cell(out, r.label);
                out << ',' << num(r.X) << ',' << num(t.A) << ',' << num(t.B) << ',' << num(t.main_at(r.X)) << ','
                    << num(t.secondary_at(r.X)) << ',' << num(t.at(r.X)) << ',' << round_half_away(t.at(r.X)) << ','
                    << num(t.tail_bound * std::pow(r.X, 5.0 / 6.0)) << '\n';
            }
            break;
        case OutputFormat::Json: {
            nlohmann::json j{{"query", header_json(h)}, {"rows", nlohmann::json::array()}};
            for (const auto& r : rows) {
                const auto& t = r.terms;
                j["rows"].push_back({{"label", r.label},
                                     {"at", r.X},
                                     {"A", t.A},
                                     {"B", t.B},
                                     {"main", t.main_at(r.X)},
                                     {"secondary", t.secondary_at(r.X)},
                                     {"predicted", t.at(r.X)},
                                     {"rounded", round_half_away(t.at(r.X))},
                                     {"truncation_error", t.tail_bound * std::pow(r.X, 5.0 / 6.0)},
                                     {"descriptor", t.descriptor}});
            }
            out << j.dump(2) << '\n';
            break;
        }
    }
}

bool render_comparison(std::ostream& out, const RunConfig& cfg, const ReportHeader& h,
                       const std::vector<ComparisonRow>& rows) {
    bool all = true;
    std::vector<bool> ok;
    for (const auto& r : rows) {
        ok.push_back(std::abs(r.difference) <= cfg.bound(r.predicted));
        all = all && ok.back();
    }
    switch (cfg.format) {
        case OutputFormat::Table: {
            table_header(out, h);
            size_t w = label_width(labels_of(rows));
            out << fmt::format("{:<{}}  {:>12} {:>12} {:>14} {:>12} {:>10}  {}\n", "label", w, "actual", "expected",
                               "predicted", "difference", "bound", "status");
            for (size_t i = 0; i < rows.size(); ++i) {
                const auto& r = rows[i];
                out << fmt::format("{:<{}}  {:>12} {:>12} {:>14.3f} {:>12.3f} {:>10.2f}  {}\n", r.label, w,
                                   r.empirical, round_half_away(r.predicted), r.predicted, r.difference,
                                   cfg.bound(r.predicted), ok[i] ? "ok" : "FAIL");
            }
            break;
        }
        case OutputFormat::Csv:
            out << "label,empirical,predicted,rounded,difference,bound,ok\n";
            for (size_t i = 0; i < rows.size(); ++i) {
                const auto& r = rows[i];
                csv_cell(out, r.label);
                out << ',' << r.empirical << ',' << num(r.predicted) << ',' << round_half_away(r.predicted) << ','
                    << num(r.difference) << ',' << num(cfg.bound(r.predicted)) << ',' << (ok[i] ? "true" : "false")
                    << '\n';
            }
            break;
        case OutputFormat::Json: {
            nlohmann::json j{{"query", header_json(h)}, {"pass", all}, {"rows", nlohmann::json::array()}};
            for (size_t i = 0; i < rows.size(); ++i) {
                const auto& r = rows[i];
                j["rows"].push_back({{"label", r.label},
                                     {"empirical", r.empirical},
                                     {"predicted", r.predicted},
                                     {"rounded", round_half_away(r.predicted)},
                                     {"difference", r.difference},
                                     {"bound", cfg.bound(r.predicted)},
                                     {"ok", static_cast<bool>(ok[i])}});
            }
            out << j.dump(2) << '\n';
            break;
        }
    }
    return all;
}

}  // namespace cubic
