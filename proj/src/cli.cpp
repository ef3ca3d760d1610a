#include "cubic/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "cubic/census.hpp"
#include "cubic/oracle.hpp"
#include "cubic/report.hpp"

namespace cubic {

namespace {

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Globals {
    std::string config_file;
    std::string cache_dir;
    std::string format;
    i64 prime_cutoff = 0;
    double sigmas = 0;
    double absolute = -1;
    bool no_tail = false;
    unsigned threads = 0;
};

struct Filters {
    std::string kind = "fields";
    bool torsion_flag = false;
    i64 max_disc = -1;
    double at = -1;
    std::string sign = "plus";
    i64 modulus = 1;
    std::vector<i64> residues;
    std::vector<std::string> specs;

    bool torsion() const { return torsion_flag || kind == "torsion"; }
};

void add_filters(CLI::App* cmd, Filters& f, bool kind_positional) {
    if (kind_positional)
        cmd->add_option("kind", f.kind, "fields or torsion")->check(CLI::IsMember({"fields", "torsion"}));
    cmd->add_flag("--torsion", f.torsion_flag, "3-torsion in quadratic class groups instead of cubic fields");
    cmd->add_option("--sign", f.sign, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
    cmd->add_option("--mod", f.modulus, "modulus m of the progression")->check(CLI::PositiveNumber);
    cmd->add_option("--residue", f.residues, "residue a mod m (repeatable; default all)");
    cmd->add_option("--spec", f.specs,
                    "local condition p:symbol[:subtype]; symbols are splitting types for fields, "
                    "split|inert|ramified for torsion");
}

RunConfig make_config(const Globals& g) {
    RunConfig c;
    if (!g.config_file.empty()) c = RunConfig::load(g.config_file);
    if (!g.cache_dir.empty()) c.cache_dir = g.cache_dir;
    if (c.cache_dir.empty()) c.cache_dir = default_cache_dir();
    if (!g.format.empty()) c.format = parse_format(g.format);
    if (g.prime_cutoff) c.prime_cutoff = g.prime_cutoff;
    if (g.sigmas > 0) c.sigmas = g.sigmas;
    if (g.absolute >= 0) c.absolute = g.absolute;
    if (g.no_tail) c.tail_correction = false;
    c.resolve();
    return c;
}

std::vector<LocalSpec> parse_specs(const Filters& f) {
    std::vector<LocalSpec> out;
    for (const auto& text : f.specs) {
        if (!f.torsion()) {
            out.push_back(parse_spec(text));
            continue;
        }
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
        if (parts.size() < 2 || parts.size() > 3) throw usage_error("bad torsion spec '" + text + "'");
        i64 p = 0;
        int sub = 0;
        try {
            p = std::stoll(parts[0]);
            if (parts.size() == 3) sub = std::stoi(parts[2]);
        } catch (const std::exception&) {
            throw usage_error("bad torsion spec '" + text + "'");
        }
        if (!is_prime(p)) throw usage_error("spec prime " + parts[0] + " is not prime");
        out.push_back(torsion_spec(p, parse_quadratic_type(parts[1]), sub));
    }
    return merge_specs(out);
}

std::vector<i64> residues(const Filters& f) {
    if (f.modulus == 1) return {0};
    for (i64 a : f.residues)
        if (a < 0 || a >= f.modulus) throw usage_error("residue " + std::to_string(a) + " outside [0, m)");
    if (!f.residues.empty()) return f.residues;
    std::vector<i64> all(static_cast<size_t>(f.modulus));
    for (i64 a = 0; a < f.modulus; ++a) all[static_cast<size_t>(a)] = a;
    return all;
}

std::string row_label(const Filters& f, const std::vector<LocalSpec>& specs, i64 a) {
    std::string s;
    for (const auto& sp : specs) s += (s.empty() ? "" : " ") + sp.str();
    if (f.modulus > 1) s += (s.empty() ? "" : " ") + std::to_string(a) + " mod " + std::to_string(f.modulus);
    return s.empty() ? "all" : s;
}

ReportHeader header(const std::string& command, const Filters& f, const std::vector<LocalSpec>& specs) {
    nlohmann::json spec_list = nlohmann::json::array();
    for (const auto& s : specs) spec_list.push_back(s.str());
    return {{"command", command},
            {"kind", f.torsion() ? "torsion" : "fields"},
            {"sign", f.sign},
            {"modulus", f.modulus},
            {"specs", spec_list}};
}

std::vector<i64> census_counts(const Filters& f, const std::vector<LocalSpec>& specs, const RunConfig& cfg,
                               unsigned threads, const std::vector<i64>& rs) {
    if (f.max_disc < 0) throw usage_error("--max-disc is required");
    CensusQuery q;
    q.X = f.max_disc;
    q.sign = parse_sign(f.sign);
    q.modulus = f.modulus;
    q.specs = specs;
    q.mode = f.torsion() ? CensusMode::Torsion : CensusMode::Fields;
    EnumerationOptions opt;
    opt.threads = threads;
    CensusCache cache = obtain_census(cfg.cache_dir, q.X, q.sign, opt);
    auto all = counts_by_residue(cache, q);
    std::vector<i64> out;
    for (i64 a : rs) out.push_back(all[static_cast<size_t>(a)]);
    return out;
}

PredictionTerms prediction(const Filters& f, const std::vector<LocalSpec>& specs, const RunConfig& cfg, i64 a) {
    const Sign sign = parse_sign(f.sign);
    const auto pc = cfg.predictor();
    if (!specs.empty() && f.modulus > 1)
        throw not_implemented_error("predictions combining local specifications with a progression");
    if (f.torsion()) {
        if (f.modulus > 1) return torsion_ap_terms(f.modulus, a, sign, pc);
        return torsion_terms(sign, specs, pc);
    }
    if (f.modulus > 1) return ap_terms(f.modulus, a, sign, pc);
    if (!specs.empty()) return spec_terms(sign, specs);
    return roberts_terms(sign);
}

int cmd_census(const Filters& f, const RunConfig& cfg, unsigned threads, std::ostream& out) {
    auto specs = parse_specs(f);
    auto rs = residues(f);
    auto counts = census_counts(f, specs, cfg, threads, rs);
    std::vector<CountRow> rows;
    for (size_t i = 0; i < rs.size(); ++i) rows.push_back({row_label(f, specs, rs[i]), counts[i]});
    auto h = header("census", f, specs);
    h.emplace_back("max_disc", f.max_disc);
    render_counts(out, cfg.format, h, rows);
    return kExitOk;
}

int cmd_predict(const Filters& f, const RunConfig& cfg, std::ostream& out) {
    double X = f.at >= 0 ? f.at : static_cast<double>(f.max_disc);
    if (X < 0) throw usage_error("--at is required");
    auto specs = parse_specs(f);
    std::vector<PredictionRow> rows;
    for (i64 a : residues(f)) rows.push_back({row_label(f, specs, a), prediction(f, specs, cfg, a), X});
    auto h = header("predict", f, specs);
    h.emplace_back("at", X);
    h.emplace_back("prime_cutoff", cfg.prime_cutoff);
    h.emplace_back("tail_correction", cfg.tail_correction);
    render_predictions(out, cfg.format, h, rows);
    return kExitOk;
}

int cmd_compare(const Filters& f, const RunConfig& cfg, unsigned threads, std::ostream& out) {
    auto specs = parse_specs(f);
    auto rs = residues(f);
    // predictions first: unsupported combinations fail before any enumeration
    std::vector<PredictionTerms> terms;
    for (i64 a : rs) terms.push_back(prediction(f, specs, cfg, a));
    auto counts = census_counts(f, specs, cfg, threads, rs);
    std::vector<ComparisonRow> rows;
    for (size_t i = 0; i < rs.size(); ++i)
        rows.push_back(ComparisonRow::make(row_label(f, specs, rs[i]), counts[i],
                                           terms[i].at(static_cast<double>(f.max_disc))));
    auto h = header("compare", f, specs);
    h.emplace_back("max_disc", f.max_disc);
    h.emplace_back("prime_cutoff", cfg.prime_cutoff);
    h.emplace_back("tail_correction", cfg.tail_correction);
    return render_comparison(out, cfg, h, rows) ? kExitOk : kExitComparison;
}

int report_verdicts(const std::vector<Verdict>& vs, OutputFormat fmt, std::ostream& out) {
    bool all = true;
    for (const auto& v : vs) all = all && v.pass;
    switch (fmt) {
        case OutputFormat::Table:
            for (const auto& v : vs) out << (v.pass ? "PASS " : "FAIL ") << v.check << '\n';
            break;
        case OutputFormat::Csv:
            out << "check,pass\n";
            for (const auto& v : vs) out << v.check << ',' << (v.pass ? "true" : "false") << '\n';
            break;
        case OutputFormat::Json: {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& v : vs) j.push_back(v.to_json());
            out << j.dump(2) << '\n';
            break;
        }
    }
    return all ? kExitOk : kExitComparison;
}

std::vector<Sign> signs_of(const std::string& s) {
    if (s.empty()) return {Sign::plus, Sign::minus};
    return {parse_sign(s)};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Census and secondary-term predictor for cubic fields and 3-torsion", "cubiccensus"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_file, "JSON run configuration");
    app.add_option("--cache-dir", g.cache_dir, "census cache directory");
    app.add_option("--format", g.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--prime-cutoff", g.prime_cutoff, "largest prime in truncated Euler products")
        ->check(CLI::Range(i64{2}, i64{100000000}));
    app.add_option("--sigmas", g.sigmas, "comparison bound in units of sqrt(predicted)")->check(CLI::PositiveNumber);
    app.add_option("--abs-tol", g.absolute, "absolute comparison bound (overrides --sigmas)")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--no-tail-correction", g.no_tail, "do not extrapolate Euler products past the cutoff");
    app.add_option("--threads", g.threads, "enumeration threads (0: all cores)");

    Filters f;
    auto* census = app.add_subcommand("census", "count fields or 3-torsion from the enumeration");
    add_filters(census, f, true);
    census->get_option("kind")->required();
    census->add_option("--max-disc", f.max_disc, "bound X on |Disc|")->required()->check(CLI::NonNegativeNumber);

    auto* predict = app.add_subcommand("predict", "main and secondary terms A X + B X^(5/6)");
    add_filters(predict, f, true);
    predict->add_option("--at", f.at, "evaluate at X")->check(CLI::NonNegativeNumber);
    predict->add_option("--max-disc", f.max_disc, "same as --at")->check(CLI::NonNegativeNumber);

    auto* compare = app.add_subcommand("compare", "census against prediction, row by row");
    add_filters(compare, f, true);
    compare->add_option("--max-disc", f.max_disc, "bound X on |Disc|")->required()->check(CLI::NonNegativeNumber);

    auto* verify = app.add_subcommand("verify", "brute-force oracle checks");
    verify->require_subcommand(1);
    i64 vp = 5, vx = 0, pp = 7;
    int points = 10;
    std::string vsign;
    auto* phi = verify->add_subcommand("phi-hat", "Gauss sums against the tabulated values");
    phi->add_option("--p", vp, "5 or 7")->check(CLI::IsMember({5, 7}));
    auto* mult = verify->add_subcommand("multiplicativity", "Gauss sum of p p' against the product");
    mult->add_option("--points", points, "number of dual points")->check(CLI::PositiveNumber);
    auto* sieve = verify->add_subcommand("sieve", "field count from the nonmaximal-class sieve");
    auto* weights = verify->add_subcommand("weights", "weighted SL2 class count");
    for (auto* c : {sieve, weights}) {
        c->add_option("--max-disc", vx, "bound X <= 10^4")->required()->check(CLI::Range(i64{0}, kOracleMaxDisc));
        c->add_option("--sign", vsign, "plus or minus (default both)")->check(CLI::IsMember({"plus", "minus"}));
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        RunConfig cfg = make_config(g);
        if (*census) return cmd_census(f, cfg, g.threads, out);
        if (*predict) return cmd_predict(f, cfg, out);
        if (*compare) return cmd_compare(f, cfg, g.threads, out);
        std::vector<Verdict> vs;
        if (*phi) vs.push_back(verify_phi_hat(vp));
        if (*mult) vs.push_back(verify_multiplicativity(5, pp, points));
        if (*sieve)
            for (Sign s : signs_of(vsign)) vs.push_back(sieve_identity_check(vx, s));
        if (*weights)
            for (Sign s : signs_of(vsign)) vs.push_back(shintani_weight_check(vx, s));
        return report_verdicts(vs, cfg.format, out);
    } catch (const not_implemented_error& e) {
        err << "unsupported: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace cubic
