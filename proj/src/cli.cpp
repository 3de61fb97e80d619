#include "qcorr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcorr/report.hpp"
#include "qcorr/state_io.hpp"

namespace qcorr {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

struct StateOptions {
    std::string family;
    std::string file;
    double w = 0.0;
    double lambda = 0.0;
    double theta = 0.0;
    std::string which = "phi+";
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    int rank = 4;
};

struct CommonOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    int digits = 9;
    std::optional<double> herm_tol;
    std::optional<double> psd_tol;
    std::optional<double> eq_tol;
};

void add_state_options(CLI::App* cmd, StateOptions& s) {
    cmd->add_option("--family", s.family, "werner|gisin|bell|weyl|mixed|random");
    cmd->add_option("--file", s.file, "JSON state file");
    cmd->add_option("--w", s.w, "Werner weight");
    cmd->add_option("--lambda", s.lambda, "Gisin lambda");
    cmd->add_option("--theta", s.theta, "Gisin theta");
    cmd->add_option("--which", s.which, "Bell state: phi+|phi-|psi+|psi-");
    cmd->add_option("--t1", s.t1, "Weyl t1");
    cmd->add_option("--t2", s.t2, "Weyl t2");
    cmd->add_option("--t3", s.t3, "Weyl t3");
    cmd->add_option("--rank", s.rank, "rank of a random state");
}

void add_common_options(CLI::App* cmd, CommonOptions& c) {
    cmd->add_option("--config", c.config, "key=value file with herm_tol, psd_tol, eq_tol");
    cmd->add_option("--seed", c.seed, "RNG seed (default: QCORR_SEED or built-in)");
    cmd->add_option("--digits", c.digits, "significant digits")->check(CLI::Range(1, 17));
    cmd->add_option("--herm-tol", c.herm_tol, "Hermiticity tolerance");
    cmd->add_option("--psd-tol", c.psd_tol, "PSD tolerance");
    cmd->add_option("--eq-tol", c.eq_tol, "equality tolerance");
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, what + ": '" + text + "' is not a number");
    }
}

Tolerances resolve_tolerances(const CommonOptions& c) {
    Tolerances t;
    if (!c.config.empty()) {
        std::ifstream in(c.config);
        if (!in) throw Error(ErrorKind::IoError, "cannot open " + c.config);
        std::string line;
        int n = 0;
        while (std::getline(in, line)) {
            ++n;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            line = trim(line);
            if (line.empty() || line.front() == '[') continue;
            const auto eq = line.find('=');
            const std::string where = c.config + ":" + std::to_string(n);
            if (eq == std::string::npos) throw Error(ErrorKind::ParseError, where + ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const double v = parse_double(trim(line.substr(eq + 1)), where);
            if (key == "herm_tol" || key == "herm") t.herm = v;
            else if (key == "psd_tol" || key == "psd") t.psd = v;
            else if (key == "eq_tol" || key == "eq") t.eq = v;
            else throw Error(ErrorKind::ParseError, where + ": unknown key '" + key + "'");
        }
    }
    if (c.herm_tol) t.herm = *c.herm_tol;
    if (c.psd_tol) t.psd = *c.psd_tol;
    if (c.eq_tol) t.eq = *c.eq_tol;
    return t;
}

std::uint64_t resolve_seed(const CommonOptions& c) {
    if (c.seed) return *c.seed;
    if (const char* env = std::getenv("QCORR_SEED"); env != nullptr && *env != '\0') {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::strlen(env)) return v;
        } catch (const std::exception&) {
        }
        throw Error(ErrorKind::ParseError, std::string("QCORR_SEED='") + env + "' is not an unsigned integer");
    }
    return kDefaultSeed;
}

BellState parse_bell(const std::string& s) {
    if (s == "phi+") return BellState::PhiPlus;
    if (s == "phi-") return BellState::PhiMinus;
    if (s == "psi+") return BellState::PsiPlus;
    if (s == "psi-") return BellState::PsiMinus;
    throw Error(ErrorKind::OutOfRange, "unknown Bell state '" + s + "'");
}

std::string num(double v, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

std::pair<DensityMatrix, std::string> build_state(const StateOptions& s, const Tolerances& tol,
                                                  std::uint64_t seed, int digits) {
    const bool has_file = !s.file.empty();
    const bool has_family = !s.family.empty();
    if (has_file == has_family)
        throw Error(ErrorKind::ParseError, "give exactly one of --family or --file");
    if (has_file) return {load_state_file(s.file, tol), "file:" + s.file};
    if (s.family == "werner") return {werner(s.w), "werner(w=" + num(s.w, digits) + ")"};
    if (s.family == "gisin")
        return {gisin(s.lambda, s.theta),
                "gisin(lambda=" + num(s.lambda, digits) + ", theta=" + num(s.theta, digits) + ")"};
    if (s.family == "bell") return {bell(parse_bell(s.which)), "bell(" + s.which + ")"};
    if (s.family == "weyl")
        return {weyl(s.t1, s.t2, s.t3), "weyl(" + num(s.t1, digits) + ", " + num(s.t2, digits) + ", " +
                                            num(s.t3, digits) + ")"};
    if (s.family == "mixed") return {DensityMatrix(), "mixed"};
    if (s.family == "random") {
        Rng rng(seed);
        return {random_density({2, 2}, s.rank, rng), "random(rank=" + std::to_string(s.rank) + ")"};
    }
    throw Error(ErrorKind::OutOfRange, "unknown family '" + s.family + "'");
}

// ---------------------------------------------------------------- sweep

struct GridAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    double at(int i) const { return count == 1 ? start : start + (stop - start) * i / (count - 1); }
};

GridAxis parse_grid(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "grid '" + text + "': expected name=start:stop:count");
    GridAxis g;
    g.name = trim(text.substr(0, eq));
    std::vector<std::string> parts;
    std::stringstream ss(text.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(trim(item));
    if (parts.size() != 3) throw Error(ErrorKind::ParseError, "grid '" + text + "': expected name=start:stop:count");
    g.start = parse_double(parts[0], "grid start");
    g.stop = parse_double(parts[1], "grid stop");
    const double c = parse_double(parts[2], "grid count");
    if (c < 1 || c != std::floor(c) || c > 1e6) throw Error(ErrorKind::ParseError, "grid count must be a positive integer");
    g.count = static_cast<int>(c);
    return g;
}

struct Column {
    std::string label;
    std::string property;
    bool negate = false;
};

Column parse_column(const std::string& raw) {
    static const std::map<std::string, std::pair<std::string, bool>> aliases = {
        {"nonlocal", {"local", true}},
        {"entangled", {"separable", true}},
        {"steerable", {"unsteerable3", true}},
        {"steerable3", {"unsteerable3", true}},
        {"nce", {"nnce", true}},
        {"ppt", {"separable", false}},
        {"unsteerable", {"unsteerable3", false}},
        {"discordant", {"zero_discord", true}},
        {"abs_unsteerable", {"abs_unsteerable3", false}},
    };
    const std::string name = trim(raw);
    Column c{name, name, false};
    if (const auto it = aliases.find(name); it != aliases.end()) {
        c.property = it->second.first;
        c.negate = it->second.second;
    }
    const auto& known = property_names();
    if (std::find(known.begin(), known.end(), c.property) == known.end())
        throw Error(ErrorKind::ParseError, "unknown property '" + name + "'");
    return c;
}

DensityMatrix family_point(Family f, const std::map<std::string, double>& params) {
    auto get = [&](const char* k) {
        const auto it = params.find(k);
        if (it == params.end()) throw Error(ErrorKind::ParseError, std::string("missing parameter ") + k);
        return it->second;
    };
    if (f == Family::Werner) return werner(get("w"));
    return gisin(get("lambda"), get("theta"));
}

std::string csv_number(double v, int digits) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return num(round_sig(v, digits), digits);
}

// --------------------------------------------------------------- tables

struct TableRow {
    FamilySlice slice;
    double lo;
    double hi;
    const char* property;
    const char* label;
};

std::vector<TableRow> table_rows() {
    const double q = std::numbers::pi / 4.0;
    return {
        {{Family::Werner, "w", 0.0}, 0.0, 1.0, "separable", "separable"},
        {{Family::Werner, "w", 0.0}, 0.0, 1.0, "unsteerable3", "unsteerable3"},
        {{Family::Werner, "w", 0.0}, 0.0, 1.0, "local", "local"},
        {{Family::Werner, "w", 0.0}, 0.0, 1.0, "nnce", "non-negative conditional entropy"},
        {{Family::Werner, "w", 0.0}, 0.0, 1.0, "abs_separable", "absolutely separable"},
        {{Family::Werner, "w", 0.0}, 0.0, 1.0, "abs_unsteerable3", "absolutely unsteerable3"},
        {{Family::Werner, "w", 0.0}, 0.0, 1.0, "abs_local", "absolutely local"},
        {{Family::Werner, "w", 0.0}, 0.0, 1.0, "abs_nnce", "absolutely non-negative cond. entropy"},
        {{Family::Gisin, "lambda", q}, 0.0, 1.0, "separable", "separable (theta=pi/4)"},
        {{Family::Gisin, "lambda", q}, 0.0, 1.0, "local", "local (theta=pi/4)"},
        {{Family::Gisin, "lambda", q}, 0.0, 1.0, "nnce", "non-negative cond. entropy (theta=pi/4)"},
        {{Family::Gisin, "lambda", q}, 0.0, 1.0, "abs_unsteerable3", "absolutely unsteerable3"},
        {{Family::Gisin, "lambda", q}, 0.0, 1.0, "abs_local", "absolutely local"},
        {{Family::Gisin, "lambda", q}, 0.0, 1.0, "abs_nnce", "absolutely non-negative cond. entropy"},
    };
}

int cmd_tables(std::ostream& out, int digits, const std::string& format) {
    std::vector<ThresholdResult> results;
    for (const TableRow& row : table_rows()) results.push_back(bisect_threshold(row.slice, row.lo, row.hi, row.property, 1e-9));
    if (format == "json") {
        out << "[\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
            out << to_json(results[i], digits) << (i + 1 < results.size() ? ",\n" : "\n");
        }
        out << "]\n";
        return kExitOk;
    }
    const auto rows = table_rows();
    char line[200];
    std::string family;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const ThresholdResult& t = results[i];
        const std::string fam(to_string(t.family));
        if (fam != family) {
            family = fam;
            out << (i == 0 ? "" : "\n") << family << " (" << t.parameter << ")\n";
        }
        std::snprintf(line, sizeof line, "  %-42s %s %s %.*g  (bracket %.2g)\n", rows[i].label,
                      t.holds_below ? "holds for" : "fails for", t.holds_below ? "<=" : ">=", digits, t.boundary,
                      t.bracket);
        out << line;
    }
    out << "\ngisin, spectrum criteria that never hold\n";
    for (const char* p : {"abs_separable", "abs_zero_discord", "abs_product"}) {
        bool ever = false;
        for (int i = 0; i <= 100 && !ever; ++i) ever = named_margin(gisin(i / 100.0, 0.3), p) >= 0.0;
        std::snprintf(line, sizeof line, "  %-42s %s\n", p, ever ? "holds somewhere" : "never (lambda grid)");
        out << line;
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Correlation properties of bipartite quantum states", "qcorr"};
    app.require_subcommand(1);

    StateOptions state;
    CommonOptions common;
    std::string format = "json";

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Classify one state");
    add_state_options(analyze_cmd, state);
    add_common_options(analyze_cmd, common);
    analyze_cmd->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));

    std::string sweep_family;
    std::vector<std::string> grids;
    std::vector<std::string> sets;
    std::optional<std::string> properties;
    std::string output;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Property margins over a parameter grid (CSV)");
    sweep_cmd->add_option("--family", sweep_family, "werner|gisin")->required();
    sweep_cmd->add_option("--grid", grids, "name=start:stop:count (repeatable)");
    sweep_cmd->add_option("--set", sets, "name=value for fixed parameters (repeatable)");
    sweep_cmd->add_option("--properties", properties, "comma-separated property list");
    sweep_cmd->add_option("--output", output, "CSV path (default stdout)");
    add_common_options(sweep_cmd, common);

    std::string tables_format = "text";
    CLI::App* tables_cmd = app.add_subcommand("tables", "Werner and Gisin threshold tables");
    tables_cmd->add_option("--format", tables_format, "text|json")->check(CLI::IsMember({"json", "text"}));
    add_common_options(tables_cmd, common);

    std::string search_property;
    std::size_t budget = 10000;
    CLI::App* search_cmd = app.add_subcommand("search", "Look for a unitary that breaks a property");
    add_state_options(search_cmd, state);
    add_common_options(search_cmd, common);
    search_cmd->add_option("--property", search_property, "separable|local|unsteerable3|nnce|zero_discord|product")
        ->required();
    search_cmd->add_option("--budget", budget, "number of conjugations");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        const Tolerances tol = resolve_tolerances(common);
        const std::uint64_t seed = resolve_seed(common);
        const int digits = common.digits;

        if (analyze_cmd->parsed()) {
            const auto [rho, desc] = build_state(state, tol, seed, digits);
            const PropertyReport r = analyze(rho, desc, seed, tol);
            out << (format == "json" ? to_json(r, digits) + "\n" : to_text(r, digits));
            return kExitOk;
        }

        if (sweep_cmd->parsed()) {
            const Family fam = parse_family(sweep_family);
            std::vector<GridAxis> axes;
            for (const auto& g : grids) axes.push_back(parse_grid(g));
            std::map<std::string, double> fixed;
            for (const auto& s : sets) {
                const auto eq = s.find('=');
                if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "--set '" + s + "': expected name=value");
                fixed[trim(s.substr(0, eq))] = parse_double(trim(s.substr(eq + 1)), "--set " + s);
            }
            const std::vector<std::string> allowed =
                fam == Family::Werner ? std::vector<std::string>{"w"} : std::vector<std::string>{"lambda", "theta"};
            for (const auto& a : axes)
                if (std::find(allowed.begin(), allowed.end(), a.name) == allowed.end())
                    throw Error(ErrorKind::ParseError, "unknown grid parameter '" + a.name + "'");
            std::vector<Column> cols;
            if (!properties) {
                for (const auto& p : property_names()) cols.push_back({p, p, false});
            } else {
                std::stringstream ss(*properties);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!trim(item).empty()) cols.push_back(parse_column(item));
            }

            std::ostringstream csv;
            for (std::size_t i = 0; i < axes.size(); ++i) csv << (i ? "," : "") << axes[i].name;
            for (std::size_t i = 0; i < cols.size(); ++i) csv << (axes.empty() && i == 0 ? "" : ",") << cols[i].label;
            csv << "\n";
            if (!cols.empty() && !axes.empty()) {
                std::vector<int> idx(axes.size(), 0);
                while (true) {
                    std::map<std::string, double> params = fixed;
                    for (std::size_t i = 0; i < axes.size(); ++i) params[axes[i].name] = axes[i].at(idx[i]);
                    const DensityMatrix rho = family_point(fam, params);
                    for (std::size_t i = 0; i < axes.size(); ++i)
                        csv << (i ? "," : "") << csv_number(axes[i].at(idx[i]), digits);
                    for (const Column& c : cols) {
                        const double m = named_margin(rho, c.property);
                        csv << "," << csv_number(c.negate ? -m : m, digits);
                    }
                    csv << "\n";
                    std::size_t k = axes.size();
                    while (k > 0) {
                        --k;
                        if (++idx[k] < axes[k].count) break;
                        idx[k] = 0;
                        if (k == 0) {
                            k = axes.size() + 1;
                            break;
                        }
                    }
                    if (k == axes.size() + 1) break;
                }
            }
            if (output.empty()) {
                out << csv.str();
            } else {
                std::ofstream f(output, std::ios::binary);
                if (!f) throw Error(ErrorKind::IoError, "cannot write " + output);
                f << csv.str();
                if (!f) throw Error(ErrorKind::IoError, "write failed for " + output);
            }
            return kExitOk;
        }

        if (tables_cmd->parsed()) return cmd_tables(out, digits, tables_format);

        if (search_cmd->parsed()) {
            const auto [rho, desc] = build_state(state, tol, seed, digits);
            const AbsProperty prop = parse_abs_property(search_property);
            const SearchResult r = search_counterexample(rho, prop, budget, seed);
            if (!r.counterexample) {
                out << "none found: " << to_string(prop) << " held for " << r.evaluated
                    << " conjugations of " << desc << " (best margin " << num(r.best_margin, digits) << ")\n";
                return kExitBudget;
            }
            const DensityMatrix post = conjugate(rho, *r.counterexample);
            nlohmann::ordered_json j;
            j["schema_version"] = 1;
            j["state"] = desc;
            j["property"] = std::string(to_string(prop));
            j["seed"] = seed;
            j["evaluated"] = r.evaluated;
            j["margin_after"] = round_sig(r.counterexample_margin, digits);
            j["margin_before"] = round_sig(property_margin(rho, prop), digits);
            nlohmann::ordered_json u = nlohmann::ordered_json::array();
            const ComplexMatrix& m = r.counterexample->matrix();
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (Eigen::Index k = 0; k < m.cols(); ++k)
                    row.push_back({round_sig(m(i, k).real(), digits), round_sig(m(i, k).imag(), digits)});
                u.push_back(row);
            }
            j["unitary"] = u;
            j["post_state"] = nlohmann::ordered_json::parse(state_to_json(post.matrix(), post.dims()));
            out << j.dump(2) << "\n";
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "qcorr: " << e.what() << "\n";
        if (e.kind() == ErrorKind::BudgetExhausted) return kExitBudget;
        return is_invalid_input(e.kind()) || e.kind() == ErrorKind::IoError ? kExitInvalid : kExitInternal;
    } catch (const std::exception& e) {
        err << "qcorr: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace qcorr
