#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "minlen/errors.hpp"
#include "minlen/fm.hpp"
#include "minlen/spectrum.hpp"
#include "minlen/verify.hpp"

namespace minlen::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<long long, double, std::string>;

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& cell) {
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    return std::get<std::string>(cell);
}

std::string render_csv(const Table& table) {
    std::ostringstream os;
    for (const auto& [key, value] : table.meta) os << "# " << key << "=" << value << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
        os << "\n";
    }
    return os.str();
}

std::string render_json(const Table& table) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["meta"] = json::array();
    for (const auto& [key, value] : table.meta) doc["meta"].push_back({{"key", key}, {"value", value}});
    doc["rows"] = json::array();
    for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit([&](const auto& v) { obj[table.columns[i]] = v; }, row[i]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

// Raw command-line values; unset means "take the config file or the default".
struct Flags {
    std::optional<std::string> config;
    std::optional<double> mass, omega, hbar, eta, gamma;
    std::optional<int> nmax;
    std::optional<std::string> branch, format, out;
    std::optional<double> xi_min, xi_max;
    std::optional<int> steps;
    std::optional<std::string> n_list;
    std::optional<int> n, samples;
    std::optional<std::string> raising_form;
    std::optional<double> k1, k2, k3, A, B, C, s;
};

double parse_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw UsageError("invalid number for " + key + ": '" + text + "'");
    return value;
}

int parse_int(const std::string& key, const std::string& text) {
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw UsageError("invalid integer for " + key + ": '" + text + "'");
    return value;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

// Flat key=value file. Values fill only what the command line left unset.
void merge_config_file(const std::string& path, Flags& f) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    auto fill_d = [](std::optional<double>& slot, const std::string& k, const std::string& v) {
        if (!slot) slot = parse_double(k, v);
    };
    auto fill_i = [](std::optional<int>& slot, const std::string& k, const std::string& v) {
        if (!slot) slot = parse_int(k, v);
    };
    auto fill_s = [](std::optional<std::string>& slot, const std::string& v) {
        if (!slot) slot = v;
    };
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        const std::string k = trim(line.substr(0, eq));
        const std::string v = trim(line.substr(eq + 1));
        const std::map<std::string, std::optional<double>*> doubles{
            {"mass", &f.mass}, {"omega", &f.omega}, {"hbar", &f.hbar}, {"eta", &f.eta}, {"gamma", &f.gamma},
            {"xi-min", &f.xi_min}, {"xi-max", &f.xi_max}, {"k1", &f.k1}, {"k2", &f.k2}, {"k3", &f.k3},
            {"A", &f.A}, {"B", &f.B}, {"C", &f.C}, {"s", &f.s}};
        const std::map<std::string, std::optional<int>*> ints{
            {"nmax", &f.nmax}, {"steps", &f.steps}, {"n", &f.n}, {"samples", &f.samples}};
        const std::map<std::string, std::optional<std::string>*> strings{
            {"branch", &f.branch}, {"format", &f.format}, {"out", &f.out}, {"n-list", &f.n_list},
            {"raising-form", &f.raising_form}};
        if (auto it = doubles.find(k); it != doubles.end()) {
            fill_d(*it->second, k, v);
        } else if (auto jt = ints.find(k); jt != ints.end()) {
            fill_i(*jt->second, k, v);
        } else if (auto st = strings.find(k); st != strings.end()) {
            fill_s(*st->second, v);
        } else {
            throw UsageError(path + ":" + std::to_string(line_no) + ": unknown key '" + k + "'");
        }
    }
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const int n = parse_int("n-list", trim(item));
        if (n < 0) throw UsageError("n-list entries must be nonnegative");
        values.push_back(n);
    }
    if (values.empty()) throw UsageError("n-list is empty");
    return values;
}

int quadrature_order_from_env() {
    const char* raw = std::getenv("GUP_QUAD_ORDER");
    if (raw == nullptr || *raw == '\0') return specfun::kDefaultQuadratureOrder;
    const int order = parse_int("GUP_QUAD_ORDER", raw);
    if (order < 1) throw UsageError("GUP_QUAD_ORDER must be >= 1");
    return order;
}

RunConfig build_config(const Flags& f, const RunConfig& defaults) {
    RunConfig cfg = defaults;
    if (f.mass) cfg.mass = *f.mass;
    if (f.omega) cfg.omega = *f.omega;
    if (f.hbar) cfg.hbar = *f.hbar;
    if (f.eta) cfg.eta = *f.eta;
    if (f.gamma) cfg.gamma = *f.gamma;
    if (f.nmax) cfg.n_max = *f.nmax;
    if (f.branch) {
        if (*f.branch == "rel") {
            cfg.branch = Branch::relativistic;
        } else if (*f.branch == "nr") {
            cfg.branch = Branch::nonrelativistic;
        } else {
            throw UsageError("branch must be rel or nr");
        }
    }
    if (f.format) {
        if (*f.format == "csv") {
            cfg.format = OutputFormat::csv;
        } else if (*f.format == "json") {
            cfg.format = OutputFormat::json;
        } else {
            throw UsageError("format must be csv or json");
        }
    }
    if (f.out) cfg.out_path = *f.out;
    if (f.raising_form) {
        if (*f.raising_form == "rho") {
            cfg.raising_form = RaisingForm::with_rho;
        } else if (*f.raising_form == "literal") {
            cfg.raising_form = RaisingForm::literal;
        } else {
            throw UsageError("raising-form must be rho or literal");
        }
    }
    cfg.quad_order = quadrature_order_from_env();
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(cfg.mass) || !positive(cfg.omega) || !positive(cfg.hbar)) {
        throw UsageError("mass, omega and hbar must be positive");
    }
    if (!std::isfinite(cfg.eta) || cfg.eta < 0.0) throw UsageError("eta must be >= 0");
    if (!std::isfinite(cfg.gamma)) throw UsageError("gamma must be finite");
    if (cfg.n_max < 0) throw UsageError("nmax must be >= 0");
    return cfg;
}

std::vector<std::pair<std::string, std::string>> physics_meta(const std::string& command, const RunConfig& cfg) {
    return {{"command", command},
            {"branch", std::string(to_string(cfg.branch))},
            {"mass", format_double(cfg.mass)},
            {"omega", format_double(cfg.omega)},
            {"hbar", format_double(cfg.hbar)},
            {"eta", format_double(cfg.eta)},
            {"gamma", format_double(cfg.gamma)}};
}

Table cmd_spectrum(const RunConfig& cfg) {
    const auto sys = cfg.system();
    Table t{physics_meta("spectrum", cfg), {"n", "energy", "residual", "iterations", "method"}, {}};
    if (cfg.branch == Branch::relativistic) t.meta.emplace_back("energy", "E_R including rest mass");
    for (int n = 0; n <= cfg.n_max; ++n) {
        const auto r = cfg.branch == Branch::relativistic ? energy_relativistic(sys, n) : energy_nonrel(sys, n);
        t.rows.push_back({static_cast<long long>(r.n), r.energy, r.residual, static_cast<long long>(r.iterations),
                          std::string(to_string(r.method))});
    }
    return t;
}

Table cmd_figure1(const RunConfig& cfg, double xi_min, double xi_max, int steps, const std::vector<int>& n_list) {
    if (!(xi_min >= 0.0) || !(xi_max > xi_min)) throw UsageError("need 0 <= xi-min < xi-max");
    if (steps < 2) throw UsageError("steps must be >= 2");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        grid[static_cast<std::size_t>(i)] =
            i == steps - 1 ? xi_max : xi_min + (xi_max - xi_min) * static_cast<double>(i) / (steps - 1);
    }
    const auto rows = ratio_sweep({cfg.mass, cfg.omega, cfg.hbar, cfg.gamma}, n_list, grid);
    Table t;
    t.meta = {{"command", "figure1"},
              {"units", "a0=1 natural units, eta=(xi*a0/hbar)^2"},
              {"branch", "nr"},
              {"mass", format_double(cfg.mass)},
              {"omega", format_double(cfg.omega)},
              {"hbar", format_double(cfg.hbar)},
              {"gamma", format_double(cfg.gamma)}};
    t.columns = {"xi", "n", "E_n", "E_0", "ratio"};
    for (const auto& r : rows) t.rows.push_back({r.xi, static_cast<long long>(r.n), r.e_n, r.e_0, r.ratio});
    return t;
}

Table cmd_state(const RunConfig& cfg, int n, int samples) {
    if (n < 0) throw UsageError("n must be >= 0");
    if (samples < 2) throw UsageError("samples must be >= 2");
    const auto sys = cfg.system();
    const auto state = make_state(sys, n, cfg.branch, cfg.quad_order);
    Table t{physics_meta("state", cfg), {"p", "rho", "phi"}, {}};
    t.meta.emplace_back("n", std::to_string(n));
    t.meta.emplace_back("v", format_double(state.v()));
    t.meta.emplace_back("lambda", format_double(state.lambda()));
    t.meta.emplace_back("norm", format_double(state.norm()));
    t.meta.emplace_back("quad_order", std::to_string(cfg.quad_order));
    for (int i = 0; i < samples; ++i) {
        // symmetric by construction, so parity can be checked row against row
        const double rho = 0.99 * (2.0 * i - (samples - 1)) / (samples - 1);
        t.rows.push_back({p_of_rho(sys.algebra(), rho), rho, state(rho)});
    }
    return t;
}

Table cmd_verify(const RunConfig& cfg, bool& passed) {
    const auto results = run_verification({cfg.system(), cfg.n_max, cfg.quad_order, cfg.raising_form});
    passed = all_passed(results);
    Table t{physics_meta("verify", cfg), {"check", "status", "deviation", "threshold", "note"}, {}};
    t.meta.emplace_back("nmax", std::to_string(cfg.n_max));
    t.meta.emplace_back("quad_order", std::to_string(cfg.quad_order));
    t.meta.emplace_back("raising_form", cfg.raising_form == RaisingForm::with_rho ? "rho" : "literal");
    for (const auto& r : results) {
        t.rows.push_back({r.name, std::string(to_string(r.status)), r.deviation, r.threshold, r.note});
    }
    return t;
}

Table cmd_fm(const Flags& f) {
    if (!f.k1 || !f.k2 || !f.A || !f.B || !f.C) throw UsageError("fm needs --k1 --k2 --A --B --C (k3 defaults to 1)");
    if (f.k3 && *f.k3 == 0.0) throw UsageError("k3 must be nonzero");
    const fm::FmProblem problem(*f.k1, *f.k2, f.k3.value_or(1.0), *f.A, *f.B, *f.C);
    const int n = f.n.value_or(0);
    if (n < 0) throw UsageError("n must be >= 0");
    const auto sol = fm::fm_solve(problem, n);
    Table t;
    t.meta = {{"command", "fm"},
              {"k1", format_double(problem.k1)},
              {"k2", format_double(problem.k2)},
              {"k3", format_double(problem.k3)},
              {"A", format_double(problem.A)},
              {"B", format_double(problem.B)},
              {"C", format_double(problem.C)}};
    t.columns = {"n", "k4", "k5", "target", "residual", "quartic"};
    // the quartic predicate is undefined when the target vanishes; report nan rather than fail the row
    double quartic = std::numeric_limits<double>::quiet_NaN();
    try {
        quartic = fm::fm_quartic_condition(problem, n);
    } catch (const DomainError&) {
    }
    std::vector<Cell> row{static_cast<long long>(n), sol.k4, sol.k5, fm::fm_quantization_target(problem, n),
                          sol.residual, quartic};
    if (f.s) {
        t.columns.emplace_back("psi");
        row.emplace_back(fm::fm_wavefunction(problem, n, *f.s));
    }
    t.rows.push_back(std::move(row));
    return t;
}

void add_physics_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "Flat key=value file; flags override it");
    sub->add_option("--mass", f.mass, "Mass m (relativistic) or reduced mass mu (nr)");
    sub->add_option("--omega", f.omega, "Angular frequency");
    sub->add_option("--hbar", f.hbar, "Reduced Planck constant");
    sub->add_option("--eta", f.eta, "Deformation parameter (>= 0)");
    sub->add_option("--gamma", f.gamma, "Representation parameter");
    sub->add_option("--nmax", f.nmax, "Highest quantum number");
    sub->add_option("--branch", f.branch, "rel or nr")->check(CLI::IsMember({"rel", "nr"}));
    sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", f.out, "Output file (default: standard output)");
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Harmonic oscillator with a minimal-length deformed commutator", "minlen"};
    app.require_subcommand(1);
    Flags f;
    auto* spectrum = app.add_subcommand("spectrum", "Energy levels for n = 0..nmax");
    auto* figure1 = app.add_subcommand("figure1", "E_n/E_0 versus minimal length in Bohr radii (NR)");
    auto* state = app.add_subcommand("state", "Sample a momentum-space eigenstate");
    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    auto* fm_cmd = app.add_subcommand("fm", "Evaluate a raw standard-form problem");
    for (auto* sub : {spectrum, figure1, state, verify}) add_physics_flags(sub, f);
    figure1->add_option("--xi-min", f.xi_min, "Smallest xi (default 0)");
    figure1->add_option("--xi-max", f.xi_max, "Largest xi (default 50)");
    figure1->add_option("--steps", f.steps, "Number of xi points (default 101)");
    figure1->add_option("--n-list", f.n_list, "Comma-separated levels (default 1,2,3)");
    state->add_option("--n", f.n, "Quantum number (default 0)");
    state->add_option("--samples", f.samples, "Number of rho samples (default 199)");
    verify->add_option("--raising-form", f.raising_form, "rho or literal")->check(CLI::IsMember({"rho", "literal"}));
    fm_cmd->add_option("--config", f.config, "Flat key=value file; flags override it");
    fm_cmd->add_option("--k1", f.k1);
    fm_cmd->add_option("--k2", f.k2);
    fm_cmd->add_option("--k3", f.k3, "Nonzero (default 1)");
    fm_cmd->add_option("--A", f.A);
    fm_cmd->add_option("--B", f.B);
    fm_cmd->add_option("--C", f.C);
    fm_cmd->add_option("--n", f.n, "Level (default 0)");
    fm_cmd->add_option("--s", f.s, "Also evaluate the wavefunction at s");
    fm_cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    fm_cmd->add_option("--out", f.out, "Output file (default: standard output)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    Table table;
    bool verified = true;
    RunConfig cfg;
    try {
        if (f.config) merge_config_file(*f.config, f);
        RunConfig defaults;
        if (figure1->parsed()) {
            defaults.omega = std::numbers::pi;
            defaults.branch = Branch::nonrelativistic;
        }
        cfg = build_config(f, defaults);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (spectrum->parsed()) {
            table = cmd_spectrum(cfg);
        } else if (figure1->parsed()) {
            const auto n_list = f.n_list ? parse_n_list(*f.n_list) : std::vector<int>{1, 2, 3};
            table = cmd_figure1(cfg, f.xi_min.value_or(0.0), f.xi_max.value_or(50.0), f.steps.value_or(101), n_list);
        } else if (state->parsed()) {
            table = cmd_state(cfg, f.n.value_or(0), f.samples.value_or(199));
        } else if (verify->parsed()) {
            table = cmd_verify(cfg, verified);
        } else {
            table = cmd_fm(f);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }

    const std::string text = cfg.format == OutputFormat::json ? render_json(table) : render_csv(table);
    if (cfg.out_path) {
        std::ofstream file(*cfg.out_path, std::ios::binary);
        if (!file || !(file << text)) {
            err << "error: cannot write " << *cfg.out_path << "\n";
            return kExitNumerical;
        }
    } else {
        out << text;
    }
    if (!verified) {
        err << "verification failed:";
        for (const auto& row : table.rows) {
            if (std::get<std::string>(row[1]) == "fail") err << " " << std::get<std::string>(row[0]);
        }
        err << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

}  // namespace minlen::cli
