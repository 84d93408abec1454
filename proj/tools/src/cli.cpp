#include "sigmak/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "sigmak/errors.hpp"
#include "sigmak/io.hpp"

namespace sigmak::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw UsageError("unknown config key '" + where + key + "'");
    }
}

template <class T>
T get_as(const json& obj, const char* key, const std::string& where) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError("config key '" + where + key + "' has the wrong type");
    }
}

// Reads `key` from `nested` or its flat alias in `root`; both at once is an error.
template <class T>
void read_either(const json& root, const json* nested, const char* key, const char* section, T& out) {
    const bool flat = root.contains(key);
    const bool deep = nested && nested->contains(key);
    if (flat && deep) {
        throw UsageError("config key '" + std::string(key) + "' given both at top level and in '" + section + "'");
    }
    if (flat) out = get_as<T>(root, key, "");
    if (deep) out = get_as<T>(*nested, key, std::string(section) + ".");
}

const json* section(const json& root, const char* name, std::initializer_list<const char*> allowed) {
    if (!root.contains(name)) return nullptr;
    const json& s = root.at(name);
    if (!s.is_object()) throw UsageError("config key '" + std::string(name) + "' must be an object");
    reject_unknown(s, allowed, std::string(name) + ".");
    return &s;
}

fs::path output_dir_for(const fs::path& configured) {
    if (const char* env = std::getenv("SIGMAK_OUTPUT_DIR"); env && *env) return env;
    return configured;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot write '" + path.string() + "'");
    return os;
}

SigmaProblem build_problem(const RunConfig& c) {
    return SigmaProblem(c.k, c.beta, WarpedBackground(c.n, c.family, c.amplitude), make_grid(c.T, c.N));
}

std::vector<double> parse_gammas(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("--gamma: '" + item + "' is not a number");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v)) {
            throw UsageError("--gamma: '" + item + "' is not a number");
        }
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("--gamma: at least one value is required");
    return out;
}

int cmd_identities(int nmax, std::ostream& out) {
    if (nmax < 2 || nmax > 12) throw UsageError("--nmax must lie in [2, 12]");
    const fs::path dir = output_dir_for(".");
    ensure_dir(dir);
    auto os = open_output(dir / "identities.csv");
    os << "n,k,beta0,c_alternating,c_printed,gamma_minus,gamma_plus,c_differs\n";
    int flagged = 0;
    int rows = 0;
    for (int n = 2; n <= nmax; ++n) {
        for (int k = 1; k <= n + 1; ++k) {
            const double b0 = beta0(n, k);
            const double c = c_kn(n, k);
            const double printed = c_kn_printed(n, k);
            const auto roots = indicial_roots(n, k, b0);
            const bool differs = c != printed;
            flagged += differs;
            ++rows;
            os << n << ',' << k << ',' << format_number(b0) << ',' << format_number(c) << ','
               << format_number(printed) << ',' << format_number(roots.gamma_minus) << ','
               << format_number(roots.gamma_plus) << ',' << (differs ? 1 : 0) << '\n';
        }
    }
    out << "identities: " << rows << " rows, " << flagged << " with c_kn disagreement -> "
        << (dir / "identities.csv").string() << '\n';
    return Ok;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
    const auto p = build_problem(c);
    const auto report = newton_solve(p, c.solver, GridFunction(p.grid_ptr()));
    ensure_dir(c.output_dir);
    {
        auto os = open_output(c.output_dir / "solve_report.json");
        write_solve_report_json(os, report);
    }
    {
        auto os = open_output(c.output_dir / "solution.csv");
        write_csv(os, report.u);
    }
    out << "solve: " << (report.converged ? "converged" : "not converged") << " after " << report.iterations
        << " iterations, residual " << format_number(report.residual_history.back()) << ", decay "
        << format_number(report.decay_estimate) << '\n';
    if (!report.converged) {
        out << "solve: " << report.message << '\n';
        return NotConverged;
    }
    return Ok;
}

int cmd_probe(const RunConfig& c, const std::vector<double>& gammas, std::ostream& out) {
    const auto p = build_problem(c);
    std::vector<ProbeReport> probes;
    for (double g : gammas) {
        probes.push_back(fredholm_probe(p, g));
        const auto& q = probes.back();
        out << "probe: gamma " << format_number(g) << " norm " << format_number(q.weighted_norm) << " log_flag "
            << (q.log_flag ? "true" : "false") << (q.singular ? " (singular)" : "") << '\n';
    }
    ensure_dir(c.output_dir);
    auto os = open_output(c.output_dir / "probe_report.json");
    write_probe_reports_json(os, p, probes);
    return Ok;
}

int cmd_intersect(const RunConfig& c, std::ostream& out) {
    const WarpedBackground bg(c.n, c.family, c.amplitude);
    const auto report = intersection_check(bg, {make_grid(c.T, c.N), 1e-8});
    ensure_dir(c.output_dir);
    auto os = open_output(c.output_dir / "intersect_report.json");
    write_intersection_json(os, report);
    out << "intersect: " << report.message << '\n';
    if (report.failing_k) out << "intersect: failing k = " << *report.failing_k << '\n';
    return report.einstein ? Ok : Negative;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw UsageError("config must be a JSON object");
    reject_unknown(root,
                   {"n", "k", "beta", "background", "grid", "solver", "output_dir", "family", "a", "T", "N", "tol",
                    "max_iter", "cone_guard"},
                   "");

    RunConfig c;
    if (root.contains("n")) c.n = get_as<int>(root, "n", "");
    if (root.contains("k")) c.k = get_as<int>(root, "k", "");
    if (c.n < 2) throw UsageError("config key 'n' must be >= 2");
    if (c.k < 1 || c.k > c.n + 1) throw UsageError("config key 'k' must lie in [1, n+1]");

    c.beta = beta0(c.n, c.k);
    if (root.contains("beta")) {
        const json& b = root.at("beta");
        if (b.is_string()) {
            if (b.get<std::string>() != "beta0") throw UsageError("config key 'beta' must be a number or \"beta0\"");
        } else if (b.is_number()) {
            c.beta = b.get<double>();
            if (!(c.beta > 0.0) || !std::isfinite(c.beta)) throw UsageError("config key 'beta' must be positive");
        } else {
            throw UsageError("config key 'beta' must be a number or \"beta0\"");
        }
    }

    const json* bg = section(root, "background", {"family", "a"});
    std::string family = to_string(c.family).data();
    read_either(root, bg, "family", "background", family);
    try {
        c.family = warp_family_from_string(family);
    } catch (const DomainError&) {
        throw UsageError("config key 'background.family' must be \"hyperbolic\" or \"perturbed\"");
    }
    read_either(root, bg, "a", "background", c.amplitude);
    if (!std::isfinite(c.amplitude)) throw UsageError("config key 'background.a' must be finite");

    const json* grid = section(root, "grid", {"T", "N"});
    read_either(root, grid, "T", "grid", c.T);
    read_either(root, grid, "N", "grid", c.N);
    if (!(c.T > 0.0) || !std::isfinite(c.T)) throw UsageError("config key 'grid.T' must be positive");
    if (c.N < 16) throw UsageError("config key 'grid.N' must be >= 16");

    const json* solver = section(root, "solver", {"tol", "max_iter", "cone_guard"});
    read_either(root, solver, "tol", "solver", c.solver.tol);
    read_either(root, solver, "max_iter", "solver", c.solver.max_iter);
    read_either(root, solver, "cone_guard", "solver", c.solver.cone_guard);
    if (!(c.solver.tol > 0.0)) throw UsageError("config key 'solver.tol' must be positive");
    if (c.solver.max_iter < 1) throw UsageError("config key 'solver.max_iter' must be >= 1");

    if (root.contains("output_dir")) c.output_dir = get_as<std::string>(root, "output_dir", "");
    c.output_dir = output_dir_for(c.output_dir);

    try {
        WarpedBackground check(c.n, c.family, c.amplitude);
        (void)check;
    } catch (const DomainError& e) {
        throw UsageError(std::string("config key 'background.a': ") + e.what());
    }
    return c;
}

RunConfig load_config(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw UsageError("cannot read config '" + path.string() + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Radial sigma_k-Schouten deformations of hyperbolic space", "sigmak"};
    app.require_subcommand(1);

    int nmax = 12;
    auto* identities = app.add_subcommand("identities", "Tabulate model constants and indicial roots");
    identities->add_option("--nmax", nmax, "Largest boundary dimension (<= 12)")->capture_default_str();

    std::string config_path;
    auto* solve = app.add_subcommand("solve", "Newton solve; writes solve_report.json and solution.csv");
    solve->add_option("--config", config_path, "JSON config file")->required();

    std::string gamma_text;
    auto* probe = app.add_subcommand("probe", "Fredholm-window probes of the linearization at u = 0");
    probe->add_option("--config", config_path, "JSON config file")->required();
    probe->add_option("--gamma", gamma_text, "Comma-separated weights")->required();

    auto* intersect = app.add_subcommand("intersect", "Check whether every sigma_k(A) is constant");
    intersect->add_option("--config", config_path, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (identities->parsed()) return cmd_identities(nmax, out);
        if (probe->parsed()) {
            const auto gammas = parse_gammas(gamma_text);
            return cmd_probe(load_config(config_path), gammas, out);
        }
        const RunConfig c = load_config(config_path);
        if (solve->parsed()) return cmd_solve(c, out);
        return cmd_intersect(c, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return Usage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return Usage;
    }
}

}  // namespace sigmak::cli
