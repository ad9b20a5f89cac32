// mdx: verification and exploration CLI for the ensemble-averaged Hamiltonian
// toolkit. Subcommands: verify | average | maxent | fisher | geometry | figures.
//
// Exit codes: 0 success (verify: no failed check), 1 solver failure
// (infeasible targets, non-convergence, divergence), 2 usage or config errors.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdx/averaging.hpp"
#include "mdx/config.hpp"
#include "mdx/fisher.hpp"
#include "mdx/geometry.hpp"
#include "mdx/maxent.hpp"
#include "mdx/model.hpp"
#include "mdx/relativity.hpp"
#include "mdx/verify.hpp"

namespace {

// All emitted numbers use 17 significant digits so outputs are byte-stable
// across runs and round-trip exactly through text.
std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt17(const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); }

// JSON has no NaN/inf literals; non-finite values (possible only for crashed
// checks) serialize as null.
std::string json_num(double v) { return std::isfinite(v) ? fmt17(v) : std::string("null"); }

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
            out.push_back(c);
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out.push_back(c);
        }
    }
    return out;
}

unsigned long seed_from_env() {
    if (const char* env = std::getenv("MDX_SEED")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 42ul;
}

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    double tol = 0.0;  // 0 = keep config value
    double p_min = 0.0, p_max = 0.0;
    int n = 1;
    double c1 = 1.5, c2 = -0.0182450;
    double beta1 = 1.0, beta2 = 2.718281828459045;
    std::string q_grid_csv;
};

mdx::RunConfig load_config(const CliOptions& opts) {
    mdx::RunConfig cfg;
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) throw std::runtime_error("config file not readable: " + opts.config_path);
        nlohmann::json j = nlohmann::json::parse(in);
        double m = cfg.model.m, lambda = cfg.model.lambda;
        if (j.contains("model")) {
            m = j["model"].value("m", m);
            lambda = j["model"].value("lambda", lambda);
        }
        cfg.model = mdx::ModelParams(m, lambda);
        if (j.contains("dist")) {
            const double nu = j["dist"].value("nu", cfg.dist.nu);
            const double gamma = j["dist"].value("gamma", cfg.dist.gamma);
            if (j["dist"].contains("c3"))
                cfg.dist = mdx::DistributionParams(nu, gamma, j["dist"]["c3"].get<double>());
            else
                cfg.dist = mdx::DistributionParams::normalized(nu, gamma);
        }
        if (j.contains("quadrature")) {
            cfg.quadrature.rel_tol = j["quadrature"].value("rel_tol", cfg.quadrature.rel_tol);
            cfg.quadrature.abs_tol = j["quadrature"].value("abs_tol", cfg.quadrature.abs_tol);
            cfg.quadrature.max_subdivisions =
                j["quadrature"].value("max_subdivisions", cfg.quadrature.max_subdivisions);
        }
        if (j.contains("fisher_q_grid")) cfg.fisher_q_grid = j["fisher_q_grid"].get<std::vector<double>>();
        if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    }
    if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
    if (opts.tol > 0.0) cfg.quadrature.rel_tol = opts.tol;
    if (!opts.q_grid_csv.empty()) {
        cfg.fisher_q_grid.clear();
        std::stringstream ss(opts.q_grid_csv);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.fisher_q_grid.push_back(std::stod(item));
    }
    cfg.quadrature.validate();
    return cfg;
}

std::ofstream open_output(const mdx::RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.output_dir);
    const auto path = std::filesystem::path(cfg.output_dir) / name;
    std::ofstream out(path, std::ios::binary);  // LF line endings, no locale
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    return out;
}

int cmd_verify(const mdx::RunConfig& cfg) {
    const mdx::VerificationReport report = mdx::run_verification(cfg, seed_from_env());

    std::ofstream out = open_output(cfg, "report.json");
    out << "{\n";
    out << "  \"toolkit_version\": \"" << mdx::kToolkitVersion << "\",\n";
    out << "  \"config\": {\n";
    out << "    \"model\": {\"m\": " << fmt17(cfg.model.m) << ", \"lambda\": " << fmt17(cfg.model.lambda)
        << "},\n";
    out << "    \"dist\": {\"nu\": " << fmt17(cfg.dist.nu) << ", \"gamma\": " << fmt17(cfg.dist.gamma)
        << ", \"c3\": " << fmt17(cfg.dist.c3) << "},\n";
    out << "    \"quadrature\": {\"rel_tol\": " << fmt17(cfg.quadrature.rel_tol)
        << ", \"abs_tol\": " << fmt17(cfg.quadrature.abs_tol)
        << ", \"max_subdivisions\": " << cfg.quadrature.max_subdivisions << "},\n";
    out << "    \"fisher_q_grid\": [";
    for (std::size_t i = 0; i < cfg.fisher_q_grid.size(); ++i)
        out << (i ? ", " : "") << fmt17(cfg.fisher_q_grid[i]);
    out << "],\n";
    out << "    \"output_dir\": \"" << json_escape(cfg.output_dir) << "\"\n";
    out << "  },\n";
    out << "  \"checks\": [\n";
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& c = report.checks[i];
        out << "    {\"name\": \"" << json_escape(c.name) << "\", \"module\": \"" << json_escape(c.module)
            << "\", \"measured\": " << json_num(c.measured) << ", \"expected\": " << json_num(c.expected)
            << ", \"tolerance\": " << json_num(c.tolerance) << ", \"provenance\": \"" << to_string(c.provenance)
            << "\", \"status\": \"" << to_string(c.status) << "\"}" << (i + 1 < report.checks.size() ? "," : "")
            << "\n";
    }
    out << "  ],\n";
    out << "  \"notes\": [\n";
    for (std::size_t i = 0; i < report.notes.size(); ++i)
        out << "    \"" << json_escape(report.notes[i]) << "\"" << (i + 1 < report.notes.size() ? "," : "")
            << "\n";
    out << "  ],\n";
    out << "  \"summary\": {\"pass\": " << report.n_pass << ", \"fail\": " << report.n_fail
        << ", \"finding\": " << report.n_finding << "}\n";
    out << "}\n";

    for (const auto& c : report.checks)
        std::cout << to_string(c.status) << "  " << c.module << "/" << c.name
                  << "  measured=" << fmt17(c.measured) << " expected=" << fmt17(c.expected)
                  << " tol=" << fmt17(c.tolerance) << " [" << to_string(c.provenance) << "]\n";
    std::cout << "summary: " << report.n_pass << " pass, " << report.n_fail << " fail, "
              << report.n_finding << " finding\n";
    return report.n_fail == 0 ? 0 : 1;
}

int cmd_average(const mdx::RunConfig& cfg, double p_min, double p_max, int n) {
    if (n < 1 || p_max < p_min) throw CLI::ValidationError("average", "requires n >= 1 and p_max >= p_min");
    std::vector<double> grid;
    grid.reserve(n);
    for (int i = 0; i < n; ++i)
        grid.push_back(n == 1 ? p_min : p_min + (p_max - p_min) * i / (n - 1));
    const auto rows = mdx::dispersion_scan(grid, cfg.model, cfg.dist, cfg.quadrature);

    std::ofstream out = open_output(cfg, "average.csv");
    out << "p,numeric_beta,numeric_xi,analytic_gamma,eq5_value,convergent\n";
    for (const auto& r : rows)
        out << fmt17(r.p) << "," << fmt17(r.numeric_beta) << "," << fmt17(r.numeric_xi) << ","
            << fmt17(r.analytic_gamma) << "," << fmt17(r.eq5_value) << ","
            << (r.convergent ? "true" : "false") << "\n";
    std::cout << "wrote average.csv (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_maxent(double c1, double c2) {
    const mdx::MultiplierSolution s = mdx::solve_multipliers({c1, c2});
    std::cout << "{\"nu\": " << fmt17(s.nu) << ", \"gamma\": " << fmt17(s.gamma) << ", \"c3\": "
              << fmt17(s.c3) << ", \"shape_k\": " << fmt17(s.shape_k) << ", \"residuals\": ["
              << fmt17(s.residuals[0]) << ", " << fmt17(s.residuals[1]) << "]}\n";
    return 0;
}

int cmd_fisher(const mdx::RunConfig& cfg) {
    const mdx::CutoffScan scan = mdx::fisher_scan(1.0, cfg.model, cfg.fisher_q_grid);
    std::ofstream out = open_output(cfg, "fisher.csv");
    out << "q,c1_moment,c2_moment,var_q2,g_beta2\n";
    for (const auto& pt : scan.points)
        out << fmt17(pt.q) << "," << fmt17(pt.c1_moment) << "," << fmt17(pt.c2_moment) << ","
            << fmt17(pt.var_q2) << "," << fmt17(pt.g_beta2) << "\n";
    out << "inf,,,," << fmt17(scan.limit) << "\n";
    std::cout << "{\"limit\": " << fmt17(scan.limit) << ", \"coefficient\": " << fmt17(scan.coefficient)
              << ", \"rms_residual\": " << fmt17(scan.rms_residual) << "}\n";
    return 0;
}

int cmd_geometry(const mdx::RunConfig& cfg, double beta1, double beta2) {
    const double dist = mdx::geodesic_distance(beta1, beta2);
    const mdx::CutoffScan scan = mdx::fisher_scan(1.0, cfg.model, cfg.fisher_q_grid);
    std::cout << "{\"beta1\": " << fmt17(beta1) << ", \"beta2\": " << fmt17(beta2) << ", \"u1\": "
              << fmt17(std::log(beta1)) << ", \"u2\": " << fmt17(std::log(beta2)) << ", \"distance\": "
              << fmt17(dist) << ", \"distance_raw\": " << fmt17(mdx::geodesic_distance_raw(beta1, beta2, scan.limit))
              << ", \"metric_constant\": " << fmt17(scan.limit) << "}\n";
    return 0;
}

int cmd_figures(const mdx::RunConfig& cfg) {
    {
        std::ofstream out = open_output(cfg, "figure1.csv");
        out << "beta,rho\n";
        for (int i = -120; i <= 120; ++i) {
            if (i == 0) continue;  // rho(0) excluded; its continuous extension is 0
            const double b = 0.05 * i;
            out << fmt17(b) << "," << fmt17(mdx::rho(b, cfg.dist)) << "\n";
        }
    }
    {
        std::ofstream out = open_output(cfg, "figure2.csv");
        out << "u,beta\n";
        std::vector<double> grid;
        for (int i = 0; i <= 120; ++i) grid.push_back(-3.0 + 0.05 * i);
        for (const auto& [u, beta] : mdx::figure2_data(grid))
            out << fmt17(u) << "," << fmt17(beta) << "\n";
    }
    std::cout << "wrote figure1.csv, figure2.csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CliOptions opts;
    CLI::App app{"mdx: ensemble-averaged Hamiltonian verification toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", opts.config_path, "JSON config file");
    app.add_option("--out", opts.out_dir, "output directory (overrides config)");
    app.add_option("--tol", opts.tol, "quadrature relative tolerance override");
    app.add_option("--q-grid", opts.q_grid_csv, "comma-separated cutoff grid for the fisher scan");

    CLI::App* verify = app.add_subcommand("verify", "run the full verification suite, write report.json");
    CLI::App* average = app.add_subcommand("average", "tabulate the ensemble average over a momentum grid");
    average->add_option("--p-min", opts.p_min, "grid start")->required();
    average->add_option("--p-max", opts.p_max, "grid end")->required();
    average->add_option("--n", opts.n, "grid size")->required();
    CLI::App* maxent = app.add_subcommand("maxent", "invert constraint targets to multipliers");
    maxent->add_option("--c1", opts.c1, "target of <1/beta^2>")->required();
    maxent->add_option("--c2", opts.c2, "target of <ln|beta|>")->required();
    CLI::App* fisher = app.add_subcommand("fisher", "cutoff scan and extrapolated metric constant");
    CLI::App* geometry = app.add_subcommand("geometry", "geodesic distance between two betas");
    geometry->add_option("--beta1", opts.beta1, "first point")->required();
    geometry->add_option("--beta2", opts.beta2, "second point")->required();
    CLI::App* figures = app.add_subcommand("figures", "emit figure1.csv and figure2.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const mdx::RunConfig cfg = load_config(opts);
        if (verify->parsed()) return cmd_verify(cfg);
        if (average->parsed()) return cmd_average(cfg, opts.p_min, opts.p_max, opts.n);
        if (maxent->parsed()) return cmd_maxent(opts.c1, opts.c2);
        if (fisher->parsed()) return cmd_fisher(cfg);
        if (geometry->parsed()) return cmd_geometry(cfg, opts.beta1, opts.beta2);
        if (figures->parsed()) return cmd_figures(cfg);
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mdx::Infeasible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mdx::NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mdx::DivergenceDetected& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mdx::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
