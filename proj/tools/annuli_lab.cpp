// annuli-lab: command-line front end for the annulus-energy library.
// Subcommands: energy, sweep, radial-min, verify.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "annuli/energy.hpp"
#include "annuli/errors.hpp"
#include "annuli/euler_lagrange.hpp"
#include "annuli/format.hpp"
#include "annuli/profiles.hpp"
#include "annuli/verification.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;

struct Options {
    int n = 4;
    double r = 1.0;
    double R = 2.0;
    double r_star = 1.0;
    double R_star = 2.718281828459045;
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    std::string output = "-";
    std::string format = "csv";

    // energy / sweep
    std::string profile = "boundary-increasing";
    double lambda = 1.0;
    std::string grid;

    // verify
    std::uint64_t seed = annuli::kDefaultSuiteSeed;
    std::string inject_fault;
};

annuli::QuadratureConfig quad_config(const Options& opt) {
    annuli::QuadratureConfig cfg;
    cfg.rel_tol = opt.rel_tol;
    cfg.abs_tol = opt.abs_tol;
    return cfg;
}

std::string provenance(const Options& opt, const std::string& cmd) {
    std::ostringstream out;
    out << "# annuli-lab " << cmd << "\n";
    out << "# n=" << opt.n << " r=" << annuli::fmt17(opt.r) << " R=" << annuli::fmt17(opt.R)
        << " r_star=" << annuli::fmt17(opt.r_star) << " R_star=" << annuli::fmt17(opt.R_star)
        << " rel_tol=" << annuli::fmt17(opt.rel_tol)
        << " abs_tol=" << annuli::fmt17(opt.abs_tol) << " format=" << opt.format << "\n";
    return out.str();
}

json config_json(const Options& opt) {
    return json{{"n", opt.n},
                {"r", opt.r},
                {"R", opt.R},
                {"r_star", opt.r_star},
                {"R_star", opt.R_star},
                {"rel_tol", opt.rel_tol},
                {"abs_tol", opt.abs_tol},
                {"format", opt.format}};
}

void write_output(const Options& opt, const std::string& content) {
    if (opt.output == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + opt.output);
    out << content;
}

annuli::RadialProfile resolve_profile(const std::string& spec, const annuli::Annulus& domain,
                                      const annuli::Annulus& target) {
    if (spec == "boundary-increasing")
        return annuli::make_boundary_profile(domain, target, annuli::Orientation::increasing);
    if (spec == "boundary-decreasing")
        return annuli::make_boundary_profile(domain, target, annuli::Orientation::decreasing);
    if (spec == "el-minimizer")
        return annuli::build_radial_minimizer(domain, target).profile;
    if (spec.rfind("tabulated:", 0) == 0)
        return annuli::load_profile_csv(spec.substr(10), domain, target);
    throw std::invalid_argument(
        "profile must be one of boundary-increasing, boundary-decreasing, el-minimizer, "
        "tabulated:<path>; got '" + spec + "'");
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    std::string body = spec;
    if (spec.rfind("geometric:", 0) == 0) {
        body = spec.substr(10);
        std::istringstream in(body);
        std::string s_start, s_ratio, s_count;
        if (!std::getline(in, s_start, ',') || !std::getline(in, s_ratio, ',') ||
            !std::getline(in, s_count))
            throw std::invalid_argument("grid: expected geometric:start,ratio,count");
        double start = std::stod(s_start), ratio = std::stod(s_ratio);
        int count = std::stoi(s_count);
        if (!(start > 0.0) || !(ratio > 0.0) || count < 1)
            throw std::invalid_argument("grid: geometric spec needs start>0, ratio>0, count>=1");
        double lam = start;
        for (int i = 0; i < count; ++i, lam *= ratio) grid.push_back(lam);
        return grid;
    }
    std::istringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        double lam = std::stod(item);
        if (!(lam > 0.0)) throw std::invalid_argument("grid: lambda values must be positive");
        grid.push_back(lam);
    }
    if (grid.empty()) throw std::invalid_argument("grid: no lambda values given");
    return grid;
}

int report_failed_checks(const std::vector<annuli::CheckResult>& checks) {
    int failed = 0;
    for (const auto& c : checks)
        if (!c.pass) {
            std::cerr << "check failed: " << c.name << " (" << c.anchor
                      << ") measured=" << annuli::fmt17(c.measured)
                      << " threshold=" << annuli::fmt17(c.threshold) << "\n";
            ++failed;
        }
    return failed;
}

int cmd_energy(const Options& opt) {
    annuli::Annulus domain(opt.n, opt.r, opt.R);
    annuli::Annulus target(opt.n, opt.r_star, opt.R_star);
    annuli::RadialProfile profile = resolve_profile(opt.profile, domain, target);
    annuli::EnergyReport rep =
        annuli::quasiradial_energy({profile, opt.lambda}, quad_config(opt));

    if (opt.format == "json") {
        json out{{"config", config_json(opt)},
                 {"row",
                  {{"n", rep.meta.n},
                   {"r", rep.meta.r},
                   {"R", rep.meta.R},
                   {"r_star", rep.meta.r_star},
                   {"R_star", rep.meta.R_star},
                   {"lambda", rep.meta.lambda},
                   {"profile", rep.meta.profile},
                   {"a", rep.meta.a},
                   {"b", rep.meta.b},
                   {"energy", rep.energy},
                   {"bound", rep.bound},
                   {"relative_gap", rep.relative_gap},
                   {"quad_error", rep.quadrature_error}}}};
        write_output(opt, out.dump(2) + "\n");
    } else {
        write_output(opt, provenance(opt, "energy") + annuli::energy_csv_header() + "\n" +
                              annuli::energy_csv_row(rep) + "\n");
    }
    std::cerr << "bound=" << annuli::fmt17(rep.bound)
              << " relative_gap=" << annuli::fmt17(rep.relative_gap) << "\n";
    return kExitOk;
}

int cmd_sweep(const Options& opt) {
    annuli::Annulus domain(opt.n, opt.r, opt.R);
    annuli::Annulus target(opt.n, opt.r_star, opt.R_star);
    annuli::RadialProfile profile = resolve_profile(opt.profile, domain, target);
    annuli::SweepTable table =
        annuli::sweep_lambda(profile, parse_grid(opt.grid), quad_config(opt));

    if (opt.format == "json") {
        json rows = json::array();
        for (const auto& row : table.rows)
            rows.push_back({{"lambda", row.lambda},
                            {"energy", row.energy},
                            {"limit_energy", row.limit_energy},
                            {"bound", row.bound},
                            {"relative_excess", row.relative_excess}});
        write_output(opt, json{{"config", config_json(opt)}, {"rows", rows}}.dump(2) + "\n");
    } else {
        write_output(opt, provenance(opt, "sweep") + annuli::sweep_csv(table));
    }
    return report_failed_checks(table.checks) == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_radial_min(const Options& opt) {
    annuli::Annulus domain(opt.n, opt.r, opt.R);
    annuli::Annulus target(opt.n, opt.r_star, opt.R_star);
    annuli::ELSolution sol = annuli::build_radial_minimizer(domain, target);
    annuli::GapReport gap = annuli::gap_report(domain, target, quad_config(opt));

    json out{{"config", config_json(opt)},
             {"solution", annuli::el_solution_json(sol)},
             {"gap",
              {{"dirichlet_infimum", gap.infimum},
               {"quasiradial_lambda_0.125", gap.quasiradial_mid},
               {"minimal_radial_energy", gap.minimal_radial}}}};
    write_output(opt, out.dump(2) + "\n");
    return report_failed_checks(gap.checks) == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const Options& opt) {
    annuli::SuiteConfig cfg;
    cfg.domain = annuli::Annulus(opt.n, opt.r, opt.R);
    cfg.target = annuli::Annulus(opt.n, opt.r_star, opt.R_star);
    cfg.quad = quad_config(opt);
    cfg.seed = opt.seed;
    cfg.inject_fault = opt.inject_fault;

    annuli::SuiteReport report = annuli::run_suite(cfg);
    if (opt.format == "json") {
        write_output(opt, annuli::suite_json(report).dump(2) + "\n");
    } else {
        std::ostringstream head;
        head << provenance(opt, "verify") << "# seed=" << opt.seed;
        if (!opt.inject_fault.empty()) head << " inject_fault=" << opt.inject_fault;
        head << "\n";
        write_output(opt, head.str() + annuli::suite_table(report));
    }
    report_failed_checks(report.checks);
    return report.all_pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet-type energies of radial and quasiradial annulus mappings"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand name

    Options opt;
    app.set_config("--config", "", "configuration file (key=value lines, [section] blocks)");
    app.add_option("--n", opt.n, "ambient dimension n (3..30)")->capture_default_str();
    app.add_option("--r", opt.r, "domain inner radius")->capture_default_str();
    app.add_option("--R", opt.R, "domain outer radius")->capture_default_str();
    app.add_option("--r-star,--r_star", opt.r_star, "target inner radius")
        ->capture_default_str();
    app.add_option("--R-star,--R_star", opt.R_star, "target outer radius")
        ->capture_default_str();
    app.add_option("--rel-tol,--rel_tol", opt.rel_tol, "quadrature relative tolerance")
        ->capture_default_str();
    app.add_option("--abs-tol,--abs_tol", opt.abs_tol, "quadrature absolute tolerance")
        ->capture_default_str();
    app.add_option("--output", opt.output, "output path, '-' for stdout")
        ->capture_default_str();
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CLI::App* energy = app.add_subcommand("energy", "energy of one separable map");
    energy->add_option("--profile", opt.profile,
                       "boundary-increasing | boundary-decreasing | el-minimizer | "
                       "tabulated:<csv path>")
        ->capture_default_str();
    energy->add_option("--lambda", opt.lambda, "conformal dilation parameter")
        ->capture_default_str();

    CLI::App* sweep = app.add_subcommand("sweep", "energies across a lambda grid");
    sweep->add_option("--profile", opt.profile, "profile spec (see energy)")
        ->capture_default_str();
    sweep->add_option("--grid", opt.grid,
                      "lambda grid: 'geometric:start,ratio,count' or comma list")
        ->required();

    CLI::App* radial_min =
        app.add_subcommand("radial-min", "stationary radial profile, closed-form energy, "
                                         "and the infimum/radial gap (JSON output)");

    CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite");
    verify->add_option("--seed", opt.seed, "seed for randomized checks")
        ->capture_default_str();
    verify->add_option("--inject-fault", opt.inject_fault,
                       "force-fail the named check (negative-control hook)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (app.got_subcommand(energy)) return cmd_energy(opt);
        if (app.got_subcommand(sweep)) return cmd_sweep(opt);
        if (app.got_subcommand(radial_min)) return cmd_radial_min(opt);
        if (app.got_subcommand(verify)) return cmd_verify(opt);
    } catch (const annuli::NonConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const annuli::DomainError& e) {
        std::cerr << "evaluation failure: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    }
    return kExitOk;
}
