#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "annuli/energy.hpp"
#include "annuli/euler_lagrange.hpp"
#include "annuli/geometry.hpp"
#include "annuli/profiles.hpp"
#include "annuli/quadrature.hpp"

namespace annuli {

inline constexpr std::uint64_t kDefaultSuiteSeed = 20177;

struct CheckResult {
    std::string name;
    std::string anchor;  // the mathematical fact being checked, or "plumbing"
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
};

struct SuiteConfig {
    Annulus domain{4, 1.0, 2.0};
    Annulus target{4, 1.0, 2.718281828459045};
    QuadratureConfig quad;
    std::uint64_t seed = kDefaultSuiteSeed;
    std::string inject_fault;  // force-fails the named check (test hook)
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

// Samples a^s - b^s <= s (a-b) (a^{s-1} + b^{s-1}) over seeded draws of
// a >= b >= 0, s >= 1, plus the boundary cases; exact in reals, checked
// with 1e-15 relative slack for roundoff.
CheckResult check_power_mean_inequality(int samples, std::uint64_t seed);

struct SweepRow {
    double lambda = 0.0;
    double energy = 0.0;
    double limit_energy = 0.0;
    double bound = 0.0;
    double relative_excess = 0.0;  // (energy - limit_energy) / limit_energy
    double quad_error = 0.0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::vector<CheckResult> checks;
};

// Energies of h^lambda across the given lambda grid, with the structural
// assertions attached: reciprocal symmetry, dominance of the limit value,
// and (for n >= 4) strict improvement below the radial energy.
SweepTable sweep_lambda(const RadialProfile& profile, const std::vector<double>& lambdas,
                        const QuadratureConfig& cfg = {});

struct GapReport {
    double infimum = 0.0;
    double quasiradial_mid = 0.0;  // E[h_*^{1/8}]
    double minimal_radial = 0.0;
    std::vector<CheckResult> checks;
};

// infimum < E[h_*^{1/8}] < minimal radial energy for n >= 4; at n = 3 the
// three values agree and the report asserts zero gap instead.
GapReport gap_report(const Annulus& domain, const Annulus& target,
                     const QuadratureConfig& cfg = {});

// Seeded monotone perturbation of the stationary profile: multiplies H_*
// by exp(eps * B(t)) with B a random low-frequency bump vanishing at the
// endpoints, sampled onto a tabulated profile. Same boundary data,
// strictly increasing by construction.
RadialProfile make_perturbed_profile(const ELSolution& solution, std::uint64_t seed,
                                     int knots = 80);

// Runs every module invariant in deterministic order.
SuiteReport run_suite(const SuiteConfig& cfg = {});

std::string suite_table(const SuiteReport& report);
nlohmann::json suite_json(const SuiteReport& report);

// CSV with header "lambda,energy,limit_energy,bound,relative_excess",
// one row per lambda, numbers at 17 significant digits.
std::string sweep_csv(const SweepTable& table);

}  // namespace annuli
