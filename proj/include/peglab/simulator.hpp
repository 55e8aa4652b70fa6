#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "peglab/numerics.hpp"
#include "peglab/series.hpp"

namespace peglab {

struct GarchParams {
    double omega = 0.0;
    double a = 0.0;
    double b = 0.0;
};

/// Generative parameters for one regime of the data-generating process.
struct Regime {
    std::array<double, 2> alpha{0.0, 0.0};   // adjustment speeds (peg, green)
    std::vector<Matrix> gamma_matrices;      // short-run 2x2 coefficient matrices
    double green_drift = 0.0;                // index points per day
    GarchParams garch_peg;
    GarchParams garch_green;
    double innovation_correlation = 0.0;
};

/// Adjustment speed split by the sign of the equilibrium deviation
/// (generative option only; estimation stays linear).
struct Asymmetry {
    double alpha_peg_down = 0.0;  // applied when the peg sits below target
    double alpha_peg_up = 0.0;
};

struct Scenario {
    std::string name;
    std::string version = "1";
    int n_days = 0;
    int break_day = 0;  // regime switch day (1-based); <= 0 disables the break
    Regime pre_regime;
    Regime post_regime;
    double beta_gamma = 0.0;  // true cointegrating slope
    double green_jump = 0.0;  // one-time index level drop at break_day
    std::optional<Asymmetry> asymmetry;
    double peg_anchor = 1.0;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument on bad config
};

/// Everything an oracle test needs to check an estimator against the truth.
struct GroundTruth {
    Scenario scenario;
    std::vector<double> eps_peg;      // realized innovations (index 0 unused)
    std::vector<double> eps_green;
    std::vector<double> sigma2_peg;   // conditional variances driving them
    std::vector<double> sigma2_green;
    std::vector<double> ect;          // equilibrium deviation path
};

struct SimulationResult {
    BivariateSeries series;
    GroundTruth truth;
};

/// Runs the regime-switching VECM-GARCH recursion. Deterministic given the
/// seed; the green index starts at 100.0 on day one.
SimulationResult simulate(const Scenario& scenario,
                          std::optional<std::uint64_t> seed_override = {});

/// Frozen named parameterizations: "treasury-2024" and "genius-2025".
Scenario builtin_scenario(const std::string& name);

inline constexpr double kGreenBaseLevel = 100.0;

Date simulation_start_date();  // day one of every simulated sample

}  // namespace peglab
