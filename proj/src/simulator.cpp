#include "peglab/simulator.hpp"

#include <cmath>
#include <stdexcept>

#include "peglab/rng.hpp"

namespace peglab {

Date simulation_start_date() { return Date(2024, 1, 1); }

namespace {

void validate_garch(const GarchParams& g, const char* what) {
    if (!(g.omega > 0.0)) throw std::invalid_argument(std::string(what) + ": omega must be > 0");
    if (g.a < 0.0 || g.b < 0.0)
        throw std::invalid_argument(std::string(what) + ": a and b must be >= 0");
    if (!(g.a + g.b < 1.0))
        throw std::invalid_argument(std::string(what) + ": a + b must be < 1");
}

void validate_regime(const Regime& r, const char* what) {
    validate_garch(r.garch_peg, what);
    validate_garch(r.garch_green, what);
    if (!(r.innovation_correlation > -1.0 && r.innovation_correlation < 1.0))
        throw std::invalid_argument(std::string(what) +
                                    ": innovation correlation must lie in (-1, 1)");
    for (const auto& g : r.gamma_matrices)
        if (g.rows() != 2 || g.cols() != 2)
            throw std::invalid_argument(std::string(what) + ": gamma matrices must be 2x2");
}

}  // namespace

void Scenario::validate() const {
    if (n_days < 2) throw std::invalid_argument("Scenario: n_days must be >= 2");
    if (break_day > 0 && !(break_day > 1 && break_day < n_days))
        throw std::invalid_argument("Scenario: break_day must satisfy 1 < break_day < n_days");
    validate_regime(pre_regime, "Scenario(pre_regime)");
    validate_regime(post_regime, "Scenario(post_regime)");
    if (pre_regime.gamma_matrices.size() != post_regime.gamma_matrices.size())
        throw std::invalid_argument("Scenario: regimes must share the gamma lag count");
    if (!(std::abs(1.0 + pre_regime.alpha[0]) < 1.0))
        throw std::invalid_argument("Scenario: pre-regime peg adjustment must be stable");
    if (!std::isfinite(beta_gamma) || !std::isfinite(green_jump) || !std::isfinite(peg_anchor))
        throw std::invalid_argument("Scenario: non-finite parameter");
}

SimulationResult simulate(const Scenario& scenario, std::optional<std::uint64_t> seed_override) {
    scenario.validate();
    const std::uint64_t seed = seed_override.value_or(scenario.seed);
    Rng rng(seed);

    const int n = scenario.n_days;
    const std::size_t lags = scenario.pre_regime.gamma_matrices.size();
    const double gamma = scenario.beta_gamma;
    // ect = peg - gamma*green + c0, zero at the (anchor, base-level) point
    const double c0 = gamma * kGreenBaseLevel - scenario.peg_anchor;

    std::vector<double> peg(n), green(n);
    GroundTruth truth;
    truth.scenario = scenario;
    truth.scenario.seed = seed;
    truth.eps_peg.assign(n, 0.0);
    truth.eps_green.assign(n, 0.0);
    truth.sigma2_peg.assign(n, 0.0);
    truth.sigma2_green.assign(n, 0.0);
    truth.ect.assign(n, 0.0);

    peg[0] = scenario.peg_anchor;
    green[0] = kGreenBaseLevel;

    auto uncond = [](const GarchParams& g) { return g.omega / (1.0 - g.a - g.b); };

    double s2p = uncond(scenario.pre_regime.garch_peg);
    double s2g = uncond(scenario.pre_regime.garch_green);
    truth.sigma2_peg[0] = s2p;
    truth.sigma2_green[0] = s2g;
    truth.ect[0] = peg[0] - gamma * green[0] + c0;

    std::vector<double> dpeg(n, 0.0), dgreen(n, 0.0);

    for (int t = 1; t < n; ++t) {
        const bool post = scenario.break_day > 0 && t + 1 >= scenario.break_day;  // day t+1 (1-based)
        const Regime& reg = post ? scenario.post_regime : scenario.pre_regime;

        // GARCH recursions continue across the regime switch
        s2p = reg.garch_peg.omega + reg.garch_peg.a * truth.eps_peg[t - 1] * truth.eps_peg[t - 1] +
              reg.garch_peg.b * s2p;
        s2g = reg.garch_green.omega +
              reg.garch_green.a * truth.eps_green[t - 1] * truth.eps_green[t - 1] +
              reg.garch_green.b * s2g;
        truth.sigma2_peg[t] = s2p;
        truth.sigma2_green[t] = s2g;

        const double rho = reg.innovation_correlation;
        const double u1 = rng.normal();
        const double u2 = rng.normal();
        const double z_green = u1;
        const double z_peg = rho * u1 + std::sqrt(1.0 - rho * rho) * u2;
        const double eg = std::sqrt(s2g) * z_green;
        const double ep = std::sqrt(s2p) * z_peg;
        truth.eps_peg[t] = ep;
        truth.eps_green[t] = eg;

        const double ect_prev = peg[t - 1] - gamma * green[t - 1] + c0;
        truth.ect[t - 1] = ect_prev;

        double alpha_peg = reg.alpha[0];
        if (scenario.asymmetry)
            alpha_peg = ect_prev < 0.0 ? scenario.asymmetry->alpha_peg_down
                                       : scenario.asymmetry->alpha_peg_up;

        double dp = alpha_peg * ect_prev + ep;
        double dg = reg.alpha[1] * ect_prev + reg.green_drift + eg;
        for (std::size_t i = 0; i < lags; ++i) {
            const int back = t - 1 - static_cast<int>(i);
            if (back < 1) break;
            const Matrix& g = reg.gamma_matrices[i];
            dp += g(0, 0) * dpeg[back] + g(0, 1) * dgreen[back];
            dg += g(1, 0) * dpeg[back] + g(1, 1) * dgreen[back];
        }
        if (scenario.break_day > 0 && t + 1 == scenario.break_day) dg -= scenario.green_jump;

        dpeg[t] = dp;
        dgreen[t] = dg;
        peg[t] = peg[t - 1] + dp;
        green[t] = green[t - 1] + dg;
        if (!std::isfinite(peg[t]) || !std::isfinite(green[t]))
            throw std::runtime_error("simulate: path diverged to a non-finite value");
    }
    truth.ect[n - 1] = peg[n - 1] - gamma * green[n - 1] + c0;

    std::vector<Date> dates(n);
    for (int t = 0; t < n; ++t) dates[t] = simulation_start_date().plus_days(t);

    return SimulationResult{BivariateSeries(std::move(dates), std::move(peg), std::move(green)),
                            std::move(truth)};
}

// ----------------------------------------------------------------------------
// Frozen named scenarios. Tuned once against the analysis pipeline, then
// pinned; acceptance bands depend on these exact numbers.
// ----------------------------------------------------------------------------

namespace {

Matrix gamma2x2(double pp, double pg, double gp, double gg) {
    Matrix m(2, 2);
    m(0, 0) = pp;
    m(0, 1) = pg;
    m(1, 0) = gp;
    m(1, 1) = gg;
    return m;
}

Scenario treasury_2024() {
    Scenario s;
    s.name = "treasury-2024";
    s.version = "1";
    s.n_days = 750;
    s.break_day = 0;  // single calm regime
    s.beta_gamma = 0.0;
    s.green_jump = 0.0;
    s.seed = 20240101;

    Regime r;
    r.alpha = {-0.335, 0.0};
    r.gamma_matrices = {gamma2x2(0.05, 0.00002, 0.0, 0.05),
                        gamma2x2(0.0, 0.00001, 0.0, 0.0)};
    r.green_drift = 0.01;
    r.garch_peg = {2.5e-8, 0.03, 0.27};    // sd ~ 1.9e-4 USD/day
    r.garch_green = {0.02, 0.05, 0.45};    // sd ~ 0.2 pts/day
    r.innovation_correlation = 0.15;
    s.pre_regime = r;
    s.post_regime = r;
    return s;
}

Scenario genius_2025() {
    Scenario s;
    s.name = "genius-2025";
    s.version = "1";
    s.n_days = 750;
    s.break_day = 380;
    s.beta_gamma = 0.0003;
    s.green_jump = 12.0;
    s.seed = 20250101;

    Regime pre;
    pre.alpha = {-0.30, 0.0};
    pre.gamma_matrices = {gamma2x2(0.05, 0.0001, 0.0, 0.05),
                          gamma2x2(0.0, 0.00005, 0.0, 0.0)};
    pre.green_drift = 0.02;
    pre.garch_peg = {4.0e-8, 0.05, 0.40};  // sd ~ 2.7e-4
    pre.garch_green = {0.03, 0.06, 0.50};  // sd ~ 0.26
    pre.innovation_correlation = 0.05;
    s.pre_regime = pre;

    Regime post;
    post.alpha = {-0.055, 0.0};
    post.gamma_matrices = {gamma2x2(0.05, 0.0018, 0.0, 0.08),
                           gamma2x2(0.0, 0.0008, 0.0, 0.0)};
    post.green_drift = 0.025;              // partial index recovery
    post.garch_peg = {1.2e-7, 0.10, 0.87}; // persistent peg volatility
    post.garch_green = {0.035, 0.09, 0.86};
    post.innovation_correlation = 0.10;
    s.post_regime = post;
    return s;
}

}  // namespace

Scenario builtin_scenario(const std::string& name) {
    if (name == "treasury-2024") return treasury_2024();
    if (name == "genius-2025") return genius_2025();
    throw std::invalid_argument("builtin_scenario: unknown scenario '" + name + "'");
}

}  // namespace peglab
