#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "peglab/numerics.hpp"
#include "peglab/series.hpp"

namespace peglab {

/// Trace-test output for the bivariate system with the intercept restricted
/// to the cointegrating relation.
struct JohansenResult {
    std::array<double, 2> eigenvalues{};     // sorted descending, in [0, 1)
    std::array<double, 2> trace_stats{};     // null rank r = 0, 1
    std::array<std::array<double, 3>, 2> critical_values{};  // [r][90/95/99]
    int selected_rank = 0;
    std::array<double, 2> beta{1.0, 0.0};    // normalized [1, -gamma]
    double long_run_constant = 0.0;          // c0 in ect = peg - gamma*green + c0
    std::array<double, 2> alpha{};           // adjustment speeds
    int lag_order = 0;
};

JohansenResult johansen_test(const BivariateSeries& pair, int lag_order, int significance);

/// Stored critical value (intercept-in-cointegration-space case), generated
/// by the Monte Carlo tool in tools/gen_johansen_cv.cpp.
double trace_critical_values(int null_rank, int significance);

/// Trace statistics for `reps` independent random-walk nulls of dimension
/// `dims`; this is the generator behind the stored critical values and the
/// oracle the tests compare them against.
std::vector<double> simulate_trace_null(int dims, int reps, int sample_length,
                                        std::uint64_t seed);

namespace detail {

/// Reduced-rank regression eigenproblem on the augmented system
/// [y_{t-1}; 1]. Returns dims+1 eigenvalues (descending, clamped to [0, 1))
/// with their eigenvectors, plus the effective sample size.
struct RrrSolution {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;  // (dims+1) x (dims+1), columns match eigenvalues
    Matrix s01;           // dims x (dims+1)
    Matrix s11;           // (dims+1) x (dims+1)
    double t_eff = 0.0;
};

RrrSolution johansen_rrr(const Matrix& levels, int lag_order);

}  // namespace detail

}  // namespace peglab
