#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace peglab {

// Centralized numeric tolerances; tests reference these by name.
namespace tol {
inline constexpr double kRankRelative = 1e-10;        // OLS/eigen pivot threshold
inline constexpr double kSymmetry = 1e-10;            // relative symmetry check
inline constexpr double kCholReconstruct = 1e-9;      // L*L^T relative error
inline constexpr double kEigenResidual = 1e-8;        // |A v - lambda B v|
inline constexpr double kOlsOrthogonality = 1e-8;     // residual . column
inline constexpr double kCdfAbsolute = 1e-7;          // distribution accuracy
inline constexpr double kSimplexSpread = 1e-8;        // optimizer convergence
inline constexpr int kSimplexMaxIterations = 5000;
inline constexpr double kCompanionStability = 1e-8;   // spectral radius slack
}  // namespace tol

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static Matrix identity(std::size_t n);
    static Matrix column(std::span<const double> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<double>& entries() const { return entries_; }

    Matrix transpose() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

struct OlsFit {
    Matrix coefficients;  // k x m (one column per response column)
    Matrix residuals;     // n x m
    Matrix xtx_inverse;   // k x k, (X'X)^-1 for standard errors
};

/// Least squares via Householder QR. Throws on rank deficiency
/// (|r_jj| < kRankRelative * |r_00|).
OlsFit ols(const Matrix& design, const Matrix& response);

/// Lower-triangular Cholesky factor of an SPD matrix.
Matrix cholesky(const Matrix& spd);

struct EigenSolution {
    std::vector<double> eigenvalues;  // sorted descending
    Matrix eigenvectors;              // columns paired with eigenvalues
};

/// Solves a v = lambda b v for symmetric a and SPD b via Cholesky reduction
/// and cyclic Jacobi.
EigenSolution generalized_symmetric_eigen(const Matrix& a, const Matrix& b);

struct MinimizeResult {
    std::vector<double> argmin;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Bounded Nelder-Mead with restarts. Candidate points are projected into
/// [lower, upper]; non-finite objective values during the search act as a
/// barrier. Never returns a value above the initial one.
MinimizeResult minimize(const std::function<double(std::span<const double>)>& objective,
                        std::span<const double> initial, std::span<const double> lower,
                        std::span<const double> upper,
                        double tolerance = tol::kSimplexSpread,
                        int max_iterations = tol::kSimplexMaxIterations);

// Distribution functions (absolute accuracy <= kCdfAbsolute or better).
double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);
double chi_square_cdf(double x, double df);
double f_cdf(double x, double df1, double df2);

/// Type-7 (linear interpolation) empirical quantile of a sorted sample.
double empirical_quantile(std::span<const double> sorted, double p);

}  // namespace peglab
