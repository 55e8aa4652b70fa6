#include "peglab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace peglab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ----------------------------------------------------------------------------
// Matrix
// ----------------------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw std::invalid_argument("Matrix: entry count does not match dimensions");
    for (double v : entries_)
        if (!std::isfinite(v)) throw std::invalid_argument("Matrix: non-finite entry");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::column(std::span<const double> v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("Matrix multiply: shape mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("Matrix add: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("Matrix subtract: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
    return out;
}

// ----------------------------------------------------------------------------
// Least squares (Householder QR)
// ----------------------------------------------------------------------------

OlsFit ols(const Matrix& design, const Matrix& response) {
    const std::size_t n = design.rows();
    const std::size_t k = design.cols();
    if (response.rows() != n) throw std::invalid_argument("ols: row count mismatch");
    if (n <= k) throw std::invalid_argument("ols: need more rows than columns");

    // Householder QR of the design; the same reflections are applied to the
    // response so back-substitution on R solves the LS problem.
    Matrix qr = design;
    Matrix qtb = response;
    std::vector<double> rdiag(k, 0.0);

    for (std::size_t j = 0; j < k; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm = std::hypot(norm, qr(i, j));
        if (norm == 0.0) {
            rdiag[j] = 0.0;
            continue;
        }
        if (qr(j, j) < 0) norm = -norm;
        for (std::size_t i = j; i < n; ++i) qr(i, j) /= norm;
        qr(j, j) += 1.0;

        for (std::size_t c = j + 1; c < k; ++c) {
            double s = 0.0;
            for (std::size_t i = j; i < n; ++i) s += qr(i, j) * qr(i, c);
            s = -s / qr(j, j);
            for (std::size_t i = j; i < n; ++i) qr(i, c) += s * qr(i, j);
        }
        for (std::size_t c = 0; c < qtb.cols(); ++c) {
            double s = 0.0;
            for (std::size_t i = j; i < n; ++i) s += qr(i, j) * qtb(i, c);
            s = -s / qr(j, j);
            for (std::size_t i = j; i < n; ++i) qtb(i, c) += s * qr(i, j);
        }
        rdiag[j] = -norm;
    }

    double max_diag = 0.0;
    for (double d : rdiag) max_diag = std::max(max_diag, std::abs(d));
    for (double d : rdiag)
        if (std::abs(d) < tol::kRankRelative * max_diag || d == 0.0)
            throw std::domain_error("ols: design matrix is rank deficient");

    // Back substitution, one response column at a time.
    Matrix coef(k, response.cols());
    for (std::size_t c = 0; c < response.cols(); ++c) {
        for (std::size_t j = k; j-- > 0;) {
            double s = qtb(j, c);
            for (std::size_t l = j + 1; l < k; ++l) s -= qr(j, l) * coef(l, c);
            coef(j, c) = s / rdiag[j];
        }
    }

    Matrix fitted = design * coef;
    Matrix resid = response - fitted;

    // (X'X)^-1 = R^-1 R^-T from the stored upper-triangular R.
    Matrix rinv(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        rinv(j, j) = 1.0 / rdiag[j];
        for (std::size_t i = j; i-- > 0;) {
            double s = 0.0;
            for (std::size_t l = i + 1; l <= j; ++l) s += qr(i, l) * rinv(l, j);
            rinv(i, j) = -s / rdiag[i];
        }
    }
    Matrix xtx_inv = rinv * rinv.transpose();

    return OlsFit{std::move(coef), std::move(resid), std::move(xtx_inv)};
}

// ----------------------------------------------------------------------------
// Cholesky
// ----------------------------------------------------------------------------

Matrix cholesky(const Matrix& spd) {
    const std::size_t n = spd.rows();
    if (spd.cols() != n) throw std::invalid_argument("cholesky: matrix not square");
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(spd(i, j)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(spd(i, j) - spd(j, i)) > tol::kSymmetry * std::max(1.0, scale))
                throw std::invalid_argument("cholesky: matrix not symmetric");

    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = spd(j, j);
        for (std::size_t l2 = 0; l2 < j; ++l2) d -= l(j, l2) * l(j, l2);
        if (!(d > 0.0)) throw std::domain_error("cholesky: matrix not positive definite");
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = spd(i, j);
            for (std::size_t l2 = 0; l2 < j; ++l2) s -= l(i, l2) * l(j, l2);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

// ----------------------------------------------------------------------------
// Generalized symmetric eigenproblem
// ----------------------------------------------------------------------------

namespace {

// Cyclic Jacobi for a symmetric matrix; returns eigenvalues (unsorted) and
// accumulates rotations into `vecs`.
void jacobi_eigen(Matrix& a, std::vector<double>& vals, Matrix& vecs) {
    const std::size_t n = a.rows();
    vecs = Matrix::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = vecs(i, p), viq = vecs(i, q);
                    vecs(i, p) = c * vip - s * viq;
                    vecs(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    vals.resize(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i);
}

// Solves L x = b in place for lower-triangular L.
void forward_solve(const Matrix& l, Matrix& b) {
    const std::size_t n = l.rows();
    for (std::size_t c = 0; c < b.cols(); ++c)
        for (std::size_t i = 0; i < n; ++i) {
            double s = b(i, c);
            for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * b(j, c);
            b(i, c) = s / l(i, i);
        }
}

// Solves L' x = b in place.
void backward_solve_t(const Matrix& l, Matrix& b) {
    const std::size_t n = l.rows();
    for (std::size_t c = 0; c < b.cols(); ++c)
        for (std::size_t i = n; i-- > 0;) {
            double s = b(i, c);
            for (std::size_t j = i + 1; j < n; ++j) s -= l(j, i) * b(j, c);
            b(i, c) = s / l(i, i);
        }
}

}  // namespace

EigenSolution generalized_symmetric_eigen(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n || b.cols() != n)
        throw std::invalid_argument("generalized_symmetric_eigen: shape mismatch");
    const Matrix l = cholesky(b);  // throws if b not SPD

    // C = L^-1 A L^-T, symmetric; standard eigenproblem on C.
    Matrix c = a;
    forward_solve(l, c);
    c = c.transpose();
    forward_solve(l, c);
    // symmetrize against round-off
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = 0.5 * (c(i, j) + c(j, i));
            c(i, j) = c(j, i) = m;
        }

    std::vector<double> vals;
    Matrix w;
    jacobi_eigen(c, vals, w);

    // Map back: v = L^-T w.
    backward_solve_t(l, w);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return vals[i] > vals[j]; });

    EigenSolution out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = vals[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = w(i, order[j]);
    }
    return out;
}

// ----------------------------------------------------------------------------
// Bounded Nelder-Mead with restarts
// ----------------------------------------------------------------------------

namespace {

double clipped_eval(const std::function<double(std::span<const double>)>& f,
                    std::vector<double>& x, std::span<const double> lo,
                    std::span<const double> hi) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;  // barrier
}

}  // namespace

MinimizeResult minimize(const std::function<double(std::span<const double>)>& objective,
                        std::span<const double> initial, std::span<const double> lower,
                        std::span<const double> upper, double tolerance, int max_iterations) {
    const std::size_t dim = initial.size();
    if (lower.size() != dim || upper.size() != dim)
        throw std::invalid_argument("minimize: bound dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) {
        if (!(lower[i] < upper[i])) throw std::invalid_argument("minimize: lower >= upper");
        if (initial[i] < lower[i] || initial[i] > upper[i])
            throw std::invalid_argument("minimize: initial point out of bounds");
    }
    {
        const double f0 = objective(initial);
        if (!std::isfinite(f0))
            throw std::invalid_argument("minimize: objective non-finite at initial point");
    }

    std::vector<double> best(initial.begin(), initial.end());
    double best_val = objective(best);
    int used = 0;
    bool converged = false;

    constexpr int kRestarts = 3;
    for (int round = 0; round < kRestarts && used < max_iterations; ++round) {
        // Simplex seeded around the current best point.
        std::vector<std::vector<double>> pts(dim + 1, best);
        std::vector<double> fv(dim + 1);
        for (std::size_t i = 0; i < dim; ++i) {
            const double span = upper[i] - lower[i];
            double step = 0.05 * span * (round == 0 ? 1.0 : std::pow(0.25, round));
            if (pts[i + 1][i] + step > upper[i]) step = -step;
            pts[i + 1][i] += step;
        }
        for (std::size_t i = 0; i <= dim; ++i) fv[i] = clipped_eval(objective, pts[i], lower, upper);

        while (used < max_iterations) {
            ++used;
            // order: best first, worst last
            std::vector<std::size_t> ord(dim + 1);
            std::iota(ord.begin(), ord.end(), 0);
            std::sort(ord.begin(), ord.end(),
                      [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
            std::vector<std::vector<double>> sp(dim + 1);
            std::vector<double> sf(dim + 1);
            for (std::size_t i = 0; i <= dim; ++i) {
                sp[i] = pts[ord[i]];
                sf[i] = fv[ord[i]];
            }
            pts.swap(sp);
            fv.swap(sf);

            double spread = 0.0;
            for (std::size_t i = 0; i <= dim; ++i)
                if (std::isfinite(fv[i])) spread = std::max(spread, std::abs(fv[i] - fv[0]));
            if (spread <= tolerance) {
                converged = true;
                break;
            }

            std::vector<double> centroid(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j];
            }
            for (double& c : centroid) c /= static_cast<double>(dim);

            auto blend = [&](double coef) {
                std::vector<double> p(dim);
                for (std::size_t j = 0; j < dim; ++j)
                    p[j] = centroid[j] + coef * (pts[dim][j] - centroid[j]);
                return p;
            };

            auto xr = blend(-1.0);  // reflection
            double fr = clipped_eval(objective, xr, lower, upper);
            if (fr < fv[0]) {
                auto xe = blend(-2.0);  // expansion
                double fe = clipped_eval(objective, xe, lower, upper);
                if (fe < fr) {
                    pts[dim] = xe;
                    fv[dim] = fe;
                } else {
                    pts[dim] = xr;
                    fv[dim] = fr;
                }
            } else if (fr < fv[dim - 1]) {
                pts[dim] = xr;
                fv[dim] = fr;
            } else {
                const bool outside = fr < fv[dim];
                auto xc = blend(outside ? -0.5 : 0.5);
                double fc = clipped_eval(objective, xc, lower, upper);
                if (fc < (outside ? fr : fv[dim])) {
                    pts[dim] = xc;
                    fv[dim] = fc;
                } else {
                    for (std::size_t i = 1; i <= dim; ++i) {  // shrink toward best
                        for (std::size_t j = 0; j < dim; ++j)
                            pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
                        fv[i] = clipped_eval(objective, pts[i], lower, upper);
                    }
                }
            }
        }

        for (std::size_t i = 0; i <= dim; ++i)
            if (fv[i] < best_val) {
                best_val = fv[i];
                best = pts[i];
            }
    }

    return MinimizeResult{std::move(best), best_val, converged, used};
}

// ----------------------------------------------------------------------------
// Distribution functions
// ----------------------------------------------------------------------------

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -kInf;
        if (p == 1.0) return kInf;
        throw std::invalid_argument("normal_quantile: p outside [0, 1]");
    }
    // Acklam's rational approximation, then one Newton polish against erfc.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double err = normal_cdf(x) - p;
    x -= err / normal_pdf(x);
    return x;
}

namespace {

// Regularized lower incomplete gamma P(a, x); series + continued fraction.
double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: invalid arguments");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // Lentz continued fraction for Q(a, x).
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

// Continued fraction for the regularized incomplete beta function.
double beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h;
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace

double chi_square_cdf(double x, double df) {
    if (df <= 0.0) throw std::invalid_argument("chi_square_cdf: df must be positive");
    if (x <= 0.0) return 0.0;
    return gamma_p(df / 2.0, x / 2.0);
}

double f_cdf(double x, double df1, double df2) {
    if (df1 <= 0.0 || df2 <= 0.0) throw std::invalid_argument("f_cdf: df must be positive");
    if (x <= 0.0) return 0.0;
    return incomplete_beta(df1 / 2.0, df2 / 2.0, df1 * x / (df1 * x + df2));
}

double empirical_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    const double h = p * (static_cast<double>(sorted.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace peglab
