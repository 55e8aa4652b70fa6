#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "peglab/numerics.hpp"
#include "peglab/rng.hpp"

using namespace peglab;

TEST_CASE("ols recovers an exact line") {
    // y = 2x + 1 fitted with [1, x] design
    Matrix x(5, 2);
    Matrix y(5, 1);
    for (int i = 0; i < 5; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = i;
        y(i, 0) = 2.0 * i + 1.0;
    }
    const auto fit = ols(x, y);
    CHECK(fit.coefficients(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.coefficients(1, 0) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("ols zero response gives zero coefficients and residuals") {
    Matrix x(6, 2);
    Matrix y(6, 1, 0.0);
    for (int i = 0; i < 6; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = i * i + 1.0;
    }
    const auto fit = ols(x, y);
    for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(fit.coefficients(i, 0)) < 1e-14);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(fit.residuals(i, 0)) < 1e-14);
}

TEST_CASE("ols residuals orthogonal to design columns") {
    Rng rng(7);
    const int n = 200, k = 5;
    Matrix x(n, k), y(n, 1);
    for (int i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        for (int j = 1; j < k; ++j) x(i, j) = rng.normal();
        y(i, 0) = rng.normal();
    }
    const auto fit = ols(x, y);
    for (int j = 0; j < k; ++j) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += fit.residuals(i, 0) * x(i, j);
        CHECK(std::abs(dot) < tol::kOlsOrthogonality);
    }
}

TEST_CASE("ols rejects rank-deficient designs") {
    Matrix x(10, 2), y(10, 1);
    for (int i = 0; i < 10; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = 2.0;  // collinear with intercept
        y(i, 0) = i;
    }
    CHECK_THROWS_AS(ols(x, y), std::domain_error);
}

TEST_CASE("cholesky identity and diagonal") {
    const Matrix i2 = Matrix::identity(2);
    const Matrix l = cholesky(i2);
    CHECK(l(0, 0) == doctest::Approx(1.0));
    CHECK(l(1, 1) == doctest::Approx(1.0));
    CHECK(l(1, 0) == doctest::Approx(0.0));

    Matrix d(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const Matrix ld = cholesky(d);
    CHECK(ld(0, 0) == doctest::Approx(2.0));
    CHECK(ld(1, 1) == doctest::Approx(3.0));
}

TEST_CASE("cholesky reconstruction on random SPD matrices") {
    Rng rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        Matrix a(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) a(i, j) = rng.normal();
        const Matrix spd = a.transpose() * a + 0.01 * Matrix::identity(2);
        const Matrix l = cholesky(spd);
        const Matrix back = l * l.transpose();
        double scale = 0.0, err = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                scale = std::max(scale, std::abs(spd(i, j)));
                err = std::max(err, std::abs(back(i, j) - spd(i, j)));
            }
        CHECK(err < tol::kCholReconstruct * scale);
    }
}

TEST_CASE("cholesky rejects non-positive-definite input") {
    Matrix m(2, 2);
    m(0, 0) = 1.0;
    m(0, 1) = m(1, 0) = 2.0;
    m(1, 1) = 1.0;
    CHECK_THROWS_AS(cholesky(m), std::domain_error);
}

TEST_CASE("generalized eigen on identity pencil") {
    const auto sol = generalized_symmetric_eigen(Matrix::identity(3), Matrix::identity(3));
    for (double v : sol.eigenvalues) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("generalized eigen diagonal case sorted descending") {
    Matrix a(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 2.0;
    const auto sol = generalized_symmetric_eigen(a, Matrix::identity(2));
    CHECK(sol.eigenvalues[0] == doctest::Approx(2.0));
    CHECK(sol.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("generalized eigen residuals on random SPD pencils") {
    Rng rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        Matrix ra(2, 2), rb(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                ra(i, j) = rng.normal();
                rb(i, j) = rng.normal();
            }
        const Matrix a = ra.transpose() * ra + 0.01 * Matrix::identity(2);
        const Matrix b = rb.transpose() * rb + 0.5 * Matrix::identity(2);
        const auto sol = generalized_symmetric_eigen(a, b);
        for (std::size_t j = 0; j < 2; ++j) {
            Matrix v(2, 1);
            v(0, 0) = sol.eigenvectors(0, j);
            v(1, 0) = sol.eigenvectors(1, j);
            const Matrix lhs = a * v;
            const Matrix rhs = sol.eigenvalues[j] * (b * v);
            CHECK(std::abs(lhs(0, 0) - rhs(0, 0)) < tol::kEigenResidual);
            CHECK(std::abs(lhs(1, 0) - rhs(1, 0)) < tol::kEigenResidual);
        }
    }
}

TEST_CASE("minimize quadratic bowls") {
    const auto quad = [](std::span<const double> x) { return (x[0] - 3.0) * (x[0] - 3.0); };
    const double lo[] = {0.0}, hi[] = {10.0}, x0[] = {0.0};
    const auto res = minimize(quad, x0, lo, hi);
    CHECK(std::abs(res.argmin[0] - 3.0) < 1e-4);
    CHECK(res.converged);

    const auto bowl = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
    const double lo2[] = {-1.0, -1.0}, hi2[] = {1.0, 1.0}, start2[] = {0.7, -0.6};
    const auto res2 = minimize(bowl, start2, lo2, hi2);
    CHECK(std::abs(res2.argmin[0]) < 1e-4);
    CHECK(std::abs(res2.argmin[1]) < 1e-4);
}

TEST_CASE("minimize Rosenbrock within bounds") {
    const auto rosen = [](std::span<const double> x) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        return a * a + 100.0 * b * b;
    };
    const double lo[] = {-2.0, -2.0}, hi[] = {2.0, 2.0}, x0[] = {-1.2, 1.0};
    const auto res = minimize(rosen, x0, lo, hi);
    CHECK(res.value < 1e-3);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(res.argmin[i] >= lo[i]);
        CHECK(res.argmin[i] <= hi[i]);
    }
}

TEST_CASE("minimize honors bounds and never worsens the start") {
    const auto f = [](std::span<const double> x) { return -x[0]; };  // pushes to upper bound
    const double lo[] = {0.0}, hi[] = {2.5}, x0[] = {1.0};
    const auto res = minimize(f, x0, lo, hi);
    CHECK(res.argmin[0] <= 2.5);
    CHECK(res.argmin[0] == doctest::Approx(2.5));
    CHECK(res.value <= -1.0);
}

TEST_CASE("minimize errors on non-finite start") {
    const auto f = [](std::span<const double>) { return std::nan(""); };
    const double lo[] = {0.0}, hi[] = {1.0}, x0[] = {0.5};
    CHECK_THROWS_AS(minimize(f, x0, lo, hi), std::invalid_argument);
}

TEST_CASE("normal distribution reference values") {
    // reference values from a 30-digit evaluation
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.84134474606854293).epsilon(1e-10));
    CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-10));
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-10));
    CHECK(normal_cdf(-4.0) == doctest::Approx(3.1671241833119924e-05).epsilon(1e-8));

    CHECK(std::abs(normal_quantile(0.5)) < 1e-12);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
    CHECK(normal_quantile(0.99) == doctest::Approx(2.3263478740408408).epsilon(1e-9));
    CHECK(normal_quantile(0.05) == doctest::Approx(-1.6448536269514729).epsilon(1e-9));
    CHECK(normal_quantile(1e-6) == doctest::Approx(-4.7534243088228987).epsilon(1e-8));

    CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-12));
}

TEST_CASE("chi-square reference values") {
    CHECK(chi_square_cdf(3.841458820694124, 1.0) == doctest::Approx(0.95).epsilon(1e-8));
    CHECK(chi_square_cdf(5.991464547107979, 2.0) == doctest::Approx(0.95).epsilon(1e-8));
    CHECK(chi_square_cdf(18.307038053275146, 10.0) == doctest::Approx(0.95).epsilon(1e-8));
    CHECK(chi_square_cdf(0.5, 1.0) == doctest::Approx(0.52049987781304652).epsilon(1e-8));
    CHECK(chi_square_cdf(2.0, 5.0) == doctest::Approx(0.15085496391539036).epsilon(1e-8));
    CHECK(chi_square_cdf(-1.0, 3.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(chi_square_cdf(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("F distribution reference values and chi-square limit") {
    CHECK(f_cdf(4.964602743730711, 1.0, 10.0) == doctest::Approx(0.95).epsilon(1e-8));
    CHECK(f_cdf(3.4928285406961565, 2.0, 20.0) == doctest::Approx(0.95).epsilon(1e-7));
    CHECK(f_cdf(1.0, 5.0, 5.0) == doctest::Approx(0.5).epsilon(1e-10));
    // F(1, m) converges to chi-square(1) as m grows
    for (double x : {0.5, 1.0, 2.0, 3.841458820694124}) {
        CHECK(f_cdf(x, 1.0, 1e6) == doctest::Approx(chi_square_cdf(x, 1.0)).epsilon(2e-5));
    }
    CHECK_THROWS_AS(f_cdf(1.0, 0.0, 5.0), std::invalid_argument);
}

TEST_CASE("cdfs are monotone on a grid") {
    double prev_n = -1.0, prev_c = -1.0, prev_f = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = -10.0 + 0.1 * i;
        const double n = normal_cdf(x);
        CHECK(n >= prev_n);
        prev_n = n;
        if (x > 0) {
            const double c = chi_square_cdf(x, 3.0);
            const double f = f_cdf(x, 4.0, 7.0);
            CHECK(c >= prev_c);
            CHECK(f >= prev_f);
            prev_c = c;
            prev_f = f;
        }
    }
    CHECK(normal_cdf(-40.0) == doctest::Approx(0.0));
    CHECK(normal_cdf(40.0) == doctest::Approx(1.0));
}

TEST_CASE("empirical quantile interpolates") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(empirical_quantile(v, 0.0) == doctest::Approx(1.0));
    CHECK(empirical_quantile(v, 1.0) == doctest::Approx(5.0));
    CHECK(empirical_quantile(v, 0.5) == doctest::Approx(3.0));
    CHECK(empirical_quantile(v, 0.25) == doctest::Approx(2.0));
    CHECK(empirical_quantile(v, 0.125) == doctest::Approx(1.5));
}

TEST_CASE("rng substreams are deterministic and distinct") {
    Rng a(substream_seed(42, 0));
    Rng b(substream_seed(42, 0));
    Rng c(substream_seed(42, 1));
    bool all_equal = true;
    for (int i = 0; i < 100; ++i) {
        const double x = a.normal(), y = b.normal(), z = c.normal();
        CHECK(x == y);
        all_equal = all_equal && (x == z);
    }
    CHECK_FALSE(all_equal);
}
