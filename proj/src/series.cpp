#include "peglab/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "peglab/numerics.hpp"

namespace peglab {

namespace {

void check_finite(const std::vector<double>& values, const char* what) {
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite value");
}

void check_dates(const std::vector<Date>& dates, const char* what) {
    for (std::size_t i = 1; i < dates.size(); ++i)
        if (!(dates[i - 1] < dates[i]))
            throw std::invalid_argument(std::string(what) +
                                        ": dates must be strictly increasing");
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (static_cast<double>(v.size()) - 1.0);
}

}  // namespace

TimeSeries::TimeSeries(std::vector<Date> dates, std::vector<double> values)
    : dates_(std::move(dates)), values_(std::move(values)) {
    if (dates_.size() != values_.size())
        throw std::invalid_argument("TimeSeries: date/value length mismatch");
    if (values_.empty()) throw std::invalid_argument("TimeSeries: empty series");
    check_dates(dates_, "TimeSeries");
    check_finite(values_, "TimeSeries");
}

BivariateSeries::BivariateSeries(std::vector<Date> dates, std::vector<double> peg,
                                 std::vector<double> green)
    : dates_(std::move(dates)), peg_(std::move(peg)), green_(std::move(green)) {
    if (dates_.size() != peg_.size() || dates_.size() != green_.size())
        throw std::invalid_argument("BivariateSeries: length mismatch");
    if (dates_.size() < 2) throw std::invalid_argument("BivariateSeries: length must be >= 2");
    check_dates(dates_, "BivariateSeries");
    check_finite(peg_, "BivariateSeries(peg)");
    check_finite(green_, "BivariateSeries(green)");
}

BivariateSeries::BivariateSeries(const TimeSeries& peg, const TimeSeries& green)
    : BivariateSeries(peg.dates(), peg.values(), green.values()) {
    if (peg.dates() != green.dates())
        throw std::invalid_argument("BivariateSeries: component date axes differ");
}

bool MaskedSeries::all_defined() const {
    return std::all_of(defined.begin(), defined.end(), [](bool b) { return b; });
}

// ----------------------------------------------------------------------------

TimeSeries difference(const TimeSeries& series, int order) {
    if (order <= 0) throw std::invalid_argument("difference: order must be positive");
    if (static_cast<std::size_t>(order) >= series.size())
        throw std::invalid_argument("difference: order must be smaller than series length");
    std::vector<double> v = series.values();
    for (int k = 0; k < order; ++k) {
        for (std::size_t i = v.size() - 1; i > 0; --i) v[i] -= v[i - 1];
        v.erase(v.begin());
    }
    std::vector<Date> d(series.dates().begin() + order, series.dates().end());
    return TimeSeries(std::move(d), std::move(v));
}

MaskedSeries rolling_correlation(const BivariateSeries& pair, int window) {
    if (window < 3) throw std::invalid_argument("rolling_correlation: window must be >= 3");
    if (static_cast<std::size_t>(window) > pair.size())
        throw std::invalid_argument("rolling_correlation: window exceeds series length");

    const auto& x = pair.peg();
    const auto& y = pair.green();
    const std::size_t n = pair.size();
    const std::size_t w = static_cast<std::size_t>(window);

    MaskedSeries out;
    out.dates.reserve(n - w + 1);
    out.values.reserve(n - w + 1);
    out.defined.reserve(n - w + 1);

    for (std::size_t end = w; end <= n; ++end) {
        const std::size_t begin = end - w;
        double sx = 0, sy = 0;
        for (std::size_t i = begin; i < end; ++i) {
            sx += x[i];
            sy += y[i];
        }
        const double mx = sx / w, my = sy / w;
        double sxx = 0, syy = 0, sxy = 0;
        for (std::size_t i = begin; i < end; ++i) {
            const double dx = x[i] - mx, dy = y[i] - my;
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
        out.dates.push_back(pair.dates()[end - 1]);
        if (sxx <= 0.0 || syy <= 0.0) {
            // constant window: meaningful (e.g. perfect peg) so flagged, not dropped
            out.values.push_back(std::numeric_limits<double>::quiet_NaN());
            out.defined.push_back(false);
        } else {
            double r = sxy / std::sqrt(sxx * syy);
            out.values.push_back(std::clamp(r, -1.0, 1.0));
            out.defined.push_back(true);
        }
    }
    return out;
}

TimeSeries rolling_volatility(const TimeSeries& series, int window) {
    if (window < 2) throw std::invalid_argument("rolling_volatility: window must be >= 2");
    if (static_cast<std::size_t>(window) > series.size())
        throw std::invalid_argument("rolling_volatility: window exceeds series length");

    const auto& v = series.values();
    const std::size_t n = v.size();
    const std::size_t w = static_cast<std::size_t>(window);

    std::vector<Date> dates;
    std::vector<double> vol;
    dates.reserve(n - w + 1);
    vol.reserve(n - w + 1);
    for (std::size_t end = w; end <= n; ++end) {
        const std::span<const double> win(v.data() + (end - w), w);
        const double var = sample_variance(win);
        vol.push_back(std::sqrt(std::max(0.0, var)));
        dates.push_back(series.dates()[end - 1]);
    }
    return TimeSeries(std::move(dates), std::move(vol));
}

AcfResult acf(const TimeSeries& series, int max_lag) {
    const std::size_t n = series.size();
    if (max_lag <= 0) throw std::invalid_argument("acf: max_lag must be positive");
    if (static_cast<std::size_t>(max_lag) >= n / 2)
        throw std::invalid_argument("acf: max_lag must be below length/2");

    const auto& v = series.values();
    const double m = mean_of(v);
    double denom = 0.0;
    for (double x : v) denom += (x - m) * (x - m);
    if (denom <= 0.0) throw std::domain_error("acf: correlation undefined for constant series");

    AcfResult out;
    out.correlation.resize(static_cast<std::size_t>(max_lag) + 1);
    out.correlation[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t)
            num += (v[t] - m) * (v[t - k] - m);
        out.correlation[static_cast<std::size_t>(k)] = num / denom;
    }
    out.band_half_width = 1.96 / std::sqrt(static_cast<double>(n));
    return out;
}

std::vector<CcfPoint> ccf(const TimeSeries& x, const TimeSeries& y, int max_lag) {
    if (x.size() != y.size()) throw std::invalid_argument("ccf: series lengths differ");
    const std::size_t n = x.size();
    if (max_lag <= 0) throw std::invalid_argument("ccf: max_lag must be positive");
    if (static_cast<std::size_t>(max_lag) >= n / 2)
        throw std::invalid_argument("ccf: max_lag must be below length/2");

    const auto& xv = x.values();
    const auto& yv = y.values();
    const double mx = mean_of(xv), my = mean_of(yv);
    double sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xv[i] - mx) * (xv[i] - mx);
        syy += (yv[i] - my) * (yv[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw std::domain_error("ccf: correlation undefined for constant input");
    const double scale = std::sqrt(sxx * syy);

    std::vector<CcfPoint> out;
    out.reserve(2 * static_cast<std::size_t>(max_lag) + 1);
    for (int k = -max_lag; k <= max_lag; ++k) {
        double s = 0.0;
        // sum over t where both y_t and x_{t+k} exist
        const std::size_t t0 = k < 0 ? static_cast<std::size_t>(-k) : 0;
        const std::size_t t1 = k > 0 ? n - static_cast<std::size_t>(k) : n;
        for (std::size_t t = t0; t < t1; ++t) {
            const auto shifted = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(t) + k);
            s += (xv[shifted] - mx) * (yv[t] - my);
        }
        out.push_back({k, s / scale});
    }
    return out;
}

LjungBoxResult ljung_box(const TimeSeries& series, int lags, int fitted_params) {
    if (lags <= fitted_params)
        throw std::invalid_argument("ljung_box: degrees of freedom must be positive");
    const AcfResult rho = acf(series, lags);
    const double n = static_cast<double>(series.size());
    double q = 0.0;
    for (int k = 1; k <= lags; ++k) {
        const double r = rho.correlation[static_cast<std::size_t>(k)];
        q += r * r / (n - k);
    }
    q *= n * (n + 2.0);
    const int dof = lags - fitted_params;
    const double p = 1.0 - chi_square_cdf(q, dof);
    return LjungBoxResult{q, p, dof};
}

std::vector<DensityPoint> kernel_density(const TimeSeries& series, int grid_points) {
    if (series.size() < 10) throw std::invalid_argument("kernel_density: need length >= 10");
    if (grid_points < 2) throw std::invalid_argument("kernel_density: need >= 2 grid points");

    std::vector<double> v = series.values();
    const std::size_t n = v.size();
    const double sd = std::sqrt(sample_variance(v));
    std::sort(v.begin(), v.end());
    const double iqr = empirical_quantile(v, 0.75) - empirical_quantile(v, 0.25);
    if (sd <= 0.0)
        throw std::domain_error("kernel_density: degenerate (constant) distribution");

    // Silverman: h = 0.9 min(sd, IQR/1.34) n^{-1/5}; fall back to sd when the
    // IQR collapses on tied data.
    double spread = sd;
    if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
    const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);

    const double lo = v.front() - 3.0 * h;
    const double hi = v.back() + 3.0 * h;
    const double step = (hi - lo) / static_cast<double>(grid_points - 1);

    std::vector<DensityPoint> out(static_cast<std::size_t>(grid_points));
    const double norm = 1.0 / (static_cast<double>(n) * h);
    for (int g = 0; g < grid_points; ++g) {
        const double x = lo + g * step;
        double dens = 0.0;
        for (double xi : v) dens += normal_pdf((x - xi) / h);
        out[static_cast<std::size_t>(g)] = {x, dens * norm};
    }
    return out;
}

std::vector<QqPoint> qq_normal(const TimeSeries& series) {
    // Caller standardizes the sample when a 45-degree reference is wanted;
    // the quantile pairing itself is scale-honest.
    if (series.size() < 10) throw std::invalid_argument("qq_normal: need length >= 10");
    std::vector<double> v = series.values();
    if (sample_variance(v) <= 0.0)
        throw std::domain_error("qq_normal: degenerate (zero variance) sample");
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    std::vector<QqPoint> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i].theoretical = normal_quantile((static_cast<double>(i) + 0.5) / n);
        out[i].empirical = v[i];
    }
    return out;
}

DescriptiveStats descriptive_stats(const TimeSeries& series) {
    if (series.size() < 4) throw std::invalid_argument("descriptive_stats: need length >= 4");
    const auto& v = series.values();
    const double n = static_cast<double>(v.size());
    const double m = mean_of(v);
    double m2 = 0, m3 = 0, m4 = 0;
    for (double x : v) {
        const double d = x - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    DescriptiveStats s;
    s.mean = m;
    s.variance = m2 * n / (n - 1.0);
    s.n = v.size();
    if (m2 > 0.0) {
        s.skewness = m3 / std::pow(m2, 1.5);
        s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return s;
}

}  // namespace peglab
