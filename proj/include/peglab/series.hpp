#pragma once

#include <cstddef>
#include <vector>

#include "peglab/dates.hpp"

namespace peglab {

/// Daily date-indexed series. Dates strictly increasing, values finite.
class TimeSeries {
public:
    TimeSeries(std::vector<Date> dates, std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<double>& values() const { return values_; }
    Date date(std::size_t i) const { return dates_[i]; }
    double value(std::size_t i) const { return values_[i]; }

private:
    std::vector<Date> dates_;
    std::vector<double> values_;
};

/// Peg/green pair on a shared date axis (length >= 2).
class BivariateSeries {
public:
    BivariateSeries(std::vector<Date> dates, std::vector<double> peg, std::vector<double> green);
    BivariateSeries(const TimeSeries& peg, const TimeSeries& green);

    std::size_t size() const { return peg_.size(); }
    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<double>& peg() const { return peg_; }
    const std::vector<double>& green() const { return green_; }

    TimeSeries peg_series() const { return TimeSeries(dates_, peg_); }
    TimeSeries green_series() const { return TimeSeries(dates_, green_); }

private:
    std::vector<Date> dates_;
    std::vector<double> peg_;
    std::vector<double> green_;
};

struct DescriptiveStats {
    double mean = 0.0;
    double variance = 0.0;  // n-1 denominator
    double skewness = 0.0;  // m3 / m2^1.5
    double excess_kurtosis = 0.0;  // m4 / m2^2 - 3
    std::size_t n = 0;
};

/// Series in which individual points may be flagged undefined (e.g. a
/// correlation over a constant window). Undefined slots hold NaN and are
/// reported, never dropped.
struct MaskedSeries {
    std::vector<Date> dates;
    std::vector<double> values;
    std::vector<bool> defined;

    std::size_t size() const { return values.size(); }
    bool all_defined() const;
};

struct AcfResult {
    std::vector<double> correlation;  // index = lag, correlation[0] == 1
    double band_half_width = 0.0;     // 1.96 / sqrt(n)
};

struct CcfPoint {
    int lag = 0;  // negative lag: x leads y
    double correlation = 0.0;
};

struct LjungBoxResult {
    double q = 0.0;
    double p_value = 1.0;
    int dof = 0;
};

struct DensityPoint {
    double x = 0.0;
    double density = 0.0;
};

struct QqPoint {
    double theoretical = 0.0;
    double empirical = 0.0;
};

/// order-th difference; output dates are the trailing dates of each window.
TimeSeries difference(const TimeSeries& series, int order);

/// Trailing-window Pearson correlation between peg and green.
/// Constant windows yield flagged undefined points.
MaskedSeries rolling_correlation(const BivariateSeries& pair, int window);

/// Trailing-window sample standard deviation (n-1 denominator).
TimeSeries rolling_volatility(const TimeSeries& series, int window);

AcfResult acf(const TimeSeries& series, int max_lag);

/// ccf(x, y) at lag k = corr(x_{t+k}, y_t); a peak at negative k means x leads y.
std::vector<CcfPoint> ccf(const TimeSeries& x, const TimeSeries& y, int max_lag);

/// Ljung-Box Q over `lags` autocorrelations; dof = lags - fitted_params.
LjungBoxResult ljung_box(const TimeSeries& series, int lags, int fitted_params);

/// Gaussian KDE with Silverman bandwidth on a uniform grid spanning
/// [min - 3h, max + 3h].
std::vector<DensityPoint> kernel_density(const TimeSeries& series, int grid_points);

/// Normal Q-Q pairs: sorted standardized sample against inverse-normal
/// quantiles at plotting positions (i - 0.5) / n.
std::vector<QqPoint> qq_normal(const TimeSeries& series);

DescriptiveStats descriptive_stats(const TimeSeries& series);

}  // namespace peglab
