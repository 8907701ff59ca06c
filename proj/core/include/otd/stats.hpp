#ifndef OTD_STATS_HPP
#define OTD_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace otd {

struct PredictionWindow {
    double t_i = 0.0;
    double t_f = 0.0;

    void validate() const;  // 0 < t_i < t_f
};

struct FutureMaxSeries {
    std::vector<double> t;
    std::vector<double> qbar;
};

/// qbar(t) = max q over samples in [t + t_i, t + t_f]. The series must be
/// uniformly sampled and the window endpoints must sit on the sampling grid;
/// trailing samples without a complete window are dropped (possibly leaving an
/// empty result).
FutureMaxSeries running_future_max(std::span<const double> t, std::span<const double> q,
                                   const PredictionWindow& window);

/// Column-normalized 2D histogram: joint counts of (alpha, qbar) plus the
/// conditional density p(qbar | alpha) per alpha bin. Values outside the
/// binning range are clamped into the end bins so tail mass is never silently
/// dropped (the extreme threshold usually sits far beyond the bulk).
struct ConditionalDensity {
    std::vector<double> alpha_edges;      // n_alpha + 1
    std::vector<double> q_edges;          // n_q + 1
    std::vector<double> joint;            // counts, index a * n_q + iq
    std::vector<double> conditional;      // p(qbar|alpha), zero where column empty
    std::vector<double> p_alpha;          // marginal density over alpha
    std::vector<std::size_t> col_count;   // samples per alpha column

    std::size_t n_alpha() const { return col_count.size(); }
    std::size_t n_q() const { return q_edges.empty() ? 0 : q_edges.size() - 1; }
    double at(std::size_t a, std::size_t iq) const { return conditional[a * n_q() + iq]; }
};

/// Histogram over [lo, hi] percentile range of the data (default 0.5..99.5).
ConditionalDensity conditional_pdf(std::span<const double> alpha, std::span<const double> qbar,
                                   std::size_t n_alpha_bins = 50, std::size_t n_q_bins = 50,
                                   double lo_percentile = 0.5, double hi_percentile = 99.5);

/// Tail of each conditional column: sum of p(qbar|alpha) * dq over the q bins
/// whose lower edge is at or above q_c. Columns with fewer than min_count
/// samples report NaN (insufficient evidence); counts are passed through so
/// callers can apply their own cut.
struct ExtremeProbabilityCurve {
    std::vector<double> alpha_center;
    std::vector<double> p;               // NaN where count < min_count
    std::vector<std::size_t> count;
};

ExtremeProbabilityCurve p_ee(const ConditionalDensity& density, double q_c,
                             std::size_t min_count = 20);

/// Fraction of samples with q strictly above the threshold.
double exceedance_fraction(std::span<const double> q, double q_c);

/// Fraction of (a, b) pairs inside the box a < a_max and b < b_max.
double quiescent_fraction(std::span<const double> a, std::span<const double> b, double a_max,
                          double b_max);

/// Spearman rank correlation (average ranks on ties).
double spearman(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> x);
double stddev(std::span<const double> x);  // population normalization (1/n)

}  // namespace otd

#endif
