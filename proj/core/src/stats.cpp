#include "otd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "otd/errors.hpp"

namespace otd {

namespace {

// Index offset of a time offset on a uniform grid; throws if it falls between
// samples.
std::size_t grid_offset(double dt, double offset, const char* what) {
    const double raw = offset / dt;
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) > 1e-6 * std::max(1.0, std::abs(raw)))
        throw contract_violation(std::string(what) + ": window endpoint " +
                                 std::to_string(offset) +
                                 " is not representable on the sampling grid");
    return std::size_t(rounded);
}

double percentile(std::vector<double> sorted, double pct) {
    // sorted is already sorted; linear interpolation between order statistics.
    if (sorted.empty()) throw contract_violation("percentile: empty data");
    const double pos = pct / 100.0 * double(sorted.size() - 1);
    const std::size_t lo = std::size_t(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - double(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

std::vector<double> ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double avg = 0.5 * double(i + j) + 1.0;  // average rank, 1-based
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

void PredictionWindow::validate() const {
    if (!(t_i > 0.0) || !(t_f > t_i))
        throw contract_violation("PredictionWindow: need 0 < t_i < t_f");
}

FutureMaxSeries running_future_max(std::span<const double> t, std::span<const double> q,
                                   const PredictionWindow& window) {
    window.validate();
    if (t.size() != q.size()) throw contract_violation("running_future_max: length mismatch");
    if (t.size() < 2) return {};
    const double dt = t[1] - t[0];
    if (!(dt > 0.0)) throw contract_violation("running_future_max: time must increase");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * dt)
            throw contract_violation("running_future_max: series not uniformly sampled");
    }
    const std::size_t i0 = grid_offset(dt, window.t_i, "running_future_max");
    const std::size_t i1 = grid_offset(dt, window.t_f, "running_future_max");

    FutureMaxSeries out;
    if (t.size() <= i1) return out;  // window longer than the series
    const std::size_t kept = t.size() - i1;
    out.t.reserve(kept);
    out.qbar.reserve(kept);
    for (std::size_t j = 0; j < kept; ++j) {
        double m = q[j + i0];
        for (std::size_t k = j + i0 + 1; k <= j + i1; ++k) m = std::max(m, q[k]);
        out.t.push_back(t[j]);
        out.qbar.push_back(m);
    }
    return out;
}

ConditionalDensity conditional_pdf(std::span<const double> alpha, std::span<const double> qbar,
                                   std::size_t n_alpha_bins, std::size_t n_q_bins,
                                   double lo_percentile, double hi_percentile) {
    if (alpha.size() != qbar.size()) throw contract_violation("conditional_pdf: length mismatch");
    if (alpha.empty()) throw contract_violation("conditional_pdf: empty input");
    if (n_alpha_bins == 0 || n_q_bins == 0)
        throw contract_violation("conditional_pdf: need at least one bin per axis");

    auto edges_for = [&](std::span<const double> x) {
        std::vector<double> sorted(x.begin(), x.end());
        std::sort(sorted.begin(), sorted.end());
        double lo = percentile(sorted, lo_percentile);
        double hi = percentile(sorted, hi_percentile);
        if (!(hi > lo)) {  // degenerate data: widen symmetrically
            const double pad = std::max(1e-12, std::abs(lo) * 1e-12 + 1e-12);
            lo -= pad;
            hi += pad;
        }
        return std::pair<double, double>(lo, hi);
    };

    ConditionalDensity d;
    const auto [alo, ahi] = edges_for(alpha);
    const auto [qlo, qhi] = edges_for(qbar);
    d.alpha_edges.resize(n_alpha_bins + 1);
    d.q_edges.resize(n_q_bins + 1);
    for (std::size_t i = 0; i <= n_alpha_bins; ++i)
        d.alpha_edges[i] = alo + (ahi - alo) * double(i) / double(n_alpha_bins);
    for (std::size_t i = 0; i <= n_q_bins; ++i)
        d.q_edges[i] = qlo + (qhi - qlo) * double(i) / double(n_q_bins);

    auto bin_of = [](double x, const std::vector<double>& edges) {
        const std::size_t nb = edges.size() - 1;
        if (x <= edges.front()) return std::size_t(0);       // clamp: keep tail mass
        if (x >= edges.back()) return nb - 1;
        const double w = (edges.back() - edges.front()) / double(nb);
        std::size_t b = std::size_t((x - edges.front()) / w);
        return std::min(b, nb - 1);
    };

    d.joint.assign(n_alpha_bins * n_q_bins, 0.0);
    d.col_count.assign(n_alpha_bins, 0);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const std::size_t a = bin_of(alpha[i], d.alpha_edges);
        const std::size_t iq = bin_of(qbar[i], d.q_edges);
        d.joint[a * n_q_bins + iq] += 1.0;
        d.col_count[a] += 1;
    }

    const double dq = (qhi - qlo) / double(n_q_bins);
    const double da = (ahi - alo) / double(n_alpha_bins);
    d.conditional.assign(n_alpha_bins * n_q_bins, 0.0);
    d.p_alpha.assign(n_alpha_bins, 0.0);
    for (std::size_t a = 0; a < n_alpha_bins; ++a) {
        d.p_alpha[a] = double(d.col_count[a]) / (double(alpha.size()) * da);
        if (d.col_count[a] == 0) continue;  // flagged by col_count, never divided
        const double norm = 1.0 / (double(d.col_count[a]) * dq);
        for (std::size_t iq = 0; iq < n_q_bins; ++iq)
            d.conditional[a * n_q_bins + iq] = d.joint[a * n_q_bins + iq] * norm;
    }
    return d;
}

ExtremeProbabilityCurve p_ee(const ConditionalDensity& density, double q_c,
                             std::size_t min_count) {
    const std::size_t na = density.n_alpha(), nq = density.n_q();
    if (na == 0 || nq == 0) throw contract_violation("p_ee: empty density");
    const double dq = density.q_edges[1] - density.q_edges[0];
    const double scale = std::max(1.0, std::abs(density.q_edges.back()));

    ExtremeProbabilityCurve curve;
    curve.alpha_center.resize(na);
    curve.p.resize(na);
    curve.count.resize(na);
    for (std::size_t a = 0; a < na; ++a) {
        curve.alpha_center[a] = 0.5 * (density.alpha_edges[a] + density.alpha_edges[a + 1]);
        curve.count[a] = density.col_count[a];
        if (density.col_count[a] < min_count) {
            curve.p[a] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        double tail = 0.0;
        for (std::size_t iq = 0; iq < nq; ++iq) {
            if (density.q_edges[iq] >= q_c - 1e-12 * scale) tail += density.at(a, iq) * dq;
        }
        curve.p[a] = std::clamp(tail, 0.0, 1.0);
    }
    return curve;
}

double exceedance_fraction(std::span<const double> q, double q_c) {
    if (q.empty()) return 0.0;
    std::size_t hits = 0;
    for (double v : q) hits += (v > q_c) ? 1 : 0;
    return double(hits) / double(q.size());
}

double quiescent_fraction(std::span<const double> a, std::span<const double> b, double a_max,
                          double b_max) {
    if (a.size() != b.size()) throw contract_violation("quiescent_fraction: length mismatch");
    if (a.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < a.size(); ++i) hits += (a[i] < a_max && b[i] < b_max) ? 1 : 0;
    return double(hits) / double(a.size());
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw contract_violation("spearman: length mismatch");
    if (x.size() < 2) throw contract_violation("spearman: need at least 2 samples");
    const std::vector<double> rx = ranks(x), ry = ranks(y);
    return pearson(rx, ry);
}

double mean(std::span<const double> x) {
    if (x.empty()) throw contract_violation("mean: empty data");
    double s = 0.0;
    for (double v : x) s += v;
    return s / double(x.size());
}

double stddev(std::span<const double> x) {
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / double(x.size()));
}

}  // namespace otd
