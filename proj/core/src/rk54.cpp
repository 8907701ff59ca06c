#include "otd/integrators/rk54.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otd/errors.hpp"

namespace otd {
namespace {

// Dormand & Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
// 5th-order weights double as the last stage row (FSAL).
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b(5th) - b(4th), for the embedded error estimate.
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Stages k2..k7 given k1; y5 gets the solution, err the scaled estimate.
// k7 = f(t+dt, y5), reusable as the next step's k1.
void stages_from_k1(const RhsFn& rhs, double t, std::span<const double> y, double dt,
                    std::vector<double> (&k)[7], std::span<double> ytmp, std::span<double> y5,
                    std::span<double> err) {
    const std::size_t n = y.size();
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + dt * a21 * k[0][i];
    rhs(t + c2 * dt, ytmp, k[1]);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + dt * (a31 * k[0][i] + a32 * k[1][i]);
    rhs(t + c3 * dt, ytmp, k[2]);
    for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + dt * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
    rhs(t + c4 * dt, ytmp, k[3]);
    for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + dt * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]);
    rhs(t + c5 * dt, ytmp, k[4]);
    for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + dt * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] +
                               a65 * k[4][i]);
    rhs(t + dt, ytmp, k[5]);
    for (std::size_t i = 0; i < n; ++i)
        y5[i] = y[i] + dt * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] +
                             b6 * k[5][i]);
    rhs(t + dt, y5, k[6]);
    for (std::size_t i = 0; i < n; ++i)
        err[i] = dt * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] +
                       e6 * k[5][i] + e7 * k[6][i]);
}

}  // namespace

void StepControl::validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0))
        throw contract_violation("StepControl: tolerances must be positive");
    if (!(0 < dt_min && dt_min <= dt_init && dt_init <= dt_max))
        throw contract_violation("StepControl: need 0 < dt_min <= dt_init <= dt_max");
    if (!(safety > 0 && safety < 1))
        throw contract_violation("StepControl: safety must lie in (0, 1)");
}

void dopri5_fixed_step(const RhsFn& rhs, double t, std::span<const double> y, double dt,
                       std::span<double> y5, std::span<double> err) {
    const std::size_t n = y.size();
    if (y5.size() != n || err.size() != n)
        throw contract_violation("dopri5_fixed_step: size mismatch");
    std::vector<double> k[7];
    for (auto& ki : k) ki.resize(n);
    std::vector<double> ytmp(n);
    rhs(t, y, k[0]);
    stages_from_k1(rhs, t, y, dt, k, ytmp, y5, err);
}

Rk54::Rk54(std::size_t dim, StepControl ctrl) : dim_(dim), ctrl_(ctrl) {
    ctrl_.validate();
    dt_prop_ = ctrl_.dt_init;
    for (auto& ki : k_) ki.resize(dim);
    ytmp_.resize(dim);
    ynew_.resize(dim);
    err_.resize(dim);
}

void Rk54::set_proposed_dt(double dt) {
    dt_prop_ = std::clamp(dt, ctrl_.dt_min, ctrl_.dt_max);
}

void Rk54::integrate_to(const RhsFn& rhs, double& t, std::span<double> y, double t_target) {
    if (y.size() != dim_) throw contract_violation("Rk54: state size mismatch");
    // Ignore sub-roundoff gaps so emission loops can chain targets safely.
    while (t_target - t > 1e-14 * std::max(1.0, std::abs(t_target))) {
        const bool clamped = dt_prop_ > t_target - t;
        const double dt = clamped ? (t_target - t) : dt_prop_;

        if (!have_fsal_) {
            rhs(t, y, k_[0]);
            have_fsal_ = true;
        }
        stages_from_k1(rhs, t, y, dt, k_, ytmp_, ynew_, err_);

        bool finite = all_finite(ynew_) && all_finite(err_);
        double err = 0.0;
        if (finite) {
            for (std::size_t i = 0; i < dim_; ++i) {
                const double scale =
                    ctrl_.abs_tol + ctrl_.rel_tol * std::max(std::abs(y[i]), std::abs(ynew_[i]));
                err = std::max(err, std::abs(err_[i]) / scale);
            }
        }

        if (finite && err <= 1.0) {
            t += dt;
            std::copy(ynew_.begin(), ynew_.end(), y.begin());
            std::swap(k_[0], k_[6]);  // FSAL
            ++n_accepted_;
            const double fac =
                err > 0 ? std::clamp(ctrl_.safety * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
            // A boundary-clamped dt says nothing about accuracy headroom, so
            // grow from the controller's own proposal in that case.
            dt_prop_ = std::clamp((clamped ? dt_prop_ : dt * fac), ctrl_.dt_min, ctrl_.dt_max);
        } else {
            ++n_rejected_;
            double fac = 0.2;
            if (finite) fac = std::clamp(ctrl_.safety * std::pow(err, -0.2), 0.2, 1.0);
            const double dt_new = dt * fac;
            if (dt_new < ctrl_.dt_min) {
                if (!finite) throw blow_up_error("rk54: non-finite state", t);
                throw stiffness_error(
                    "rk54: step size underflow (dt " + std::to_string(dt_new) + " < dt_min)", t);
            }
            dt_prop_ = dt_new;
        }
    }
    t = t_target;
}

}  // namespace otd
