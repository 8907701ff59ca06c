#ifndef OTD_INTEGRATORS_RK54_HPP
#define OTD_INTEGRATORS_RK54_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace otd {

using RhsFn = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct StepControl {
    double rel_tol = 1e-5;
    double abs_tol = 1e-5;
    double dt_init = 1e-3;
    double dt_min = 1e-12;
    double dt_max = 1.0;
    double safety = 0.9;

    void validate() const;  // throws contract_violation on bad ranges
};

/// One fixed Dormand-Prince 5(4) step. y5 receives the 5th-order solution,
/// err the embedded per-component error estimate (already scaled by dt).
/// Exposed for convergence-order tests; production stepping goes through Rk54.
void dopri5_fixed_step(const RhsFn& rhs, double t, std::span<const double> y, double dt,
                       std::span<double> y5, std::span<double> err);

/// Adaptive embedded Runge-Kutta 5(4), Dormand-Prince coefficients, FSAL.
/// Acceptance requires the per-component error estimate to satisfy
/// |e_i| <= abs_tol + rel_tol*|y_i|; the next step size comes from the
/// elementary controller dt*safety*err^(-1/5) clamped to [0.2, 5] growth.
class Rk54 {
  public:
    Rk54(std::size_t dim, StepControl ctrl);

    /// Advance (t, y) to exactly t_target (never stepping past it).
    /// Throws stiffness_error when dt underflows dt_min, blow_up_error when
    /// the solution stops being finite.
    void integrate_to(const RhsFn& rhs, double& t, std::span<double> y, double t_target);

    /// Call after modifying y outside the integrator (re-orthonormalization):
    /// drops the first-same-as-last derivative cache.
    void notify_state_changed() { have_fsal_ = false; }

    double proposed_dt() const { return dt_prop_; }
    void set_proposed_dt(double dt);
    std::size_t accepted_steps() const { return n_accepted_; }
    std::size_t rejected_steps() const { return n_rejected_; }

  private:
    std::size_t dim_;
    StepControl ctrl_;
    double dt_prop_;
    bool have_fsal_ = false;
    std::size_t n_accepted_ = 0, n_rejected_ = 0;
    std::vector<double> k_[7];
    std::vector<double> ytmp_, ynew_, err_;
};

}  // namespace otd

#endif
