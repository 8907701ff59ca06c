#ifndef OTD_ENGINE_HPP
#define OTD_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "otd/dynsys.hpp"
#include "otd/integrators/rk54.hpp"
#include "otd/numerics/dense_matrix.hpp"

namespace otd {

/// r orthonormal tangent-space modes sharing the state's flat representation.
class OtdBasis {
  public:
    OtdBasis() = default;
    OtdBasis(std::size_t r, std::size_t dim) : r_(r), dim_(dim), data_(r * dim, 0.0) {}
    static OtdBasis from_modes(const std::vector<std::vector<double>>& modes);

    std::size_t r() const { return r_; }
    std::size_t dim() const { return dim_; }
    std::span<double> mode(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
    std::span<const double> mode(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
    std::span<const double> flat() const { return data_; }
    std::span<double> flat() { return data_; }

    /// max |<v_i, v_j> - delta_ij| under the system inner product.
    double gram_error(const DynamicalSystem& sys) const;

    /// Modified Gram-Schmidt under the system inner product, in place.
    void reorthonormalize(const DynamicalSystem& sys);

    double last_reorthonormalization_time = 0.0;

  private:
    std::size_t r_ = 0, dim_ = 0;
    std::vector<double> data_;
};

/// L_r = V' L_u V restricted to the basis, its symmetric part, and the
/// descending eigenvalues of S_r.
struct ReducedOperator {
    DenseMatrix L_r;
    DenseMatrix S_r;
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;  // columns, paired with eigenvalues
    double time = 0.0;
};

/// Right-hand side of the mode equations
///   v_i' = L_u v_i - sum_k <L_u v_i, v_k> v_k
/// for the state u at time t. Convenience entry point for tests; the coupled
/// integration path batches this computation internally.
std::vector<std::vector<double>> otd_rhs(const DynamicalSystem& sys, double t,
                                         std::span<const double> u, const OtdBasis& basis,
                                         SystemWorkspace& ws);

ReducedOperator reduced_operator(const DynamicalSystem& sys, double t,
                                 std::span<const double> u, const OtdBasis& basis,
                                 SystemWorkspace& ws);

enum class Stepper { rk54, etd2 };

struct EvolveOptions {
    double t0 = 0.0;
    double t1 = 0.0;
    double emit_dt = 0.1;
    double reorth_dt = 1.0;
    // Records before this time are computed but not emitted (spin-up discard).
    double emit_from = -std::numeric_limits<double>::infinity();
    StepControl ctrl;
    Stepper stepper = Stepper::rk54;
    double etd_dt = 0.025;  // emit_dt and reorth_dt must be multiples
    bool freeze_state = false;  // hold u fixed, evolve modes only (rk54 path)
    // Probe solution of the reduced equation eta' = L_r eta, renormalized at
    // the reorth cadence so window-relative growth can be read off directly.
    std::vector<double> eta0;
    // Extra tangent vectors evolved by the full linearized equation
    // v' = L_u v (no projection, no renormalization).
    std::vector<std::vector<double>> passengers0;
    double gram_abort_tol = 1e-3;
    // Componentwise perturbation added to every mode at each reorthonormalization,
    // drawn uniformly from [-mode_noise, mode_noise] and followed by Gram-Schmidt.
    // Keeps a floor under mode components that exact arithmetic would otherwise
    // pin to an invariant subspace of the tangent flow; the state is untouched.
    double mode_noise = 0.0;
    std::uint64_t mode_noise_seed = 0;
};

struct EmitContext {
    double t;
    std::span<const double> u;
    const OtdBasis& basis;
    const ReducedOperator& rop;
    std::span<const double> observables;
    std::span<const double> tangent_observables;  // of mode 0; empty if none
    double gram_error;
    std::span<const double> eta;   // empty when not enabled
    double eta_norm;               // Euclidean |eta| before any renormalization
    std::vector<std::span<const double>> passengers;
};

using EmitFn = std::function<void(const EmitContext&)>;

struct EvolveResult {
    double t;
    std::vector<double> u;
    OtdBasis basis;
    std::vector<double> eta;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
    std::size_t n_emitted = 0;
};

/// Integrate state and modes as one coupled system, re-orthonormalizing every
/// reorth_dt and emitting records at multiples of emit_dt. Throws
/// blow_up_error / stiffness_error on integration failure and
/// orthonormality_error when the basis Gram error exceeds gram_abort_tol.
EvolveResult evolve_coupled(const DynamicalSystem& sys, std::span<const double> u0,
                            const OtdBasis& basis0, const EvolveOptions& opt,
                            const EmitFn& emit);

/// Two-sided exponential growth check on the probe solution. Assumes eta was
/// renormalized at multiples of `T` from times.front() (as evolve_coupled
/// does when reorth_dt == T), so within each window the recorded |eta| is
/// already relative to the window start. For each window the observed growth
/// must satisfy
///   exp(lambda_min T) - slack <= ratio <= exp(lambda_max T) + slack
/// with lambda extremes taken over the window's emission samples.
struct GrowthWindow {
    double t_start, t_end;
    double lambda_min, lambda_max;
    double ratio;
    bool ok;
};

std::vector<GrowthWindow> growth_bound_check(std::span<const double> times,
                                             const std::vector<std::vector<double>>& lambdas,
                                             std::span<const double> eta_norms, double T,
                                             double slack = 1e-6);

}  // namespace otd

#endif
