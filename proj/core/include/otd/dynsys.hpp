#ifndef OTD_DYNSYS_HPP
#define OTD_DYNSYS_HPP

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace otd {

/// Per-trajectory mutable scratch owned by the caller. Models downcast to
/// their own workspace type internally; a system object itself is immutable
/// after construction, so distinct trajectories may share it across threads
/// as long as each brings its own workspace.
struct SystemWorkspace {
    virtual ~SystemWorkspace() = default;
};

/// A dynamical system u' = F(u) presented as a flat real vector of length
/// dim(). Complex fields store interleaved (re, im) pairs; "linear" below
/// means real-linear, since some linearizations involve the conjugate of the
/// tangent argument.
class DynamicalSystem {
  public:
    virtual ~DynamicalSystem() = default;

    virtual std::string name() const = 0;
    virtual std::size_t dim() const = 0;

    virtual std::unique_ptr<SystemWorkspace> make_workspace() const = 0;

    /// F(u) -> out. Throws blow_up_error on NaN/Inf in the result.
    virtual void rhs(double t, std::span<const double> u, std::span<double> out,
                     SystemWorkspace& ws) const = 0;

    /// Cache u-derived quantities in ws for a batch of apply_linearized
    /// calls. Must be re-run whenever u or t changes.
    virtual void prepare_linearization(double t, std::span<const double> u,
                                       SystemWorkspace& ws) const = 0;

    /// L_u v -> out for the state prepared in ws.
    virtual void apply_linearized(std::span<const double> v, std::span<double> out,
                                  SystemWorkspace& ws) const = 0;

    /// Inner product on the flat representation (Euclidean for ODEs, L2
    /// quadrature for fields, Re integral for complex fields).
    virtual double inner(std::span<const double> a, std::span<const double> b) const = 0;

    virtual const std::vector<std::string>& observable_names() const = 0;
    virtual void observables(double t, std::span<const double> u, std::span<double> out,
                             SystemWorkspace& ws) const = 0;

    /// Scalar diagnostics of a tangent vector (evaluated on the first OTD
    /// mode when records are emitted). Most models have none.
    virtual const std::vector<std::string>& tangent_observable_names() const {
        static const std::vector<std::string> none;
        return none;
    }
    virtual void tangent_observables(std::span<const double> /*v*/, std::span<double> /*out*/,
                                     SystemWorkspace& /*ws*/) const {}

    /// Exponential-integrator support. A stiff system whose linear part is
    /// diagonal over the state viewed as dim()/2 complex entries fills `lam`
    /// and returns true; the remainder functions below then supply
    /// N(u) = F(u) - diag(lam) u and its linearization without forming the
    /// difference numerically.
    virtual bool stiff_symbol(std::span<std::complex<double>> /*lam*/) const { return false; }
    virtual void rhs_nonstiff(double /*t*/, std::span<const double> /*u*/,
                              std::span<double> /*out*/, SystemWorkspace& /*ws*/) const;
    virtual void apply_linearized_nonstiff(std::span<const double> /*v*/,
                                           std::span<double> /*out*/,
                                           SystemWorkspace& /*ws*/) const;
};

/// Convenience: prepare + apply in one call (tests, one-off evaluations).
void eval_linearized(const DynamicalSystem& sys, double t, std::span<const double> u,
                     std::span<const double> v, std::span<double> out, SystemWorkspace& ws);

}  // namespace otd

#endif
