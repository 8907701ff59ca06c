#ifndef OTD_MODELS_PROTOTYPE_HPP
#define OTD_MODELS_PROTOTYPE_HPP

#include <numbers>

#include "otd/dynsys.hpp"
#include "otd/numerics/dense_matrix.hpp"

namespace otd {

struct PrototypeParams {
    double alpha = 0.01;
    double omega = 2.0 * std::numbers::pi;
    double lambda = 0.1;
    double beta = 0.1;

    void validate() const;  // all strictly positive
};

/// Three-dimensional slow-fast system with two fixed points, u1 = (0,0,0)
/// and u2 = (-1,0,0), whose trajectories linger near the z = 0 plane and
/// intermittently burst in z:
///   x' = a x + w y + a x^2 + 2 w x y + z^2
///   y' = -w x + a y - w x^2 + 2 a x y
///   z' = -l z - (l + b) x z
class PrototypeSystem : public DynamicalSystem {
  public:
    explicit PrototypeSystem(PrototypeParams p = {});

    std::string name() const override { return "prototype"; }
    std::size_t dim() const override { return 3; }
    std::unique_ptr<SystemWorkspace> make_workspace() const override;

    void rhs(double t, std::span<const double> u, std::span<double> out,
             SystemWorkspace& ws) const override;
    void prepare_linearization(double t, std::span<const double> u,
                               SystemWorkspace& ws) const override;
    void apply_linearized(std::span<const double> v, std::span<double> out,
                          SystemWorkspace& ws) const override;
    double inner(std::span<const double> a, std::span<const double> b) const override;

    const std::vector<std::string>& observable_names() const override;
    void observables(double t, std::span<const double> u, std::span<double> out,
                     SystemWorkspace& ws) const override;

    const PrototypeParams& params() const { return p_; }

    /// Analytic Jacobian at u; exposed for direct tests against the
    /// fixed-point matrices and finite differences.
    DenseMatrix jacobian(std::span<const double> u) const;

  private:
    PrototypeParams p_;
};

}  // namespace otd

#endif
