#include "otd/dynsys.hpp"

#include "otd/errors.hpp"

namespace otd {

void DynamicalSystem::rhs_nonstiff(double, std::span<const double>, std::span<double>,
                                   SystemWorkspace&) const {
    throw contract_violation(name() + ": no stiff/nonstiff splitting available");
}

void DynamicalSystem::apply_linearized_nonstiff(std::span<const double>, std::span<double>,
                                                SystemWorkspace&) const {
    throw contract_violation(name() + ": no stiff/nonstiff splitting available");
}

void eval_linearized(const DynamicalSystem& sys, double t, std::span<const double> u,
                     std::span<const double> v, std::span<double> out, SystemWorkspace& ws) {
    sys.prepare_linearization(t, u, ws);
    sys.apply_linearized(v, out, ws);
}

}  // namespace otd
