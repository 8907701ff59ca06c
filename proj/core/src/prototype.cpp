#include "otd/models/prototype.hpp"

#include <cmath>

#include "otd/errors.hpp"

namespace otd {
namespace {

struct PrototypeWorkspace : SystemWorkspace {
    double jac[3][3] = {};
};

void check3(std::span<const double> v, const char* what) {
    if (v.size() != 3) throw contract_violation(std::string(what) + ": expected length 3");
}

}  // namespace

void PrototypeParams::validate() const {
    if (!(alpha > 0 && omega > 0 && lambda > 0 && beta > 0))
        throw contract_violation("PrototypeParams: all parameters must be positive");
}

PrototypeSystem::PrototypeSystem(PrototypeParams p) : p_(p) { p_.validate(); }

std::unique_ptr<SystemWorkspace> PrototypeSystem::make_workspace() const {
    return std::make_unique<PrototypeWorkspace>();
}

void PrototypeSystem::rhs(double t, std::span<const double> u, std::span<double> out,
                          SystemWorkspace&) const {
    check3(u, "prototype rhs");
    const double x = u[0], y = u[1], z = u[2];
    const double a = p_.alpha, w = p_.omega, l = p_.lambda, b = p_.beta;
    out[0] = a * x + w * y + a * x * x + 2.0 * w * x * y + z * z;
    out[1] = -w * x + a * y - w * x * x + 2.0 * a * x * y;
    out[2] = -l * z - (l + b) * x * z;
    for (double v : out)
        if (!std::isfinite(v)) throw blow_up_error("prototype rhs: non-finite result", t);
}

DenseMatrix PrototypeSystem::jacobian(std::span<const double> u) const {
    check3(u, "prototype jacobian");
    const double x = u[0], y = u[1], z = u[2];
    const double a = p_.alpha, w = p_.omega, l = p_.lambda, b = p_.beta;
    DenseMatrix j(3, 3);
    j(0, 0) = a + 2.0 * a * x + 2.0 * w * y;
    j(0, 1) = w + 2.0 * w * x;
    j(0, 2) = 2.0 * z;
    j(1, 0) = -w - 2.0 * w * x + 2.0 * a * y;
    j(1, 1) = a + 2.0 * a * x;
    j(1, 2) = 0.0;
    j(2, 0) = -(l + b) * z;
    j(2, 1) = 0.0;
    j(2, 2) = -l - (l + b) * x;
    return j;
}

void PrototypeSystem::prepare_linearization(double, std::span<const double> u,
                                            SystemWorkspace& ws) const {
    auto& w = static_cast<PrototypeWorkspace&>(ws);
    const DenseMatrix j = jacobian(u);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) w.jac[r][c] = j(r, c);
}

void PrototypeSystem::apply_linearized(std::span<const double> v, std::span<double> out,
                                       SystemWorkspace& ws) const {
    check3(v, "prototype apply_linearized");
    const auto& w = static_cast<PrototypeWorkspace&>(ws);
    for (int r = 0; r < 3; ++r)
        out[r] = w.jac[r][0] * v[0] + w.jac[r][1] * v[1] + w.jac[r][2] * v[2];
}

double PrototypeSystem::inner(std::span<const double> a, std::span<const double> b) const {
    check3(a, "prototype inner");
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

const std::vector<std::string>& PrototypeSystem::observable_names() const {
    static const std::vector<std::string> names = {"x", "y", "z", "|z|"};
    return names;
}

void PrototypeSystem::observables(double, std::span<const double> u, std::span<double> out,
                                  SystemWorkspace&) const {
    out[0] = u[0];
    out[1] = u[1];
    out[2] = u[2];
    out[3] = std::abs(u[2]);
}

}  // namespace otd
