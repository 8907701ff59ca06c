#include "otd/integrators/etd2.hpp"

#include <cmath>

#include "otd/errors.hpp"

namespace otd {
namespace {

// Below this magnitude the direct formulas lose digits to cancellation, so
// switch to the Taylor series; at |z| = 1e-2 the truncation error of the
// terms kept is ~2e-16 relative.
constexpr double kSeriesCutoff = 1e-2;

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

std::complex<double> phi1(std::complex<double> z) {
    if (std::abs(z) < kSeriesCutoff) {
        std::complex<double> s = 1.0;
        s += z / 2.0;
        s += z * z / 6.0;
        s += z * z * z / 24.0;
        s += z * z * z * z / 120.0;
        s += z * z * z * z * z / 720.0;
        return s;
    }
    return (std::exp(z) - 1.0) / z;
}

std::complex<double> phi2(std::complex<double> z) {
    if (std::abs(z) < kSeriesCutoff) {
        std::complex<double> s = 0.5;
        s += z / 6.0;
        s += z * z / 24.0;
        s += z * z * z / 120.0;
        s += z * z * z * z / 720.0;
        s += z * z * z * z * z / 5040.0;
        return s;
    }
    return (std::exp(z) - 1.0 - z) / (z * z);
}

EtdCoefficients EtdCoefficients::build(std::span<const std::complex<double>> symbol, double dt) {
    if (!(dt > 0)) throw contract_violation("EtdCoefficients: dt must be positive");
    EtdCoefficients c;
    c.dt = dt;
    const std::size_t m = symbol.size();
    c.exp_lh.resize(m);
    c.hphi1.resize(m);
    c.hphi2.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::complex<double> z = symbol[i] * dt;
        c.exp_lh[i] = std::exp(z);
        c.hphi1[i] = dt * phi1(z);
        c.hphi2[i] = dt * phi2(z);
    }
    return c;
}

Etd2::Etd2(EtdCoefficients coef) : c_(std::move(coef)) {
    const std::size_t n = 2 * c_.exp_lh.size();
    n0_.resize(n);
    ystar_.resize(n);
    n1_.resize(n);
}

void Etd2::step(const NonlinFn& nonlinear, double& t, std::span<double> y) {
    const std::size_t m = c_.exp_lh.size();
    if (y.size() != 2 * m) throw contract_violation("Etd2: state size mismatch");

    nonlinear(t, y, n0_);
    if (!all_finite(n0_)) throw blow_up_error("etd2: non-finite nonlinear term", t);

    for (std::size_t i = 0; i < m; ++i) {
        const double yr = y[2 * i], yi = y[2 * i + 1];
        const double nr = n0_[2 * i], ni = n0_[2 * i + 1];
        const std::complex<double> e = c_.exp_lh[i], p1 = c_.hphi1[i];
        ystar_[2 * i] = e.real() * yr - e.imag() * yi + p1.real() * nr - p1.imag() * ni;
        ystar_[2 * i + 1] = e.real() * yi + e.imag() * yr + p1.real() * ni + p1.imag() * nr;
    }

    nonlinear(t + c_.dt, ystar_, n1_);
    if (!all_finite(n1_)) throw blow_up_error("etd2: non-finite nonlinear term", t + c_.dt);

    for (std::size_t i = 0; i < m; ++i) {
        const double dr = n1_[2 * i] - n0_[2 * i];
        const double di = n1_[2 * i + 1] - n0_[2 * i + 1];
        const std::complex<double> p2 = c_.hphi2[i];
        y[2 * i] = ystar_[2 * i] + p2.real() * dr - p2.imag() * di;
        y[2 * i + 1] = ystar_[2 * i + 1] + p2.real() * di + p2.imag() * dr;
    }
    t += c_.dt;
}

}  // namespace otd
