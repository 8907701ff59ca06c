#ifndef OTD_INTEGRATORS_ETD2_HPP
#define OTD_INTEGRATORS_ETD2_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace otd {

std::complex<double> phi1(std::complex<double> z);  // (e^z - 1)/z
std::complex<double> phi2(std::complex<double> z);  // (e^z - 1 - z)/z^2

/// Precomputed per-mode exponential weights for a fixed step h. hphi1/hphi2
/// carry the factor h so the step is three fused multiply-adds per mode.
struct EtdCoefficients {
    std::vector<std::complex<double>> exp_lh;
    std::vector<std::complex<double>> hphi1;
    std::vector<std::complex<double>> hphi2;
    double dt = 0.0;

    static EtdCoefficients build(std::span<const std::complex<double>> symbol, double dt);
};

using NonlinFn = std::function<void(double t, std::span<const double> y, std::span<double> out)>;

/// One-step ETDRK2 (exponential Euler predictor + phi2 corrector):
///   y* = e^{Lh} y_n + h phi1(Lh) N(y_n, t_n)
///   y_{n+1} = y* + h phi2(Lh) (N(y*, t_n + h) - N(y_n, t_n))
/// The state is a flat real vector of interleaved (re, im) pairs, one complex
/// entry per symbol mode. Exact for N = 0; reduces to Heun's method at L = 0.
class Etd2 {
  public:
    explicit Etd2(EtdCoefficients coef);

    void step(const NonlinFn& nonlinear, double& t, std::span<double> y);

    const EtdCoefficients& coefficients() const { return c_; }

  private:
    EtdCoefficients c_;
    std::vector<double> n0_, ystar_, n1_;
};

}  // namespace otd

#endif
