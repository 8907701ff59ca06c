#ifndef OTD_MODELS_MNLS_HPP
#define OTD_MODELS_MNLS_HPP

#include <complex>
#include <cstdint>

#include "otd/dynsys.hpp"
#include "otd/numerics/grid.hpp"

namespace otd {

struct MnlsParams {
    std::size_t n_modes = 2048;
    double length = 804.2477193189871;  // 256 pi
    double eps = 0.05;                  // envelope amplitude scale
    double sigma = 0.2;                 // spectral bandwidth of the initial sea

    void validate() const;
};

/// Benjamin-Feir index 2 sqrt(2) eps / sigma of the Gaussian initial spectrum.
double bfi(const MnlsParams& p);

/// Modified nonlinear Schrodinger envelope equation (deep water, one space
/// dimension, periodic):
///
///   u_t = -1/2 u_x - i/8 u_xx + 1/16 u_xxx - i/2 |u|^2 u
///         - 3/2 |u|^2 u_x - 1/4 u^2 conj(u)_x - i u Phi(u),
///   Phi(u) = -1/2 F^{-1}[ |q| F[|u|^2] ].
///
/// The state is the full complex spectrum of u (unnormalized DFT, DFT mode
/// order), flattened to interleaved doubles. Products are evaluated
/// pseudo-spectrally and 2/3-dealiased, including the transform inside Phi.
/// The linear dispersive part is diagonal in Fourier space with the purely
/// imaginary symbol i(-q/2 + q^2/8 - q^3/16), exposed for exponential
/// integrators; the remainder is available separately, and the linearization
/// about a prepared state is real-linear (it involves conj(v)).
class MnlsSystem : public DynamicalSystem {
  public:
    explicit MnlsSystem(MnlsParams p = {});

    std::string name() const override { return "mnls"; }
    std::size_t dim() const override { return 2 * grid_.n; }
    std::unique_ptr<SystemWorkspace> make_workspace() const override;

    void rhs(double t, std::span<const double> u, std::span<double> out,
             SystemWorkspace& ws) const override;
    void rhs_nonstiff(double t, std::span<const double> u, std::span<double> out,
                      SystemWorkspace& ws) const override;
    bool stiff_symbol(std::span<std::complex<double>> out) const override;

    void prepare_linearization(double t, std::span<const double> u,
                               SystemWorkspace& ws) const override;
    void apply_linearized(std::span<const double> v, std::span<double> out,
                          SystemWorkspace& ws) const override;
    void apply_linearized_nonstiff(std::span<const double> v, std::span<double> out,
                                   SystemWorkspace& ws) const override;

    /// Re integral(v conj(w)) dx: complex fields as a real inner product space.
    double inner(std::span<const double> a, std::span<const double> b) const override;

    const std::vector<std::string>& observable_names() const override;  // max_abs_u
    void observables(double t, std::span<const double> u, std::span<double> out,
                     SystemWorkspace& ws) const override;
    const std::vector<std::string>& tangent_observable_names() const override;  // max_abs_v1
    void tangent_observables(std::span<const double> v, std::span<double> out,
                             SystemWorkspace& ws) const override;

    const MnlsParams& params() const { return p_; }
    const SpectralGrid1D& grid() const { return grid_; }

    /// Gaussian random sea: |u_hat(q)| fixed by the spectrum
    /// N(q) = eps^2/(sigma sqrt(2 pi)) exp(-q^2/(2 sigma^2)), phases uniform.
    /// Different seeds change only the phases.
    std::vector<double> gaussian_initial_condition(std::uint64_t seed) const;

    /// sqrt(2/L) sin(2 pi x / L): unit-norm initial tangent direction.
    std::vector<double> first_tangent_mode() const;

    /// sqrt(2/L) sin(2 pi k x / L) for k = 1..r: orthonormal tangent set.
    std::vector<std::vector<double>> initial_tangent_modes(std::size_t r) const;

    /// Collocation values of u (inverse transform of the state).
    std::vector<std::complex<double>> to_physical(std::span<const double> u,
                                                  SystemWorkspace& ws) const;

    /// Wave elevation h(x, t) = Re[u(x) e^{i(x - t)}] at the grid nodes.
    std::vector<double> surface_elevation(std::span<const double> u, double t,
                                          SystemWorkspace& ws) const;

  private:
    MnlsParams p_;
    SpectralGrid1D grid_;
    std::vector<std::complex<double>> symbol_;  // i(-q/2 + q^2/8 - q^3/16)
};

}  // namespace otd

#endif
