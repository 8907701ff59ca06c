#ifndef OTD_MODELS_KOLMOGOROV_HPP
#define OTD_MODELS_KOLMOGOROV_HPP

#include <complex>
#include <cstdint>

#include "otd/dynsys.hpp"
#include "otd/numerics/grid.hpp"

namespace otd {

struct KolmogorovParams {
    std::size_t grid_n = 128;
    double Re = 40.0;
    int forcing_n = 4;

    void validate() const;
};

struct FlowDiagnostics {
    double E, D, I;
};

/// Incompressible Navier-Stokes on the 2 pi torus with forcing sin(n y) e1,
/// kept in velocity form with an explicit modewise Leray projection:
///   u' = P(-u . grad u + nu lap u + f),     nu = 1/Re.
///
/// The state is the pair of r2c half spectra (unnormalized DFT, ky >= 0
/// stored), flattened to interleaved doubles: [ux_hat | uy_hat]. States and
/// tangents are zero-mean, divergence-free and 2/3-dealiased; every operation
/// here preserves all three, and advection is evaluated in divergence form
/// (equal to the advective form for dealiased divergence-free fields).
class KolmogorovSystem : public DynamicalSystem {
  public:
    explicit KolmogorovSystem(KolmogorovParams p = {});

    std::string name() const override { return "kolmogorov"; }
    std::size_t dim() const override { return 4 * half_; }
    std::unique_ptr<SystemWorkspace> make_workspace() const override;

    void rhs(double t, std::span<const double> u, std::span<double> out,
             SystemWorkspace& ws) const override;
    void prepare_linearization(double t, std::span<const double> u,
                               SystemWorkspace& ws) const override;
    void apply_linearized(std::span<const double> v, std::span<double> out,
                          SystemWorkspace& ws) const override;

    /// L2 inner product integral(a . b) dx over the torus (no 1/L^2 factor).
    double inner(std::span<const double> a, std::span<const double> b) const override;

    const std::vector<std::string>& observable_names() const override;  // E, D, I
    void observables(double t, std::span<const double> u, std::span<double> out,
                     SystemWorkspace& ws) const override;

    const KolmogorovParams& params() const { return p_; }
    const SpectralGrid2D& grid() const { return grid_; }

    /// E = (1/2L^2) int |u|^2, D = (nu/L^2) int |omega|^2, I = (1/L^2) int u.f.
    FlowDiagnostics diagnostics(std::span<const double> u) const;

    std::vector<double> laminar_state() const;   // (Re/n^2) sin(n y) e1
    std::vector<double> forcing_state() const;   // sin(n y) e1

    /// Random-phase field with |u_hat(k)| ~ |k| exp(-|k|^2/8), divergence
    /// free, zero mean, rescaled so E = energy_scale. Bitwise deterministic
    /// per seed.
    std::vector<double> random_initial_condition(double energy_scale, std::uint64_t seed) const;

    /// v_k = (1/(pi sqrt 2)) (sin(k y), 0), k = 1..r: orthonormal in L2,
    /// divergence free.
    std::vector<std::vector<double>> otd_initial_modes(std::size_t r) const;

    /// Collocation samples, layout [component][ix][iy] (snapshot payload).
    void to_physical(std::span<const double> u, std::span<double> phys,
                     SystemWorkspace& ws) const;
    std::vector<double> from_physical(std::span<const double> phys, SystemWorkspace& ws) const;

    /// max_k |k . u_hat(k)| over stored modes (spectral divergence).
    double max_divergence(std::span<const double> u) const;

  private:
    KolmogorovParams p_;
    SpectralGrid2D grid_;
    std::size_t n_ = 0, hcols_ = 0, half_ = 0;  // grid n, n/2+1, n*(n/2+1)
    double nu_ = 0.0;
    std::vector<std::complex<double>> forcing_x_;  // half spectrum of f_x
    std::vector<std::uint8_t> mask_;               // 2/3 mask over the half spectrum
    std::vector<double> weight_;                   // 1 or 2: implied-conjugate multiplicity
};

}  // namespace otd

#endif
