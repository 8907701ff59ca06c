#include "otd/models/mnls.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

#include "otd/errors.hpp"
#include "otd/numerics/fft.hpp"
#include "otd/numerics/rng.hpp"

namespace otd {

namespace {

using cd = std::complex<double>;

struct MnlsWorkspace final : SystemWorkspace {
    explicit MnlsWorkspace(std::size_t n)
        : s1(n), s2(n), fa(n), fb(n), fc(n), fd(n), pu(n), pux(n), pphi(n) {}

    fft::AlignedArray<cd> s1, s2;          // spectral scratch
    fft::AlignedArray<cd> fa, fb, fc, fd;  // physical scratch
    fft::AlignedArray<cd> pu, pux, pphi;   // prepared u, u_x, Phi(u)
    bool prepared = false;
};

MnlsWorkspace& cast_ws(SystemWorkspace& ws) { return static_cast<MnlsWorkspace&>(ws); }

inline cd load(std::span<const double> s, std::size_t j) { return {s[2 * j], s[2 * j + 1]}; }
inline void store(std::span<double> s, std::size_t j, cd z) {
    s[2 * j] = z.real();
    s[2 * j + 1] = z.imag();
}

// Stage the interleaved span into an aligned buffer and invert.
void spectrum_to_physical(const SpectralGrid1D& g, std::span<const double> s,
                          fft::AlignedArray<cd>& stage, cd* phys) {
    std::memcpy(static_cast<void*>(stage.data()), s.data(), 2 * g.n * sizeof(double));
    fft::c2c_inverse_1d(g.n, stage.data(), phys);
}

// Same, differentiated: multiply by iq before inverting.
void derivative_to_physical(const SpectralGrid1D& g, std::span<const double> s,
                            fft::AlignedArray<cd>& stage, cd* phys) {
    for (std::size_t j = 0; j < g.n; ++j) stage[j] = cd(0.0, g.q[j]) * load(s, j);
    fft::c2c_inverse_1d(g.n, stage.data(), phys);
}

}  // namespace

void MnlsParams::validate() const {
    detail::check_grid_size(n_modes, "MnlsParams");
    if (!(length > 0.0)) throw contract_violation("MnlsParams: length must be positive");
    if (!(eps > 0.0)) throw contract_violation("MnlsParams: eps must be positive");
    if (!(sigma > 0.0)) throw contract_violation("MnlsParams: sigma must be positive");
}

double bfi(const MnlsParams& p) {
    p.validate();
    return 2.0 * std::sqrt(2.0) * p.eps / p.sigma;
}

MnlsSystem::MnlsSystem(MnlsParams p) : p_(p) {
    p_.validate();
    grid_ = SpectralGrid1D(p_.n_modes, p_.length);
    symbol_.resize(grid_.n);
    for (std::size_t j = 0; j < grid_.n; ++j) {
        const double q = grid_.q[j];
        symbol_[j] = cd(0.0, -q / 2.0 + q * q / 8.0 - q * q * q / 16.0);
    }
}

std::unique_ptr<SystemWorkspace> MnlsSystem::make_workspace() const {
    return std::make_unique<MnlsWorkspace>(grid_.n);
}

bool MnlsSystem::stiff_symbol(std::span<cd> out) const {
    if (out.size() != grid_.n)
        throw contract_violation("MnlsSystem::stiff_symbol: need one slot per mode");
    std::copy(symbol_.begin(), symbol_.end(), out.begin());
    return true;
}

void MnlsSystem::rhs_nonstiff(double t, std::span<const double> u, std::span<double> out,
                              SystemWorkspace& ws0) const {
    if (u.size() != dim() || out.size() != dim())
        throw contract_violation("MnlsSystem::rhs_nonstiff: size mismatch");
    auto& ws = cast_ws(ws0);
    const std::size_t n = grid_.n;

    spectrum_to_physical(grid_, u, ws.s1, ws.fa.data());    // u
    derivative_to_physical(grid_, u, ws.s1, ws.fb.data());  // u_x

    for (std::size_t j = 0; j < n; ++j) ws.fc[j] = cd(std::norm(ws.fa[j]), 0.0);  // |u|^2
    fft::c2c_forward_1d(n, ws.fc.data(), ws.s1.data());
    for (std::size_t j = 0; j < n; ++j) {
        const double aq = grid_.dealias[j] ? std::abs(grid_.q[j]) : 0.0;
        ws.s2[j] = aq * ws.s1[j];
    }
    fft::c2c_inverse_1d(n, ws.s2.data(), ws.fd.data());  // F^{-1}[|q| F[|u|^2]]

    const cd ihalf(0.0, 0.5), iunit(0.0, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        const cd uu = ws.fa[j], ux = ws.fb[j];
        const double m = ws.fc[j].real();
        const cd phi = -0.5 * ws.fd[j];
        ws.fc[j] = -ihalf * m * uu - 1.5 * m * ux - 0.25 * uu * uu * std::conj(ux) -
                   iunit * uu * phi;
    }
    fft::c2c_forward_1d(n, ws.fc.data(), ws.s1.data());

    bool finite = true;
    for (std::size_t j = 0; j < n; ++j) {
        const cd z = grid_.dealias[j] ? ws.s1[j] : cd(0.0, 0.0);
        store(out, j, z);
        finite = finite && std::isfinite(z.real()) && std::isfinite(z.imag());
    }
    if (!finite) throw blow_up_error("MnlsSystem::rhs_nonstiff: non-finite tendency", t);
}

void MnlsSystem::rhs(double t, std::span<const double> u, std::span<double> out,
                     SystemWorkspace& ws) const {
    rhs_nonstiff(t, u, out, ws);
    for (std::size_t j = 0; j < grid_.n; ++j) store(out, j, load(out, j) + symbol_[j] * load(u, j));
}

void MnlsSystem::prepare_linearization(double t, std::span<const double> u,
                                       SystemWorkspace& ws0) const {
    (void)t;
    if (u.size() != dim())
        throw contract_violation("MnlsSystem::prepare_linearization: size mismatch");
    auto& ws = cast_ws(ws0);
    const std::size_t n = grid_.n;

    spectrum_to_physical(grid_, u, ws.s1, ws.pu.data());
    derivative_to_physical(grid_, u, ws.s1, ws.pux.data());

    for (std::size_t j = 0; j < n; ++j) ws.fc[j] = cd(std::norm(ws.pu[j]), 0.0);
    fft::c2c_forward_1d(n, ws.fc.data(), ws.s1.data());
    for (std::size_t j = 0; j < n; ++j) {
        const double aq = grid_.dealias[j] ? std::abs(grid_.q[j]) : 0.0;
        ws.s2[j] = aq * ws.s1[j];
    }
    fft::c2c_inverse_1d(n, ws.s2.data(), ws.pphi.data());
    for (std::size_t j = 0; j < n; ++j) ws.pphi[j] *= -0.5;
    ws.prepared = true;
}

void MnlsSystem::apply_linearized_nonstiff(std::span<const double> v, std::span<double> out,
                                           SystemWorkspace& ws0) const {
    if (v.size() != dim() || out.size() != dim())
        throw contract_violation("MnlsSystem::apply_linearized_nonstiff: size mismatch");
    auto& ws = cast_ws(ws0);
    if (!ws.prepared)
        throw contract_violation("MnlsSystem::apply_linearized_nonstiff: prepare first");
    const std::size_t n = grid_.n;

    spectrum_to_physical(grid_, v, ws.s1, ws.fa.data());    // v
    derivative_to_physical(grid_, v, ws.s1, ws.fb.data());  // v_x

    // G[u conj(v) + v conj(u)], the variation of |u|^2 pushed through Phi.
    for (std::size_t j = 0; j < n; ++j)
        ws.fc[j] = cd(2.0 * (ws.pu[j] * std::conj(ws.fa[j])).real(), 0.0);
    fft::c2c_forward_1d(n, ws.fc.data(), ws.s1.data());
    for (std::size_t j = 0; j < n; ++j) {
        const double aq = grid_.dealias[j] ? std::abs(grid_.q[j]) : 0.0;
        ws.s2[j] = aq * ws.s1[j];
    }
    fft::c2c_inverse_1d(n, ws.s2.data(), ws.fd.data());

    const cd ihalf(0.0, 0.5), iunit(0.0, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        const cd uu = ws.pu[j], ux = ws.pux[j], phi = ws.pphi[j];
        const cd vv = ws.fa[j], vx = ws.fb[j];
        const double m = std::norm(uu);
        ws.fc[j] = -ihalf * (2.0 * m * vv + uu * uu * std::conj(vv)) -
                   1.5 * (m * vx + 2.0 * (uu * std::conj(vv)).real() * ux) -
                   0.25 * (2.0 * uu * vv * std::conj(ux) + uu * uu * std::conj(vx)) +
                   ihalf * uu * ws.fd[j] - iunit * vv * phi;
    }
    fft::c2c_forward_1d(n, ws.fc.data(), ws.s1.data());
    for (std::size_t j = 0; j < n; ++j)
        store(out, j, grid_.dealias[j] ? ws.s1[j] : cd(0.0, 0.0));
}

void MnlsSystem::apply_linearized(std::span<const double> v, std::span<double> out,
                                  SystemWorkspace& ws) const {
    apply_linearized_nonstiff(v, out, ws);
    for (std::size_t j = 0; j < grid_.n; ++j) store(out, j, load(out, j) + symbol_[j] * load(v, j));
}

double MnlsSystem::inner(std::span<const double> a, std::span<const double> b) const {
    if (a.size() != dim() || b.size() != dim())
        throw contract_violation("MnlsSystem::inner: size mismatch");
    // Parseval: integral(v conj(w)) = (L/n^2) sum v_hat conj(w_hat); the real
    // part is a plain dot product on the interleaved layout.
    double acc = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) acc += a[t] * b[t];
    return acc * grid_.length / (double(grid_.n) * double(grid_.n));
}

const std::vector<std::string>& MnlsSystem::observable_names() const {
    static const std::vector<std::string> names = {"max_abs_u"};
    return names;
}

void MnlsSystem::observables(double t, std::span<const double> u, std::span<double> out,
                             SystemWorkspace& ws0) const {
    (void)t;
    if (out.size() != 1) throw contract_violation("MnlsSystem::observables: need 1 slot");
    auto& ws = cast_ws(ws0);
    spectrum_to_physical(grid_, u, ws.s1, ws.fa.data());
    double worst = 0.0;
    for (std::size_t j = 0; j < grid_.n; ++j) worst = std::max(worst, std::abs(ws.fa[j]));
    out[0] = worst;
}

const std::vector<std::string>& MnlsSystem::tangent_observable_names() const {
    static const std::vector<std::string> names = {"max_abs_v1"};
    return names;
}

void MnlsSystem::tangent_observables(std::span<const double> v, std::span<double> out,
                                     SystemWorkspace& ws0) const {
    if (out.size() != 1) throw contract_violation("MnlsSystem::tangent_observables: need 1 slot");
    auto& ws = cast_ws(ws0);
    spectrum_to_physical(grid_, v, ws.s1, ws.fa.data());
    double worst = 0.0;
    for (std::size_t j = 0; j < grid_.n; ++j) worst = std::max(worst, std::abs(ws.fa[j]));
    out[0] = worst;
}

std::vector<double> MnlsSystem::gaussian_initial_condition(std::uint64_t seed) const {
    SplitMix64 rng(seed);
    std::vector<double> u(dim(), 0.0);
    const double two_pi = 2.0 * std::numbers::pi;
    const double nn = double(grid_.n);
    for (std::size_t j = 0; j < grid_.n; ++j) {
        const double theta = rng.next_angle();  // drawn for every mode: stable stream
        if (!grid_.dealias[j]) continue;
        const double q = grid_.q[j];
        const double spec = p_.eps * p_.eps / (p_.sigma * std::sqrt(two_pi)) *
                            std::exp(-q * q / (2.0 * p_.sigma * p_.sigma));
        const double amp = nn * std::sqrt(2.0 * (two_pi / p_.length) * spec);
        store(u, j, amp * cd(std::cos(theta), std::sin(theta)));
    }
    return u;
}

std::vector<double> MnlsSystem::first_tangent_mode() const {
    return initial_tangent_modes(1)[0];
}

std::vector<std::vector<double>> MnlsSystem::initial_tangent_modes(std::size_t r) const {
    if (r == 0 || r > grid_.n / 3)
        throw contract_violation("initial_tangent_modes: need 1 <= r <= n_modes/3");
    // sin(2 pi k x / L) splits into the +-k modes with coefficients -+ i/2.
    const double amp = 0.5 * double(grid_.n) * std::sqrt(2.0 / p_.length);
    std::vector<std::vector<double>> modes(r, std::vector<double>(dim(), 0.0));
    for (std::size_t k = 1; k <= r; ++k) {
        store(modes[k - 1], k, cd(0.0, -amp));
        store(modes[k - 1], grid_.n - k, cd(0.0, amp));
    }
    return modes;
}

std::vector<cd> MnlsSystem::to_physical(std::span<const double> u, SystemWorkspace& ws0) const {
    if (u.size() != dim()) throw contract_violation("MnlsSystem::to_physical: size mismatch");
    auto& ws = cast_ws(ws0);
    spectrum_to_physical(grid_, u, ws.s1, ws.fa.data());
    return std::vector<cd>(ws.fa.data(), ws.fa.data() + grid_.n);
}

std::vector<double> MnlsSystem::surface_elevation(std::span<const double> u, double t,
                                                  SystemWorkspace& ws0) const {
    if (u.size() != dim()) throw contract_violation("MnlsSystem::surface_elevation: size mismatch");
    auto& ws = cast_ws(ws0);
    spectrum_to_physical(grid_, u, ws.s1, ws.fa.data());
    std::vector<double> h(grid_.n);
    for (std::size_t j = 0; j < grid_.n; ++j) {
        const double ph = grid_.x[j] - t;
        h[j] = (ws.fa[j] * cd(std::cos(ph), std::sin(ph))).real();
    }
    return h;
}

}  // namespace otd
