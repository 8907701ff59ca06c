#include "otd/models/kolmogorov.hpp"

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

struct KolmogorovWorkspace final : SystemWorkspace {
    explicit KolmogorovWorkspace(std::size_t n, std::size_t half)
        : spec(half), pa(n * n), pb(n * n), ux(n * n), uy(n * n), prod(n * n) {
        for (auto& q : qhat) q = fft::AlignedArray<cd>(half);
    }

    fft::AlignedArray<cd> spec;        // sacrificial c2r input / staging
    fft::AlignedArray<cd> qhat[4];     // product spectra
    fft::AlignedArray<double> pa, pb;  // physical scratch (rhs state, tangent)
    fft::AlignedArray<double> ux, uy;  // prepared physical velocity
    fft::AlignedArray<double> prod;    // physical product staging
    bool prepared = false;
};

KolmogorovWorkspace& cast_ws(SystemWorkspace& ws) {
    return static_cast<KolmogorovWorkspace&>(ws);
}

// Half-spectrum component view of the flat interleaved state.
inline cd load(std::span<const double> s, std::size_t comp, std::size_t half, std::size_t j) {
    const std::size_t b = 2 * (comp * half + j);
    return {s[b], s[b + 1]};
}
inline void store(std::span<double> s, std::size_t comp, std::size_t half, std::size_t j, cd z) {
    const std::size_t b = 2 * (comp * half + j);
    s[b] = z.real();
    s[b + 1] = z.imag();
}

// Unpack one spectral component into the sacrificial buffer and invert.
void component_to_physical(std::span<const double> s, std::size_t comp, std::size_t n,
                           std::size_t half, fft::AlignedArray<cd>& spec, double* phys) {
    const double* src = s.data() + 2 * comp * half;
    std::memcpy(static_cast<void*>(spec.data()), src, 2 * half * sizeof(double));
    fft::c2r_2d(n, spec.data(), phys);
}

void pointwise_product(const double* a, const double* b, double* out, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) out[i] = a[i] * b[i];
}

}  // namespace

void KolmogorovParams::validate() const {
    detail::check_grid_size(grid_n, "KolmogorovParams");
    if (!(Re > 0.0)) throw contract_violation("KolmogorovParams: Re must be positive");
    if (forcing_n < 1) throw contract_violation("KolmogorovParams: forcing_n must be >= 1");
    // The forcing must survive dealiasing with room for its first harmonics.
    if (std::size_t(forcing_n) > grid_n / 6)
        throw contract_violation("KolmogorovParams: forcing_n must be <= grid_n/6");
}

KolmogorovSystem::KolmogorovSystem(KolmogorovParams p) : p_(p) {
    p_.validate();
    grid_ = SpectralGrid2D(p_.grid_n, 2.0 * std::numbers::pi);
    n_ = grid_.n;
    hcols_ = grid_.half_ny();
    half_ = grid_.half_size();
    nu_ = 1.0 / p_.Re;

    mask_.assign(half_, 0);
    weight_.assign(half_, 0.0);
    for (std::size_t row = 0; row < n_; ++row) {
        for (std::size_t col = 0; col < hcols_; ++col) {
            const std::size_t j = grid_.half_index(row, col);
            mask_[j] = grid_.dealias_half(row, col) ? 1 : 0;
            weight_[j] = (col == 0 || col == n_ / 2) ? 1.0 : 2.0;
        }
    }

    // sin(n y) = (e^{i n y} - e^{-i n y}) / (2i); the stored half keeps +n.
    forcing_x_.assign(half_, cd(0.0, 0.0));
    const double nn = double(n_) * double(n_);
    forcing_x_[grid_.half_index(0, std::size_t(p_.forcing_n))] = cd(0.0, -0.5 * nn);
}

std::unique_ptr<SystemWorkspace> KolmogorovSystem::make_workspace() const {
    return std::make_unique<KolmogorovWorkspace>(n_, half_);
}

void KolmogorovSystem::rhs(double t, std::span<const double> u, std::span<double> out,
                           SystemWorkspace& ws0) const {
    (void)t;
    if (u.size() != dim() || out.size() != dim())
        throw contract_violation("KolmogorovSystem::rhs: state size mismatch");
    auto& ws = cast_ws(ws0);

    component_to_physical(u, 0, n_, half_, ws.spec, ws.pa.data());
    component_to_physical(u, 1, n_, half_, ws.spec, ws.pb.data());

    const std::size_t m = n_ * n_;
    pointwise_product(ws.pa.data(), ws.pa.data(), ws.prod.data(), m);
    fft::r2c_2d(n_, ws.prod.data(), ws.qhat[0].data());  // F[ux ux]
    pointwise_product(ws.pa.data(), ws.pb.data(), ws.prod.data(), m);
    fft::r2c_2d(n_, ws.prod.data(), ws.qhat[1].data());  // F[ux uy]
    pointwise_product(ws.pb.data(), ws.pb.data(), ws.prod.data(), m);
    fft::r2c_2d(n_, ws.prod.data(), ws.qhat[2].data());  // F[uy uy]

    const cd mi(0.0, -1.0);
    bool finite = true;
    for (std::size_t row = 0; row < n_; ++row) {
        const double kx = double(grid_.k_int[row]);
        for (std::size_t col = 0; col < hcols_; ++col) {
            const std::size_t j = grid_.half_index(row, col);
            const double ky = double(col);
            const double k2 = kx * kx + ky * ky;
            cd tx(0.0, 0.0), ty(0.0, 0.0);
            if (mask_[j]) {
                tx = mi * (kx * ws.qhat[0][j] + ky * ws.qhat[1][j]);
                ty = mi * (kx * ws.qhat[1][j] + ky * ws.qhat[2][j]);
            }
            tx += -nu_ * k2 * load(u, 0, half_, j) + forcing_x_[j];
            ty += -nu_ * k2 * load(u, 1, half_, j);
            if (k2 > 0.0) {
                const cd kdot = (kx * tx + ky * ty) / k2;
                tx -= kx * kdot;
                ty -= ky * kdot;
            } else {
                tx = ty = cd(0.0, 0.0);
            }
            store(out, 0, half_, j, tx);
            store(out, 1, half_, j, ty);
            finite = finite && std::isfinite(tx.real()) && std::isfinite(tx.imag()) &&
                     std::isfinite(ty.real()) && std::isfinite(ty.imag());
        }
    }
    if (!finite) throw blow_up_error("KolmogorovSystem::rhs: non-finite tendency", t);
}

void KolmogorovSystem::prepare_linearization(double t, std::span<const double> u,
                                             SystemWorkspace& ws0) const {
    (void)t;
    if (u.size() != dim())
        throw contract_violation("KolmogorovSystem::prepare_linearization: state size mismatch");
    auto& ws = cast_ws(ws0);
    component_to_physical(u, 0, n_, half_, ws.spec, ws.ux.data());
    component_to_physical(u, 1, n_, half_, ws.spec, ws.uy.data());
    ws.prepared = true;
}

void KolmogorovSystem::apply_linearized(std::span<const double> v, std::span<double> out,
                                        SystemWorkspace& ws0) const {
    if (v.size() != dim() || out.size() != dim())
        throw contract_violation("KolmogorovSystem::apply_linearized: size mismatch");
    auto& ws = cast_ws(ws0);
    if (!ws.prepared)
        throw contract_violation("KolmogorovSystem::apply_linearized: prepare_linearization first");

    component_to_physical(v, 0, n_, half_, ws.spec, ws.pa.data());  // vx
    component_to_physical(v, 1, n_, half_, ws.spec, ws.pb.data());  // vy

    const std::size_t m = n_ * n_;
    pointwise_product(ws.ux.data(), ws.pa.data(), ws.prod.data(), m);
    fft::r2c_2d(n_, ws.prod.data(), ws.qhat[0].data());  // F[ux vx]
    pointwise_product(ws.ux.data(), ws.pb.data(), ws.prod.data(), m);
    fft::r2c_2d(n_, ws.prod.data(), ws.qhat[1].data());  // F[ux vy]
    pointwise_product(ws.uy.data(), ws.pa.data(), ws.prod.data(), m);
    fft::r2c_2d(n_, ws.prod.data(), ws.qhat[2].data());  // F[uy vx]
    pointwise_product(ws.uy.data(), ws.pb.data(), ws.prod.data(), m);
    fft::r2c_2d(n_, ws.prod.data(), ws.qhat[3].data());  // F[uy vy]

    // -grad.(u x v + v x u) recombines the four product spectra:
    //   x: -i [2 kx F[ux vx] + ky (F[ux vy] + F[uy vx])]
    //   y: -i [kx (F[ux vy] + F[uy vx]) + 2 ky F[uy vy]]
    const cd mi(0.0, -1.0);
    for (std::size_t row = 0; row < n_; ++row) {
        const double kx = double(grid_.k_int[row]);
        for (std::size_t col = 0; col < hcols_; ++col) {
            const std::size_t j = grid_.half_index(row, col);
            const double ky = double(col);
            const double k2 = kx * kx + ky * ky;
            cd tx(0.0, 0.0), ty(0.0, 0.0);
            if (mask_[j]) {
                const cd cross = ws.qhat[1][j] + ws.qhat[2][j];
                tx = mi * (2.0 * kx * ws.qhat[0][j] + ky * cross);
                ty = mi * (kx * cross + 2.0 * ky * ws.qhat[3][j]);
            }
            tx += -nu_ * k2 * load(v, 0, half_, j);
            ty += -nu_ * k2 * load(v, 1, half_, j);
            if (k2 > 0.0) {
                const cd kdot = (kx * tx + ky * ty) / k2;
                tx -= kx * kdot;
                ty -= ky * kdot;
            } else {
                tx = ty = cd(0.0, 0.0);
            }
            store(out, 0, half_, j, tx);
            store(out, 1, half_, j, ty);
        }
    }
}

double KolmogorovSystem::inner(std::span<const double> a, std::span<const double> b) const {
    if (a.size() != dim() || b.size() != dim())
        throw contract_violation("KolmogorovSystem::inner: size mismatch");
    // Parseval with implied-conjugate weights: int a.b = (L^2/n^4) sum w Re(a b*).
    double acc = 0.0;
    for (std::size_t j = 0; j < half_; ++j) {
        const double w = weight_[j];
        const std::size_t bx = 2 * j, by = 2 * (half_ + j);
        acc += w * (a[bx] * b[bx] + a[bx + 1] * b[bx + 1] + a[by] * b[by] + a[by + 1] * b[by + 1]);
    }
    const double L = grid_.length;
    const double n4 = double(n_) * double(n_) * double(n_) * double(n_);
    return acc * L * L / n4;
}

const std::vector<std::string>& KolmogorovSystem::observable_names() const {
    static const std::vector<std::string> names = {"E", "D", "I"};
    return names;
}

void KolmogorovSystem::observables(double t, std::span<const double> u, std::span<double> out,
                                   SystemWorkspace& ws) const {
    (void)t;
    (void)ws;
    if (out.size() != 3) throw contract_violation("KolmogorovSystem::observables: need 3 slots");
    const FlowDiagnostics d = diagnostics(u);
    out[0] = d.E;
    out[1] = d.D;
    out[2] = d.I;
}

FlowDiagnostics KolmogorovSystem::diagnostics(std::span<const double> u) const {
    if (u.size() != dim()) throw contract_violation("KolmogorovSystem::diagnostics: size mismatch");
    const double n4 = double(n_) * double(n_) * double(n_) * double(n_);
    double e = 0.0, d = 0.0, i = 0.0;
    for (std::size_t row = 0; row < n_; ++row) {
        const double kx = double(grid_.k_int[row]);
        for (std::size_t col = 0; col < hcols_; ++col) {
            const std::size_t j = grid_.half_index(row, col);
            const double ky = double(col);
            const double w = weight_[j];
            const cd ax = load(u, 0, half_, j);
            const cd ay = load(u, 1, half_, j);
            e += w * (std::norm(ax) + std::norm(ay));
            const cd vort = cd(0.0, 1.0) * (kx * ay - ky * ax);
            d += w * std::norm(vort);
            i += w * (ax * std::conj(forcing_x_[j])).real();
        }
    }
    return {e / (2.0 * n4), nu_ * d / n4, i / n4};
}

std::vector<double> KolmogorovSystem::laminar_state() const {
    std::vector<double> u(dim(), 0.0);
    const double nn = double(n_) * double(n_);
    const double amp = p_.Re / (double(p_.forcing_n) * double(p_.forcing_n));
    // (Re/n^2) sin(n y) e1 balances forcing against viscosity exactly.
    store(u, 0, half_, grid_.half_index(0, std::size_t(p_.forcing_n)), cd(0.0, -0.5 * nn * amp));
    return u;
}

std::vector<double> KolmogorovSystem::forcing_state() const {
    std::vector<double> f(dim(), 0.0);
    for (std::size_t j = 0; j < half_; ++j) store(f, 0, half_, j, forcing_x_[j]);
    return f;
}

std::vector<double> KolmogorovSystem::random_initial_condition(double energy_scale,
                                                               std::uint64_t seed) const {
    if (!(energy_scale > 0.0))
        throw contract_violation("random_initial_condition: energy_scale must be positive");
    SplitMix64 rng(seed);
    std::vector<double> u(dim(), 0.0);

    // Random-phase streamfunction, conjugate symmetry imposed on the ky = 0
    // line, then u = (d psi/dy, -d psi/dx). Iteration order fixes the stream.
    for (std::size_t row = 0; row < n_; ++row) {
        const int kxi = grid_.k_int[row];
        for (std::size_t col = 0; col < hcols_; ++col) {
            if (!grid_.dealias_half(row, col)) continue;
            const double kx = double(kxi), ky = double(col);
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue;
            if (col == 0 && kxi < 0) continue;  // filled by the mirror below
            const double theta = rng.next_angle();
            const cd psi = std::exp(-k2 / 8.0) * cd(std::cos(theta), std::sin(theta));
            const std::size_t j = grid_.half_index(row, col);
            store(u, 0, half_, j, cd(0.0, ky) * psi);
            store(u, 1, half_, j, cd(0.0, -kx) * psi);
            if (col == 0 && kxi > 0) {
                const std::size_t jm = grid_.half_index(n_ - row, 0);
                store(u, 0, half_, jm, cd(0.0, 0.0));  // ky = 0 kills the x component
                store(u, 1, half_, jm, std::conj(cd(0.0, -kx) * psi));
            }
        }
    }

    const double e0 = diagnostics(u).E;
    if (!(e0 > 0.0)) throw contract_violation("random_initial_condition: degenerate draw");
    const double s = std::sqrt(energy_scale / e0);
    for (double& x : u) x *= s;
    return u;
}

std::vector<std::vector<double>> KolmogorovSystem::otd_initial_modes(std::size_t r) const {
    if (r == 0 || r > n_ / 6)
        throw contract_violation("otd_initial_modes: need 1 <= r <= grid_n/6");
    std::vector<std::vector<double>> modes(r, std::vector<double>(dim(), 0.0));
    const double nn = double(n_) * double(n_);
    const double amp = 1.0 / (std::numbers::pi * std::sqrt(2.0));
    for (std::size_t k = 1; k <= r; ++k)
        store(modes[k - 1], 0, half_, grid_.half_index(0, k), cd(0.0, -0.5 * nn * amp));
    return modes;
}

void KolmogorovSystem::to_physical(std::span<const double> u, std::span<double> phys,
                                   SystemWorkspace& ws0) const {
    if (u.size() != dim() || phys.size() != 2 * n_ * n_)
        throw contract_violation("KolmogorovSystem::to_physical: size mismatch");
    auto& ws = cast_ws(ws0);
    component_to_physical(u, 0, n_, half_, ws.spec, phys.data());
    component_to_physical(u, 1, n_, half_, ws.spec, phys.data() + n_ * n_);
}

std::vector<double> KolmogorovSystem::from_physical(std::span<const double> phys,
                                                    SystemWorkspace& ws0) const {
    if (phys.size() != 2 * n_ * n_)
        throw contract_violation("KolmogorovSystem::from_physical: size mismatch");
    auto& ws = cast_ws(ws0);
    std::memcpy(ws.pa.data(), phys.data(), n_ * n_ * sizeof(double));
    std::vector<double> u(dim(), 0.0);
    fft::r2c_2d(n_, ws.pa.data(), ws.spec.data());
    for (std::size_t j = 0; j < half_; ++j) store(u, 0, half_, j, ws.spec[j]);
    std::memcpy(ws.pa.data(), phys.data() + n_ * n_, n_ * n_ * sizeof(double));
    fft::r2c_2d(n_, ws.pa.data(), ws.spec.data());
    for (std::size_t j = 0; j < half_; ++j) store(u, 1, half_, j, ws.spec[j]);
    return u;
}

double KolmogorovSystem::max_divergence(std::span<const double> u) const {
    if (u.size() != dim())
        throw contract_violation("KolmogorovSystem::max_divergence: size mismatch");
    double worst = 0.0;
    for (std::size_t row = 0; row < n_; ++row) {
        const double kx = double(grid_.k_int[row]);
        for (std::size_t col = 0; col < hcols_; ++col) {
            const std::size_t j = grid_.half_index(row, col);
            const double ky = double(col);
            const cd div = kx * load(u, 0, half_, j) + ky * load(u, 1, half_, j);
            worst = std::max(worst, std::abs(div));
        }
    }
    return worst;
}

}  // namespace otd
