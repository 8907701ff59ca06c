#include "otd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <string>

#include "otd/errors.hpp"
#include "otd/integrators/etd2.hpp"
#include "otd/numerics/eigs.hpp"
#include "otd/numerics/gram_schmidt.hpp"
#include "otd/numerics/rng.hpp"

namespace otd {
namespace {

double gram_error_views(const std::vector<std::span<double>>& v, const DynamicalSystem& sys) {
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i; j < v.size(); ++j) {
            const double g = sys.inner(v[i], v[j]);
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace

OtdBasis OtdBasis::from_modes(const std::vector<std::vector<double>>& modes) {
    if (modes.empty()) return {};
    OtdBasis b(modes.size(), modes[0].size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (modes[i].size() != b.dim_)
            throw contract_violation("OtdBasis: modes differ in length");
        std::copy(modes[i].begin(), modes[i].end(), b.mode(i).begin());
    }
    return b;
}

double OtdBasis::gram_error(const DynamicalSystem& sys) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = i; j < r_; ++j) {
            const double g = sys.inner(mode(i), mode(j));
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

void OtdBasis::reorthonormalize(const DynamicalSystem& sys) {
    std::vector<std::span<double>> views;
    views.reserve(r_);
    for (std::size_t i = 0; i < r_; ++i) views.push_back(mode(i));
    modified_gram_schmidt(std::span<std::span<double>>(views),
                          [&](std::span<const double> a, std::span<const double> b) {
                              return sys.inner(a, b);
                          });
}

namespace {

// Shared machinery for the coupled state
//   Y = [ u | v_0 .. v_{r-1} | passengers | eta ].
// Owns the scratch for L_u v_i and the projection matrix M with
// M[i][k] = <L_u v_i, v_k>, i.e. M[i][k] = [L_r]_{k i}.
class CoupledEvaluator {
  public:
    CoupledEvaluator(const DynamicalSystem& sys, SystemWorkspace& ws, std::size_t r,
                     std::size_t n_pass, std::size_t n_eta, bool freeze)
        : sys_(sys), ws_(ws), d_(sys.dim()), r_(r), np_(n_pass), ne_(n_eta), freeze_(freeze) {
        lv_.assign(r_, std::vector<double>(d_));
        m_.assign(r_ * r_, 0.0);
        tmp_.assign(d_, 0.0);
    }

    std::size_t total_dim() const { return d_ * (1 + r_ + np_) + ne_; }
    std::size_t d() const { return d_; }

    std::span<const double> u(std::span<const double> y) const { return y.subspan(0, d_); }
    std::span<const double> mode(std::span<const double> y, std::size_t i) const {
        return y.subspan(d_ * (1 + i), d_);
    }
    std::span<double> mode(std::span<double> y, std::size_t i) const {
        return y.subspan(d_ * (1 + i), d_);
    }
    std::span<const double> passenger(std::span<const double> y, std::size_t p) const {
        return y.subspan(d_ * (1 + r_ + p), d_);
    }
    std::span<double> eta(std::span<double> y) const {
        return y.subspan(d_ * (1 + r_ + np_), ne_);
    }
    std::span<const double> eta(std::span<const double> y) const {
        return y.subspan(d_ * (1 + r_ + np_), ne_);
    }

    void set_symbol(std::vector<std::complex<double>> sym) { symbol_ = std::move(sym); }

    // Full coupled right-hand side (rk54 path).
    void full_rhs(double t, std::span<const double> y, std::span<double> dy) {
        auto uu = u(y);
        if (freeze_) {
            std::fill(dy.begin(), dy.begin() + d_, 0.0);
        } else {
            sys_.rhs(t, uu, dy.subspan(0, d_), ws_);
        }
        if (r_ + np_ > 0) sys_.prepare_linearization(t, uu, ws_);
        for (std::size_t i = 0; i < r_; ++i) sys_.apply_linearized(mode(y, i), lv_[i], ws_);
        project_modes(y, dy);
        for (std::size_t p = 0; p < np_; ++p)
            sys_.apply_linearized(passenger(y, p), dy.subspan(d_ * (1 + r_ + p), d_), ws_);
        eta_rhs(y, dy);
    }

    // Nonstiff remainder of the coupled right-hand side (etd2 path). The
    // projection term needs the full L_u v_i, reconstructed by adding the
    // diagonal stiff part back to the nonstiff application.
    void nonstiff_rhs(double t, std::span<const double> y, std::span<double> dy) {
        auto uu = u(y);
        sys_.rhs_nonstiff(t, uu, dy.subspan(0, d_), ws_);
        if (r_ + np_ > 0) sys_.prepare_linearization(t, uu, ws_);
        for (std::size_t i = 0; i < r_; ++i) {
            sys_.apply_linearized_nonstiff(mode(y, i), tmp_, ws_);
            auto vi = mode(y, i);
            for (std::size_t c = 0; c < d_ / 2; ++c) {
                const std::complex<double> s = symbol_[c];
                lv_[i][2 * c] = tmp_[2 * c] + s.real() * vi[2 * c] - s.imag() * vi[2 * c + 1];
                lv_[i][2 * c + 1] =
                    tmp_[2 * c + 1] + s.real() * vi[2 * c + 1] + s.imag() * vi[2 * c];
            }
            // dy gets the nonstiff part; project_modes subtracts using full lv_.
            std::copy(tmp_.begin(), tmp_.end(), mode(dy, i).begin());
        }
        project_modes_nonstiff(y, dy);
        for (std::size_t p = 0; p < np_; ++p)
            sys_.apply_linearized_nonstiff(passenger(y, p), dy.subspan(d_ * (1 + r_ + p), d_),
                                           ws_);
    }

    // <L_u v_i, v_k> for the current lv_; exposed after full_rhs for reuse.
    double m(std::size_t i, std::size_t k) const { return m_[i * r_ + k]; }

  private:
    void compute_m(std::span<const double> y) {
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < r_; ++k) m_[i * r_ + k] = sys_.inner(lv_[i], mode(y, k));
    }

    void project_modes(std::span<const double> y, std::span<double> dy) {
        if (r_ == 0) return;
        compute_m(y);
        for (std::size_t i = 0; i < r_; ++i) {
            auto dvi = mode(dy, i);
            std::copy(lv_[i].begin(), lv_[i].end(), dvi.begin());
            for (std::size_t k = 0; k < r_; ++k) {
                const double c = m_[i * r_ + k];
                auto vk = mode(y, k);
                for (std::size_t x = 0; x < d_; ++x) dvi[x] -= c * vk[x];
            }
        }
    }

    void project_modes_nonstiff(std::span<const double> y, std::span<double> dy) {
        if (r_ == 0) return;
        compute_m(y);
        for (std::size_t i = 0; i < r_; ++i) {
            auto dvi = mode(dy, i);  // already holds the nonstiff application
            for (std::size_t k = 0; k < r_; ++k) {
                const double c = m_[i * r_ + k];
                auto vk = mode(y, k);
                for (std::size_t x = 0; x < d_; ++x) dvi[x] -= c * vk[x];
            }
        }
    }

    void eta_rhs(std::span<const double> y, std::span<double> dy) {
        if (ne_ == 0) return;
        auto e = eta(y);
        auto de = dy.subspan(d_ * (1 + r_ + np_), ne_);
        // [L_r]_{ij} = <v_i, L v_j> = M[j][i]
        for (std::size_t i = 0; i < ne_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < ne_; ++j) s += m_[j * r_ + i] * e[j];
            de[i] = s;
        }
    }

    const DynamicalSystem& sys_;
    SystemWorkspace& ws_;
    std::size_t d_, r_, np_, ne_;
    bool freeze_;
    std::vector<std::vector<double>> lv_;
    std::vector<double> m_;
    std::vector<double> tmp_;
    std::vector<std::complex<double>> symbol_;
};

}  // namespace

std::vector<std::vector<double>> otd_rhs(const DynamicalSystem& sys, double t,
                                         std::span<const double> u, const OtdBasis& basis,
                                         SystemWorkspace& ws) {
    const std::size_t r = basis.r(), d = sys.dim();
    if (basis.dim() != d) throw contract_violation("otd_rhs: basis/state dimension mismatch");
    if (basis.gram_error(sys) > 1e-6)
        throw contract_violation("otd_rhs: basis not orthonormal to 1e-6");
    sys.prepare_linearization(t, u, ws);
    std::vector<std::vector<double>> lv(r, std::vector<double>(d));
    for (std::size_t i = 0; i < r; ++i) sys.apply_linearized(basis.mode(i), lv[i], ws);
    std::vector<std::vector<double>> out(r, std::vector<double>(d));
    for (std::size_t i = 0; i < r; ++i) {
        std::copy(lv[i].begin(), lv[i].end(), out[i].begin());
        for (std::size_t k = 0; k < r; ++k) {
            const double c = sys.inner(lv[i], basis.mode(k));
            auto vk = basis.mode(k);
            for (std::size_t x = 0; x < d; ++x) out[i][x] -= c * vk[x];
        }
    }
    return out;
}

ReducedOperator reduced_operator(const DynamicalSystem& sys, double t,
                                 std::span<const double> u, const OtdBasis& basis,
                                 SystemWorkspace& ws) {
    const std::size_t r = basis.r(), d = sys.dim();
    if (basis.dim() != d)
        throw contract_violation("reduced_operator: basis/state dimension mismatch");
    sys.prepare_linearization(t, u, ws);
    ReducedOperator rop;
    rop.time = t;
    rop.L_r = DenseMatrix(r, r);
    std::vector<double> lvj(d);
    for (std::size_t j = 0; j < r; ++j) {
        sys.apply_linearized(basis.mode(j), lvj, ws);
        for (std::size_t i = 0; i < r; ++i) rop.L_r(i, j) = sys.inner(basis.mode(i), lvj);
    }
    rop.S_r = rop.L_r.symmetric_part();
    if (r > 0) {
        SymmetricEigen se = symmetric_eigs(rop.S_r);
        rop.eigenvalues = std::move(se.values);
        rop.eigenvectors = std::move(se.vectors);
    }
    return rop;
}

EvolveResult evolve_coupled(const DynamicalSystem& sys, std::span<const double> u0,
                            const OtdBasis& basis0, const EvolveOptions& opt,
                            const EmitFn& emit) {
    const std::size_t d = sys.dim(), r = basis0.r();
    if (u0.size() != d) throw contract_violation("evolve_coupled: state size mismatch");
    if (r > 0 && basis0.dim() != d)
        throw contract_violation("evolve_coupled: basis dimension mismatch");
    if (!(opt.emit_dt > 0)) throw contract_violation("evolve_coupled: emit_dt must be positive");
    if (!(opt.reorth_dt > 0))
        throw contract_violation("evolve_coupled: reorth_dt must be positive");
    if (opt.t1 < opt.t0) throw contract_violation("evolve_coupled: t1 < t0");
    if (!opt.eta0.empty() && opt.eta0.size() != r)
        throw contract_violation("evolve_coupled: eta0 must have length r");
    for (const auto& p : opt.passengers0)
        if (p.size() != d) throw contract_violation("evolve_coupled: passenger size mismatch");
    if (r > 0 && basis0.gram_error(sys) > 1e-6)
        throw contract_violation("evolve_coupled: initial basis not orthonormal to 1e-6");

    const std::size_t np = opt.passengers0.size(), ne = opt.eta0.size();
    auto ws = sys.make_workspace();
    CoupledEvaluator ev(sys, *ws, r, np, ne, opt.freeze_state);
    const std::size_t N = ev.total_dim();

    std::vector<double> y(N, 0.0);
    std::copy(u0.begin(), u0.end(), y.begin());
    for (std::size_t i = 0; i < r; ++i)
        std::copy(basis0.mode(i).begin(), basis0.mode(i).end(), ev.mode(std::span<double>(y), i).begin());
    for (std::size_t p = 0; p < np; ++p)
        std::copy(opt.passengers0[p].begin(), opt.passengers0[p].end(),
                  y.begin() + d * (1 + r + p));
    std::copy(opt.eta0.begin(), opt.eta0.end(), y.begin() + d * (1 + r + np));

    // Stepper setup.
    std::unique_ptr<Rk54> rk;
    std::unique_ptr<Etd2> etd;
    if (opt.stepper == Stepper::rk54) {
        rk = std::make_unique<Rk54>(N, opt.ctrl);
    } else {
        if (opt.freeze_state)
            throw contract_violation("evolve_coupled: freeze_state requires the rk54 stepper");
        if (ne > 0)
            throw contract_violation("evolve_coupled: eta probe requires the rk54 stepper");
        if (d % 2 != 0) throw contract_violation("evolve_coupled: etd2 needs an even dimension");
        std::vector<std::complex<double>> base(d / 2);
        if (!sys.stiff_symbol(base))
            throw contract_violation("evolve_coupled: " + sys.name() + " has no stiff symbol");
        std::vector<std::complex<double>> sym;
        sym.reserve(N / 2);
        for (std::size_t blk = 0; blk < 1 + r + np; ++blk)
            sym.insert(sym.end(), base.begin(), base.end());
        ev.set_symbol(std::move(base));
        const double per = opt.emit_dt / opt.etd_dt;
        const double per2 = opt.reorth_dt / opt.etd_dt;
        if (std::abs(per - std::round(per)) > 1e-9 || std::abs(per2 - std::round(per2)) > 1e-9)
            throw contract_violation(
                "evolve_coupled: emit_dt and reorth_dt must be multiples of etd_dt");
        etd = std::make_unique<Etd2>(EtdCoefficients::build(sym, opt.etd_dt));
    }

    RhsFn rk_rhs = [&](double t, std::span<const double> yy, std::span<double> dy) {
        ev.full_rhs(t, yy, dy);
    };
    NonlinFn etd_rhs = [&](double t, std::span<const double> yy, std::span<double> dy) {
        ev.nonstiff_rhs(t, yy, dy);
    };

    EvolveResult res;
    res.u.resize(d);
    OtdBasis basis_work(r, r > 0 ? d : 0);
    std::vector<double> obs(sys.observable_names().size());
    std::vector<double> tobs(sys.tangent_observable_names().size());

    const double teps = 1e-9 * std::max(1.0, std::abs(opt.t1 - opt.t0) + std::abs(opt.t0));
    double t = opt.t0;

    auto mode_views = [&]() {
        std::vector<std::span<double>> views;
        views.reserve(r);
        for (std::size_t i = 0; i < r; ++i) views.push_back(ev.mode(std::span<double>(y), i));
        return views;
    };

    auto renormalize_eta = [&]() {
        if (ne == 0) return;
        auto e = ev.eta(std::span<double>(y));
        double n2 = 0.0;
        for (double x : e) n2 += x * x;
        const double nrm = std::sqrt(n2);
        if (nrm > 0.0)
            for (double& x : e) x /= nrm;
    };

    auto do_emit = [&](double tt) {
        auto views = mode_views();
        const double gerr = r > 0 ? gram_error_views(views, sys) : 0.0;
        if (gerr > opt.gram_abort_tol)
            throw orthonormality_error("evolve_coupled: basis Gram error " +
                                           std::to_string(gerr) + " exceeds abort threshold",
                                       tt);
        if (tt < opt.emit_from - teps) return;
        for (std::size_t i = 0; i < r; ++i) {
            auto src = ev.mode(std::span<const double>(y), i);
            std::copy(src.begin(), src.end(), basis_work.mode(i).begin());
        }
        auto uu = std::span<const double>(y).subspan(0, d);
        ReducedOperator rop = reduced_operator(sys, tt, uu, basis_work, *ws);
        sys.observables(tt, uu, obs, *ws);
        if (!tobs.empty() && r > 0) sys.tangent_observables(basis_work.mode(0), tobs, *ws);
        EmitContext ctx{tt,
                        uu,
                        basis_work,
                        rop,
                        obs,
                        tobs,
                        gerr,
                        ev.eta(std::span<const double>(y)),
                        0.0,
                        {}};
        double en2 = 0.0;
        for (double x : ctx.eta) en2 += x * x;
        ctx.eta_norm = std::sqrt(en2);
        for (std::size_t p = 0; p < np; ++p)
            ctx.passengers.push_back(ev.passenger(std::span<const double>(y), p));
        if (emit) emit(ctx);
        ++res.n_emitted;
    };

    // Initial record, then |eta| = 1 so each window's growth is self-relative.
    do_emit(t);
    renormalize_eta();

    SplitMix64 noise_rng(opt.mode_noise_seed);
    long j_emit = 1, k_reorth = 1;
    while (opt.t1 - t > teps) {
        const double t_emit = opt.t0 + double(j_emit) * opt.emit_dt;
        const double t_reorth = opt.t0 + double(k_reorth) * opt.reorth_dt;
        const double t_next = std::min({t_emit, t_reorth, opt.t1});

        if (rk) {
            rk->integrate_to(rk_rhs, t, y, t_next);
        } else {
            const double span = t_next - t;
            const double steps_f = span / opt.etd_dt;
            const long steps = std::lround(steps_f);
            if (std::abs(steps_f - double(steps)) > 1e-6)
                throw contract_violation(
                    "evolve_coupled: time span is not a multiple of etd_dt");
            double tt = t;
            for (long s = 0; s < steps; ++s) etd->step(etd_rhs, tt, y);
            t = t_next;
        }

        if (std::abs(t - t_emit) <= teps) {
            do_emit(t);
            ++j_emit;
        }
        if (std::abs(t - t_reorth) <= teps) {
            renormalize_eta();
            if (r > 0) {
                auto views = mode_views();
                if (opt.mode_noise > 0.0)
                    for (auto& v : views)
                        for (double& x : v)
                            x += opt.mode_noise * (2.0 * noise_rng.next_double() - 1.0);
                modified_gram_schmidt(std::span<std::span<double>>(views),
                                      [&](std::span<const double> a, std::span<const double> b) {
                                          return sys.inner(a, b);
                                      });
            }
            if (rk) rk->notify_state_changed();
            ++k_reorth;
        }
    }

    res.t = t;
    std::copy(y.begin(), y.begin() + d, res.u.begin());
    for (std::size_t i = 0; i < r; ++i) {
        auto src = ev.mode(std::span<const double>(y), i);
        std::copy(src.begin(), src.end(), basis_work.mode(i).begin());
    }
    basis_work.last_reorthonormalization_time =
        opt.t0 + double(k_reorth - 1) * opt.reorth_dt;
    res.basis = std::move(basis_work);
    res.eta.assign(ev.eta(std::span<const double>(y)).begin(),
                   ev.eta(std::span<const double>(y)).end());
    if (rk) {
        res.steps_accepted = rk->accepted_steps();
        res.steps_rejected = rk->rejected_steps();
    }
    return res;
}

std::vector<GrowthWindow> growth_bound_check(std::span<const double> times,
                                             const std::vector<std::vector<double>>& lambdas,
                                             std::span<const double> eta_norms, double T,
                                             double slack) {
    const std::size_t n = times.size();
    if (n < 2 || lambdas.size() != n || eta_norms.size() != n)
        throw contract_violation("growth_bound_check: series size mismatch");
    const double dt = times[1] - times[0];
    if (!(dt > 0)) throw contract_violation("growth_bound_check: non-increasing times");
    const double stride_f = T / dt;
    const long stride = std::lround(stride_f);
    if (stride < 1 || std::abs(stride_f - double(stride)) > 1e-6)
        throw contract_violation("growth_bound_check: T must be a multiple of the sample step");

    std::vector<GrowthWindow> out;
    for (std::size_t a = 0; a + std::size_t(stride) < n; a += stride) {
        const std::size_t b = a + stride;
        GrowthWindow w{};
        w.t_start = times[a];
        w.t_end = times[b];
        w.lambda_min = lambdas[a].back();
        w.lambda_max = lambdas[a].front();
        for (std::size_t i = a; i <= b; ++i) {
            w.lambda_min = std::min(w.lambda_min, lambdas[i].back());
            w.lambda_max = std::max(w.lambda_max, lambdas[i].front());
        }
        // eta is renormalized at window starts, so the recorded norm at the
        // window end is the window's growth ratio.
        w.ratio = eta_norms[b];
        const double lo = std::exp(w.lambda_min * T) - slack;
        const double hi = std::exp(w.lambda_max * T) + slack;
        w.ok = (w.ratio >= lo && w.ratio <= hi);
        out.push_back(w);
    }
    return out;
}

}  // namespace otd
