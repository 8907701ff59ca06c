#ifndef OTD_NUMERICS_GRAM_SCHMIDT_HPP
#define OTD_NUMERICS_GRAM_SCHMIDT_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "otd/errors.hpp"

namespace otd {

/// Orthonormalize the vectors in place by modified Gram-Schmidt against the
/// given inner product, preserving order and span. A second projection pass
/// keeps the output Gram matrix within 1e-12 of identity even for
/// ill-conditioned input. Throws degeneracy_error (naming the offending
/// index) when a pivot norm falls below `pivot_tol`.
///
/// Inner must be a symmetric positive-definite bilinear form on flat real
/// coordinate vectors: double(span<const double>, span<const double>).
template <class Inner>
void modified_gram_schmidt(std::span<std::span<double>> vecs, Inner&& inner,
                           double pivot_tol = 1e-12) {
    const std::size_t r = vecs.size();
    for (std::size_t i = 0; i < r; ++i) {
        auto vi = vecs[i];
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < i; ++j) {
                const double c = inner(std::span<const double>(vi),
                                       std::span<const double>(vecs[j]));
                const auto wj = vecs[j];
                for (std::size_t k = 0; k < vi.size(); ++k) vi[k] -= c * wj[k];
            }
        }
        const double nrm =
            std::sqrt(inner(std::span<const double>(vi), std::span<const double>(vi)));
        if (!(nrm > pivot_tol))
            throw degeneracy_error(
                "gram_schmidt: near-linear dependence at vector " + std::to_string(i), i);
        const double inv = 1.0 / nrm;
        for (double& x : vi) x *= inv;
    }
}

template <class Inner>
void modified_gram_schmidt(std::vector<std::vector<double>>& vecs, Inner&& inner,
                           double pivot_tol = 1e-12) {
    std::vector<std::span<double>> views;
    views.reserve(vecs.size());
    for (auto& v : vecs) views.emplace_back(v);
    modified_gram_schmidt(std::span<std::span<double>>(views), std::forward<Inner>(inner),
                          pivot_tol);
}

/// Variant that drops (instead of rejecting) candidates whose residual after
/// projection falls below `drop_tol` relative to their incoming norm, and
/// stops once `max_keep` orthonormal vectors are collected. Returns the kept
/// set. Used to build a real orthonormal basis from redundant spanning sets
/// (e.g. real/imaginary parts of conjugate mode pairs).
template <class Inner>
std::vector<std::vector<double>> orthonormal_span(
    const std::vector<std::vector<double>>& candidates, Inner&& inner, std::size_t max_keep,
    double drop_tol = 1e-8) {
    std::vector<std::vector<double>> kept;
    for (const auto& cand : candidates) {
        if (kept.size() >= max_keep) break;
        const double in_nrm = std::sqrt(
            inner(std::span<const double>(cand), std::span<const double>(cand)));
        if (!(in_nrm > 0.0)) continue;
        std::vector<double> v = cand;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& w : kept) {
                const double c =
                    inner(std::span<const double>(v), std::span<const double>(w));
                for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * w[k];
            }
        }
        const double res =
            std::sqrt(inner(std::span<const double>(v), std::span<const double>(v)));
        if (res <= drop_tol * in_nrm) continue;
        const double inv = 1.0 / res;
        for (double& x : v) x *= inv;
        kept.push_back(std::move(v));
    }
    return kept;
}

}  // namespace otd

#endif
