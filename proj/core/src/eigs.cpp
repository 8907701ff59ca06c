#include "otd/numerics/eigs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "otd/errors.hpp"

namespace otd {

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

double frobenius(const DenseMatrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

}  // namespace

SymmetricEigen symmetric_eigs(const DenseMatrix& a, double sym_tol) {
    if (a.rows() != a.cols())
        throw contract_violation("symmetric_eigs: matrix is not square");
    if (!a.finite())
        throw contract_violation("symmetric_eigs: non-finite entries");
    const std::size_t n = a.rows();
    const double scale = a.max_abs();
    if (scale > 0.0 && a.max_asymmetry() > sym_tol * scale)
        throw symmetry_error("symmetric_eigs: input asymmetric beyond tolerance");

    DenseMatrix b = a.symmetric_part();
    DenseMatrix v = DenseMatrix::identity(n);

    const double fnorm = frobenius(b);
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        const double off = off_diagonal_norm(b);
        if (off <= 1e-15 * std::max(fnorm, 1e-300)) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = b(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (b(q, q) - b(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double bpp = b(p, p), bqq = b(q, q);
                b(p, p) = bpp - t * apq;
                b(q, q) = bqq + t * apq;
                b(p, q) = 0.0;
                b(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i != p && i != q) {
                        const double bip = b(i, p), biq = b(i, q);
                        b(i, p) = bip - s * (biq + tau * bip);
                        b(i, q) = biq + s * (bip - tau * biq);
                        b(p, i) = b(i, p);
                        b(q, i) = b(i, q);
                    }
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip - s * (viq + tau * vip);
                    v(i, q) = viq + s * (vip - tau * viq);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return b(i, i) > b(j, j); });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = b(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

}  // namespace otd
