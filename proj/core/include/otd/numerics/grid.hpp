#ifndef OTD_NUMERICS_GRID_HPP
#define OTD_NUMERICS_GRID_HPP

#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "otd/errors.hpp"

namespace otd {

namespace detail {
inline void check_grid_size(std::size_t n, const char* what) {
    if (n < 8 || (n % 2) != 0)
        throw contract_violation(std::string(what) + ": grid size must be even and >= 8, got " +
                                 std::to_string(n));
}
}  // namespace detail

/// Uniform periodic grid on [0, L). Wavenumbers follow the standard DFT
/// ordering 0, 1, ..., n/2-1, -n/2, ..., -1; physical wavenumbers are
/// q_k = 2*pi*k_int/L. The two-thirds dealias mask keeps |k_int| <= floor(n/3).
struct SpectralGrid1D {
    std::size_t n = 0;
    double length = 0.0;
    std::vector<double> x;       // nodes j*L/n
    std::vector<int> k_int;      // integer wavenumbers, DFT order
    std::vector<double> q;       // physical wavenumbers 2*pi*k/L
    std::vector<bool> dealias;   // true where the mode survives 2/3 truncation

    SpectralGrid1D() = default;
    SpectralGrid1D(std::size_t n_, double length_) : n(n_), length(length_) {
        detail::check_grid_size(n, "SpectralGrid1D");
        if (!(length > 0.0)) throw contract_violation("SpectralGrid1D: length must be positive");
        x.resize(n);
        k_int.resize(n);
        q.resize(n);
        dealias.resize(n);
        const double dx = length / double(n);
        const double two_pi = 2.0 * std::numbers::pi;
        const int kmax = int(n / 3);  // floor(n/3)
        for (std::size_t j = 0; j < n; ++j) x[j] = double(j) * dx;
        for (std::size_t j = 0; j < n; ++j) {
            const int k = (j < n / 2) ? int(j) : int(j) - int(n);
            k_int[j] = k;
            q[j] = two_pi * double(k) / length;
            dealias[j] = (std::abs(k) <= kmax);
        }
    }

    double dx() const { return length / double(n); }
};

/// Square periodic grid on [0, L)^2 holding per-axis integer wavenumbers in
/// DFT order. The half-spectrum helpers (nx x (ny/2+1) layout with ky fast)
/// serve real-to-complex transforms where only ky >= 0 is stored.
struct SpectralGrid2D {
    std::size_t n = 0;   // points per direction
    double length = 0.0;
    std::vector<int> k_int;      // shared per-axis integer wavenumbers, DFT order
    std::vector<double> q;       // 2*pi*k/L per axis
    std::vector<bool> dealias1d; // per-axis 2/3 mask; the 2D mask is the product

    SpectralGrid2D() = default;
    SpectralGrid2D(std::size_t n_, double length_) : n(n_), length(length_) {
        detail::check_grid_size(n, "SpectralGrid2D");
        if (!(length > 0.0)) throw contract_violation("SpectralGrid2D: length must be positive");
        k_int.resize(n);
        q.resize(n);
        dealias1d.resize(n);
        const double two_pi = 2.0 * std::numbers::pi;
        const int kmax = int(n / 3);
        for (std::size_t j = 0; j < n; ++j) {
            const int k = (j < n / 2) ? int(j) : int(j) - int(n);
            k_int[j] = k;
            q[j] = two_pi * double(k) / length;
            dealias1d[j] = (std::abs(k) <= kmax);
        }
    }

    double dx() const { return length / double(n); }
    std::size_t half_ny() const { return n / 2 + 1; }      // r2c stored ky count
    std::size_t half_size() const { return n * half_ny(); }
    // r2c layout: index = kx_row * (n/2+1) + ky_col, ky_col in [0, n/2]
    std::size_t half_index(std::size_t kx_row, std::size_t ky_col) const {
        return kx_row * half_ny() + ky_col;
    }
    bool dealias_half(std::size_t kx_row, std::size_t ky_col) const {
        const int kmax = int(n / 3);
        return dealias1d[kx_row] && (int(ky_col) <= kmax);
    }
};

}  // namespace otd

#endif
