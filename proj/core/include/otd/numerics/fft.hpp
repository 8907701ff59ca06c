#ifndef OTD_NUMERICS_FFT_HPP
#define OTD_NUMERICS_FFT_HPP

#include <complex>
#include <cstddef>
#include <cstdlib>
#include <cstring>
#include <new>
#include <utility>

namespace otd::fft {

/// 64-byte aligned heap array so transform buffers satisfy any SIMD
/// alignment the planner assumed. All spectral workspaces go through this.
template <class T>
class AlignedArray {
  public:
    AlignedArray() = default;
    explicit AlignedArray(std::size_t n) : n_(n) {
        if (n == 0) return;
        std::size_t bytes = n * sizeof(T);
        bytes = (bytes + 63u) & ~std::size_t(63u);  // aligned_alloc wants a multiple
        p_ = static_cast<T*>(std::aligned_alloc(64, bytes));
        if (!p_) throw std::bad_alloc();
        std::memset(static_cast<void*>(p_), 0, bytes);
    }
    ~AlignedArray() { std::free(p_); }
    AlignedArray(const AlignedArray&) = delete;
    AlignedArray& operator=(const AlignedArray&) = delete;
    AlignedArray(AlignedArray&& o) noexcept : p_(o.p_), n_(o.n_) {
        o.p_ = nullptr;
        o.n_ = 0;
    }
    AlignedArray& operator=(AlignedArray&& o) noexcept {
        if (this != &o) {
            std::free(p_);
            p_ = o.p_;
            n_ = o.n_;
            o.p_ = nullptr;
            o.n_ = 0;
        }
        return *this;
    }

    T* data() { return p_; }
    const T* data() const { return p_; }
    std::size_t size() const { return n_; }
    T& operator[](std::size_t i) { return p_[i]; }
    const T& operator[](std::size_t i) const { return p_[i]; }
    void zero() {
        if (p_) std::memset(static_cast<void*>(p_), 0, n_ * sizeof(T));
    }

  private:
    T* p_ = nullptr;
    std::size_t n_ = 0;
};

// All transforms are out-of-place (in != out required) on 64-byte aligned
// buffers; plans are cached per size and reused, so results are deterministic
// across runs. Forward transforms are unnormalized sums; inverses divide by
// the total point count.

/// 1D complex DFT, forward (e^{-i 2 pi k j / n} convention, unnormalized).
void c2c_forward_1d(std::size_t n, const std::complex<double>* in, std::complex<double>* out);

/// 1D complex DFT, inverse; output scaled by 1/n.
void c2c_inverse_1d(std::size_t n, const std::complex<double>* in, std::complex<double>* out);

/// 2D real-to-complex DFT on an n x n row-major field; output is the
/// n x (n/2+1) half spectrum (ky >= 0 stored, ky index fast). Unnormalized.
/// Input is preserved.
void r2c_2d(std::size_t n, const double* in, std::complex<double>* out);

/// 2D complex-to-real inverse on the n x (n/2+1) half spectrum; output is the
/// n x n real field scaled by 1/n^2. The input buffer is DESTROYED (used as
/// scratch by the transform), so pass a copy you no longer need.
void c2r_2d(std::size_t n, std::complex<double>* in_destroyed, double* out);

}  // namespace otd::fft

#endif
