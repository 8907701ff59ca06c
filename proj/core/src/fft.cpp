#include "otd/numerics/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <string>

#include "otd/errors.hpp"

namespace otd::fft {
namespace {

enum class Kind { c2c_fwd_1d, c2c_bwd_1d, r2c_2d, c2r_2d };

std::mutex plan_mutex;
std::map<std::pair<Kind, std::size_t>, fftw_plan> plan_cache;

// Plans are created once per (kind, size) on aligned throwaway buffers and
// executed thereafter through the new-array interface. FFTW_ESTIMATE keeps
// the chosen algorithm deterministic and avoids trashing user data during
// planning. Execution itself is thread-safe; only creation needs the lock.
fftw_plan get_plan(Kind kind, std::size_t n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = plan_cache.find({kind, n});
    if (it != plan_cache.end()) return it->second;

    fftw_plan p = nullptr;
    switch (kind) {
        case Kind::c2c_fwd_1d:
        case Kind::c2c_bwd_1d: {
            AlignedArray<std::complex<double>> a(n), b(n);
            p = fftw_plan_dft_1d(int(n), reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()),
                                 kind == Kind::c2c_fwd_1d ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE);
            break;
        }
        case Kind::r2c_2d: {
            AlignedArray<double> a(n * n);
            AlignedArray<std::complex<double>> b(n * (n / 2 + 1));
            p = fftw_plan_dft_r2c_2d(int(n), int(n), a.data(),
                                     reinterpret_cast<fftw_complex*>(b.data()), FFTW_ESTIMATE);
            break;
        }
        case Kind::c2r_2d: {
            AlignedArray<std::complex<double>> a(n * (n / 2 + 1));
            AlignedArray<double> b(n * n);
            p = fftw_plan_dft_c2r_2d(int(n), int(n), reinterpret_cast<fftw_complex*>(a.data()),
                                     b.data(), FFTW_ESTIMATE);
            break;
        }
    }
    if (!p) throw contract_violation("fft: plan creation failed for n=" + std::to_string(n));
    plan_cache.emplace(std::make_pair(kind, n), p);
    return p;
}

void check_args(std::size_t n, const void* in, const void* out, const char* what) {
    if (n < 2) throw contract_violation(std::string(what) + ": size must be >= 2");
    if (in == out) throw contract_violation(std::string(what) + ": in-place call not supported");
    if (fftw_alignment_of(const_cast<double*>(static_cast<const double*>(in))) != 0 ||
        fftw_alignment_of(static_cast<double*>(const_cast<void*>(out))) != 0)
        throw contract_violation(std::string(what) +
                                 ": buffers must come from otd::fft::AlignedArray");
}

}  // namespace

void c2c_forward_1d(std::size_t n, const std::complex<double>* in, std::complex<double>* out) {
    check_args(n, in, out, "c2c_forward_1d");
    fftw_plan p = get_plan(Kind::c2c_fwd_1d, n);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void c2c_inverse_1d(std::size_t n, const std::complex<double>* in, std::complex<double>* out) {
    check_args(n, in, out, "c2c_inverse_1d");
    fftw_plan p = get_plan(Kind::c2c_bwd_1d, n);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    const double s = 1.0 / double(n);
    for (std::size_t i = 0; i < n; ++i) out[i] *= s;
}

void r2c_2d(std::size_t n, const double* in, std::complex<double>* out) {
    check_args(n, in, out, "r2c_2d");
    fftw_plan p = get_plan(Kind::r2c_2d, n);
    fftw_execute_dft_r2c(p, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void c2r_2d(std::size_t n, std::complex<double>* in_destroyed, double* out) {
    check_args(n, in_destroyed, out, "c2r_2d");
    fftw_plan p = get_plan(Kind::c2r_2d, n);
    fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(in_destroyed), out);
    const double s = 1.0 / (double(n) * double(n));
    const std::size_t total = n * n;
    for (std::size_t i = 0; i < total; ++i) out[i] *= s;
}

}  // namespace otd::fft
