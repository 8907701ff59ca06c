#ifndef OTD_IO_CONFIG_HPP
#define OTD_IO_CONFIG_HPP

#include <cstdint>
#include <string>

namespace otd {

/// Flat run description covering every model; only the block matching `model`
/// is consulted when a run is assembled. Defaults depend on the model (see
/// default_config), and parse_config starts from those before applying the
/// explicit keys.
struct RunConfig {
    std::string model = "prototype";  // prototype | kolmogorov | mnls
    std::size_t r = 1;                // OTD mode count
    std::uint64_t seed = 0;
    double t_end = 1000.0;
    double t_record_from = 0.0;  // spin-up discard: records start here
    double emit_dt = 0.1;
    double snapshot_dt = 0.0;  // 0 disables; else a multiple of emit_dt
    double reorth_dt = 1.0;
    // Tangent-mode perturbation amplitude applied at each reorthonormalization;
    // 0 disables. Models whose tangent flow has an exactly invariant subspace
    // aligned with the coordinates (the prototype's z = 0 plane) need a small
    // floor here for the modes to detect instabilities transverse to it.
    double mode_noise = 0.0;
    double rel_tol = 1e-8;
    double abs_tol = 1e-8;
    std::string integrator = "rk54";  // rk54 | etd2
    double etd_dt = 0.025;
    std::string out = "out";

    // prototype
    double alpha = 0.01;
    double omega = 6.283185307179586;
    double lambda = 0.1;
    double beta = 0.1;

    // kolmogorov
    std::size_t grid_n = 128;
    double Re = 40.0;
    int forcing_n = 4;
    double energy0 = 0.3;  // random initial condition energy level

    // mnls
    std::size_t n_modes = 2048;
    double length = 804.2477193189871;  // 256 pi
    double eps = 0.05;
    double sigma = 0.2;

    bool operator==(const RunConfig&) const = default;
};

/// Model-specific defaults (mode count, emission grid, integrator, horizon).
RunConfig default_config(const std::string& model);

/// key = value lines, '#' starts a comment, blank lines ignored. Unknown or
/// duplicate keys and malformed or out-of-range values raise config_error
/// naming the offending line. The `model` key may appear anywhere; remaining
/// keys override that model's defaults in file order.
RunConfig parse_config(const std::string& text);

/// Every key written explicitly; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

}  // namespace otd

#endif
