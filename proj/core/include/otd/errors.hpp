#ifndef OTD_ERRORS_HPP
#define OTD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace otd {

/// Violation of a documented precondition (caller bug, not data).
struct contract_violation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Input matrix fails the symmetry tolerance of a symmetric-only routine.
struct symmetry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Near-linear dependence detected during orthonormalization.
struct degeneracy_error : std::runtime_error {
    degeneracy_error(const std::string& what, std::size_t index)
        : std::runtime_error(what), index(index) {}
    std::size_t index;
};

/// NaN/Inf encountered while evaluating or integrating a trajectory.
struct blow_up_error : std::runtime_error {
    blow_up_error(const std::string& what, double time)
        : std::runtime_error(what), time(time) {}
    double time;
};

/// Adaptive step size fell below dt_min.
struct stiffness_error : std::runtime_error {
    stiffness_error(const std::string& what, double time)
        : std::runtime_error(what), time(time) {}
    double time;
};

/// The evolving mode basis lost orthonormality beyond the abort threshold.
struct orthonormality_error : std::runtime_error {
    orthonormality_error(const std::string& what, double time)
        : std::runtime_error(what), time(time) {}
    double time;
};

/// Malformed configuration text or out-of-range parameter value.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Corrupt, truncated or unsupported on-disk data.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace otd

#endif
