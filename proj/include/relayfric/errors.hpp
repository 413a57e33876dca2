#pragma once

#include <stdexcept>
#include <string>

namespace relayfric {

/// Invalid or inconsistent scenario/configuration input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure during integration (divergence, step underflow, event cascade).
struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Analysis has too little data to produce a result.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Analysis ran but could not reach a conclusive verdict.
struct InconclusiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace relayfric
