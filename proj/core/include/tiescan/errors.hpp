#pragma once

#include <stdexcept>

namespace tiescan {

// Error taxonomy mirrored by CLI exit codes:
// InputError -> 2, DegenerateStatisticError -> 3, ConfigError -> 4.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a scan statistic has zero variance somewhere in the search
// window, so standardization is undefined.
struct DegenerateStatisticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tiescan
