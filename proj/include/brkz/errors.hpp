/**
 * Error taxonomy shared across the library.  Validation errors flag bad user
 * input, invariant errors flag failed internal consistency checks, cap errors
 * flag requests beyond the supported size limits.  The CLI maps these to
 * exit codes 2, 3 and 4.
 */

#ifndef BRKZ_ERRORS_HPP
#define BRKZ_ERRORS_HPP

#include <stdexcept>

namespace brkz {

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invariant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace brkz

#endif
