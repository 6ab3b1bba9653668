#pragma once

#include <stdexcept>
#include <string>

namespace fthresh {

// Base for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: parse errors, ring mismatches, violated preconditions.
// The CLI maps this to exit code 2.
struct validation_error : error {
    using error::error;
};

// A configurable budget (S-pair count, wall time, matrix fill) ran out.
// The CLI maps this to exit code 3.
struct resource_limit_error : error {
    using error::error;
};

// Internal cross-checks disagreed (two computation routes, certified
// interval inversion). Never a user error.
struct engine_bug : error {
    using error::error;
};

}  // namespace fthresh
