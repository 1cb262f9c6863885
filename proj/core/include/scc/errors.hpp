#pragma once

#include <stdexcept>
#include <string>

namespace scc {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (wrong dimension, det != 1, bad config, ...).
struct invalid_input : error {
    using error::error;
};

/// Input outside the mathematical domain of an operation (norm >= 1, w == 0, ...).
struct domain_violation : error {
    using error::error;
};

/// A computation produced a result that fails its own validation.
struct numerical_failure : error {
    using error::error;
};

/// A sampled path has an argument jump >= pi/2; the caller must subdivide.
struct refinement_required : error {
    using error::error;
};

/// The operation needs data the object does not carry (e.g. a missing isotopy).
struct unsupported_operation : error {
    using error::error;
};

/// A fractional power hit the branch cut with no path context to resolve it.
struct branch_ambiguity : error {
    using error::error;
};

/// CLI exit-code convention: 0 ok, 2 invalid input, 3 numerical failure.
inline int exit_code_for(const error& e) {
    if (dynamic_cast<const numerical_failure*>(&e) != nullptr) return 3;
    if (dynamic_cast<const refinement_required*>(&e) != nullptr) return 3;
    return 2;
}

}  // namespace scc
