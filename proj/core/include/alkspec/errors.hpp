#pragma once

#include <stdexcept>
#include <string>

namespace alkspec {

/// A dense computation would exceed the configured dimension cap.
class SizeLimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// An ODE integration failed to meet its tolerance or broke an invariant.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace alkspec
