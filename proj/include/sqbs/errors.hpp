#pragma once

#include <stdexcept>
#include <string>

namespace sqbs {

// Newton iteration budget exhausted before reaching the residual target.
struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// The series cutoff over the free summation index was reached before the
// certified tail estimate fell below tolerance.
struct CutoffTooSmall : std::runtime_error {
  explicit CutoffTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// Probability mass lies beyond the requested grid bounds; enlarging the
// inner summation cutoff cannot fix it.
struct GridTooSmall : std::runtime_error {
  explicit GridTooSmall(const std::string& what) : std::runtime_error(what) {}
};

// A truncated-space state lost more norm than the configured budget.
struct TruncationExceeded : std::runtime_error {
  explicit TruncationExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sqbs
