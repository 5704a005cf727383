#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

namespace hsum {

// Invalid user input: malformed files, bad configuration, signals that
// violate a precondition. The CLI maps this to exit code 1; everything
// else is an internal error (exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caps the worker count used by parallel_for. 0 restores the default
// (HSUM_THREADS env var if set, else hardware concurrency).
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs fn(i) for every i in [0, n), splitting the index range into one
// contiguous chunk per worker. Callers write results by index, so the
// outcome is identical for any worker count. The first exception thrown
// by fn (if any) is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hsum
