#pragma once

#include <chrono>
#include <optional>

#include "amc/error.hpp"

namespace amc {

/// Cooperative time limit polled by the engines.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline after(double seconds) {
    Deadline d;
    if (seconds > 0)
      d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(seconds));
    return d;
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }
  /// Throws TimeoutError once the limit has passed.
  void check() const {
    if (expired()) throw TimeoutError();
  }

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace amc
