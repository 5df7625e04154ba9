#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace bpmkit {

/// Non-negative whole seconds.
class Duration {
 public:
  constexpr Duration() = default;
  /// Throws std::invalid_argument for negative values.
  explicit Duration(std::int64_t seconds);

  constexpr std::int64_t seconds() const noexcept { return seconds_; }

  /// Accepts "MM:SS" (below one hour) or "H:MM:SS". Throws
  /// std::invalid_argument on malformed text and std::out_of_range when
  /// minutes or seconds are 60 or more.
  static Duration parse(std::string_view text);

  /// "H:MM:SS" with unpadded hours, e.g. "8:57:15".
  std::string str() const;

  friend Duration operator+(Duration a, Duration b) noexcept {
    Duration d;
    d.seconds_ = a.seconds_ + b.seconds_;
    return d;
  }
  Duration& operator+=(Duration other) noexcept {
    seconds_ += other.seconds_;
    return *this;
  }
  friend constexpr auto operator<=>(Duration, Duration) = default;

 private:
  std::int64_t seconds_ = 0;
};

/// Signed "H:MM:SS" for time deltas: "-0:11:30", "+0:05:00", "0:00:00".
std::string format_delta(std::int64_t seconds);

}  // namespace bpmkit
