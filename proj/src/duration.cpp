#include "bpmkit/duration.hpp"

#include <cstdio>
#include <stdexcept>
#include <vector>

namespace bpmkit {

Duration::Duration(std::int64_t seconds) : seconds_(seconds) {
  if (seconds < 0) throw std::invalid_argument("negative duration");
}

namespace {

std::int64_t parse_field(std::string_view f) {
  if (f.empty() || f.size() > 12) throw std::invalid_argument("bad duration field '" + std::string(f) + "'");
  std::int64_t v = 0;
  for (char c : f) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad duration field '" + std::string(f) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

std::string render(std::int64_t s) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%lld:%02lld:%02lld", static_cast<long long>(s / 3600),
                static_cast<long long>(s / 60 % 60), static_cast<long long>(s % 60));
  return buf;
}

}  // namespace

Duration Duration::parse(std::string_view text) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    auto colon = text.find(':', pos);
    fields.push_back(text.substr(pos, colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (fields.size() != 2 && fields.size() != 3) {
    throw std::invalid_argument("duration '" + std::string(text) + "' is not MM:SS or H:MM:SS");
  }
  std::int64_t hours = fields.size() == 3 ? parse_field(fields[0]) : 0;
  std::int64_t minutes = parse_field(fields[fields.size() - 2]);
  std::int64_t seconds = parse_field(fields.back());
  if (fields.size() == 3 && fields[1].size() != 2) {
    throw std::invalid_argument("minutes in '" + std::string(text) + "' must have two digits");
  }
  if (fields.back().size() != 2) {
    throw std::invalid_argument("seconds in '" + std::string(text) + "' must have two digits");
  }
  if (minutes >= 60) throw std::out_of_range("minutes out of range in '" + std::string(text) + "'");
  if (seconds >= 60) throw std::out_of_range("seconds out of range in '" + std::string(text) + "'");
  return Duration(hours * 3600 + minutes * 60 + seconds);
}

std::string Duration::str() const { return render(seconds_); }

std::string format_delta(std::int64_t seconds) {
  if (seconds == 0) return render(0);
  return (seconds < 0 ? "-" : "+") + render(seconds < 0 ? -seconds : seconds);
}

}  // namespace bpmkit
