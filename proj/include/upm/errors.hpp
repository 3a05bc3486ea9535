#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace upm {

// Raised when an enumeration or search exceeds its configured cap.
// Carries the cap name so callers can tell which limit was hit.
class cap_exceeded : public std::runtime_error {
 public:
  cap_exceeded(std::string cap_name, std::int64_t cap, std::int64_t partial_count)
      : std::runtime_error("cap exceeded: " + cap_name + " (cap=" + std::to_string(cap) +
                           ", partial count=" + std::to_string(partial_count) + ")"),
        cap_name_(std::move(cap_name)),
        cap_(cap),
        partial_count_(partial_count) {}

  const std::string& cap_name() const { return cap_name_; }
  std::int64_t cap() const { return cap_; }
  std::int64_t partial_count() const { return partial_count_; }

 private:
  std::string cap_name_;
  std::int64_t cap_;
  std::int64_t partial_count_;
};

// Syntax or schema error in an input text, with a location.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& message, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  explicit parse_error(const std::string& message) : std::runtime_error(message) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_ = 0;
  int column_ = 0;
};

// Structural problem with a model, e.g. a final marking that cannot be reached.
class model_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace upm
