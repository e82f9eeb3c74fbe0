#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nofib {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the document reader; carries a 1-based source position.
struct parse_error : error {
  int line = 0;
  int col = 0;
  parse_error(const std::string& msg, int line_, int col_)
      : error(msg + " (line " + std::to_string(line_) + ", col " +
              std::to_string(col_) + ")"),
        line(line_), col(col_) {}
};

// All integer arithmetic in the toolkit goes through these helpers; there is
// no silent wraparound anywhere.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw error("integer overflow (add)");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw error("integer overflow (sub)");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw error("integer overflow (mul)");
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

}  // namespace nofib
