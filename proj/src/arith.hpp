#ifndef ACTLANG_ARITH_HPP
#define ACTLANG_ARITH_HPP

#include <cstdint>

#include "errors.hpp"

// Both interpreters share checked 64-bit arithmetic so that a program which
// overflows does so identically on either side.

namespace actlang {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorKind::Overflow, "integer overflow in addition");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Error(ErrorKind::Overflow, "integer overflow in subtraction");
  return r;
}

}  // namespace actlang

#endif
