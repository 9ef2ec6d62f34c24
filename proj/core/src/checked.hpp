#pragma once

#include <cstdint>
#include <string>

#include "dabs/error.hpp"
#include "dabs/types.hpp"

namespace dabs::detail {

inline Energy checked_add(Energy a, Energy b, const char* what) {
  Energy r;
  if (__builtin_add_overflow(a, b, &r)) throw CapacityError(std::string(what) + ": 64-bit overflow");
  return r;
}

inline Energy checked_mul(Energy a, Energy b, const char* what) {
  Energy r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError(std::string(what) + ": 64-bit overflow");
  return r;
}

inline Energy checked_abs(Energy a, const char* what) {
  if (a == INT64_MIN) throw CapacityError(std::string(what) + ": 64-bit overflow");
  return a < 0 ? -a : a;
}

}  // namespace dabs::detail
