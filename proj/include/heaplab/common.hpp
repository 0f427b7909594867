#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

// Boost 1.74's mixed rational/integer operator== recurses forever under C++20
// reversed-candidate rules. Exact non-template overloads win resolution and
// stop the recursion; they live in boost so ADL finds them from any namespace.
namespace boost {
#define HEAPLAB_RATIONAL_EQ(INT)                                                          \
  inline bool operator==(const rational<std::int64_t>& a, INT b) {                        \
    return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);         \
  }                                                                                       \
  inline bool operator==(INT b, const rational<std::int64_t>& a) { return a == b; }
HEAPLAB_RATIONAL_EQ(int)
HEAPLAB_RATIONAL_EQ(long)
HEAPLAB_RATIONAL_EQ(long long)
#undef HEAPLAB_RATIONAL_EQ
}  // namespace boost

namespace heaplab {

using ColorId = int;
using ElementId = int;

// Exact scalars for weights and operator coefficients.
using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

// Malformed input: unknown ids, cycles, non-reduced covers, bad JSON fields.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed a configured size bound.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A hypothesis needed by the requested computation does not hold (e.g. EC).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heaplab
