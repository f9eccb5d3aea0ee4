#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace chord {

/// Exact rational number. Every coordinate, measure and integral in the
/// library is one of these; there is no floating point in the core.
using Rational = mpq_class;

/// Violated operation precondition (bad input). Maps to CLI exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A guaranteed-existence search came back empty. Maps to CLI exit code 1.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Parses "p", "p/q" or "-p/q". Throws PreconditionError on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical lowest-terms text: "p" for integers, "p/q" (q > 0) otherwise.
std::string to_string(const Rational& value);

/// p/q in lowest terms. q must be nonzero.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& value) { return sgn(value); }

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace chord
