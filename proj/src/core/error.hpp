#ifndef JOINTKIT_ERROR_HPP
#define JOINTKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace jointkit {

enum class errc {
  invalid_argument,   // bad shapes, mismatched fields, preconditions
  division_by_zero,
  not_prime,
  parse_error,
  cap_exceeded,       // central size caps (lines, tuples, degree, enumeration)
  degree_exhausted,   // no annihilator within the degree budget
  assertion_failed,   // an exact assertion requested by a run did not hold
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace jointkit

#endif
