#include "caps.hpp"

#include <cstdlib>

#include "error.hpp"

namespace jointkit {

namespace {

std::int64_t env_or(const char* name, std::int64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long long parsed = std::strtoll(v, &end, 10);
  if (end == v || *end != '\0' || parsed <= 0) return fallback;
  return parsed;
}

Caps initial_caps() {
  Caps c;
  c.max_lines = env_or("JOINTKIT_MAX_LINES", c.max_lines);
  c.max_tuples = env_or("JOINTKIT_MAX_TUPLES", c.max_tuples);
  c.max_degree = env_or("JOINTKIT_MAX_DEGREE", c.max_degree);
  c.max_field_enum = env_or("JOINTKIT_MAX_FIELD_ENUM", c.max_field_enum);
  return c;
}

}  // namespace

Caps& caps() {
  static Caps c = initial_caps();
  return c;
}

bool set_cap(const std::string& name, std::int64_t value) {
  if (value <= 0) return false;
  Caps& c = caps();
  if (name == "max_lines") c.max_lines = value;
  else if (name == "max_tuples") c.max_tuples = value;
  else if (name == "max_degree") c.max_degree = value;
  else if (name == "max_field_enum") c.max_field_enum = value;
  else return false;
  return true;
}

std::int64_t get_cap(const std::string& name) {
  const Caps& c = caps();
  if (name == "max_lines") return c.max_lines;
  if (name == "max_tuples") return c.max_tuples;
  if (name == "max_degree") return c.max_degree;
  if (name == "max_field_enum") return c.max_field_enum;
  return -1;
}

void check_line_cap(std::size_t n_lines) {
  if (static_cast<std::int64_t>(n_lines) > caps().max_lines)
    fail(errc::cap_exceeded, "line count " + std::to_string(n_lines) + " exceeds cap " +
                                 std::to_string(caps().max_lines));
}

void check_tuple_budget(std::int64_t spent) {
  if (spent > caps().max_tuples)
    fail(errc::cap_exceeded,
         "tuple enumeration exceeds cap " + std::to_string(caps().max_tuples));
}

void check_degree_cap(std::int64_t degree) {
  if (degree > caps().max_degree)
    fail(errc::cap_exceeded, "degree " + std::to_string(degree) + " exceeds cap " +
                                 std::to_string(caps().max_degree));
}

}  // namespace jointkit
