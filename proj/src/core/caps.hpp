#ifndef JOINTKIT_CAPS_HPP
#define JOINTKIT_CAPS_HPP

#include <cstdint>
#include <string>

namespace jointkit {

// Central desk-scale guardrails. Defaults can be overridden by environment
// variables (JOINTKIT_MAX_LINES, JOINTKIT_MAX_TUPLES, JOINTKIT_MAX_DEGREE,
// JOINTKIT_MAX_FIELD_ENUM) or programmatically through the C API.
struct Caps {
  std::int64_t max_lines = 5000;
  std::int64_t max_tuples = 10'000'000;
  std::int64_t max_degree = 32;
  std::int64_t max_field_enum = 65536;
};

Caps& caps();

// Returns false if the name is unknown.
bool set_cap(const std::string& name, std::int64_t value);
std::int64_t get_cap(const std::string& name);

void check_line_cap(std::size_t n_lines);
void check_tuple_budget(std::int64_t spent);
void check_degree_cap(std::int64_t degree);

}  // namespace jointkit

#endif
