#include "render.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace triad::cli {

namespace {

bool is_operator(const Json& j) { return j.is_object() && j.contains("re") && j.contains("im"); }

std::string scalar(const Json& j) {
  if (j.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(10) << j.get<double>();
    return s.str();
  }
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

std::string operator_shape(const Json& j) {
  std::ostringstream s;
  if (j.contains("dim_a")) {
    s << "operator on C^" << j.at("dim_a").get<int>() << " (x) C^" << j.at("dim_b").get<int>();
  } else if (j.contains("dim")) {
    s << "operator on C^" << j.at("dim").get<int>();
  } else {
    s << j.at("re").size() << " x " << (j.at("re").empty() ? 0 : j.at("re").at(0).size()) << " matrix";
  }
  return s.str();
}

bool numeric_array(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_number(); });
}

void render(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    std::size_t width = 0;
    for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json& v = it.value();
      out << pad << std::left << std::setw(static_cast<int>(width) + 2) << it.key();
      if (is_operator(v)) {
        out << operator_shape(v) << '\n';
      } else if (numeric_array(v)) {
        out << '[';
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar(v[i]);
        out << "]\n";
      } else if (v.is_object() || v.is_array()) {
        out << (v.empty() ? "(none)" : "") << '\n';
        render(v, out, indent + 2);
      } else {
        out << scalar(v) << '\n';
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      const Json& v = j[i];
      out << pad << '[' << i << "] ";
      if (is_operator(v)) {
        out << operator_shape(v) << '\n';
      } else if (v.is_object() || v.is_array()) {
        out << '\n';
        render(v, out, indent + 2);
      } else {
        out << scalar(v) << '\n';
      }
    }
  } else {
    out << pad << scalar(j) << '\n';
  }
}

}  // namespace

void render_text(const Json& report, std::ostream& out) { render(report, out, 0); }

}  // namespace triad::cli
