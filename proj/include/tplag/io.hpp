#ifndef TPLAG_IO_HPP
#define TPLAG_IO_HPP

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tplag/bd.hpp"
#include "tplag/errors.hpp"
#include "tplag/lagrange_ls.hpp"
#include "tplag/matrix.hpp"
#include "tplag/node_config.hpp"
#include "tplag/oracle/exact.hpp"
#include "tplag/oracle/highprec.hpp"

namespace tplag {

// Shortest decimal that round-trips to the same double (never more than 17
// significant digits).
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Correctly rounded double of a decimal or "p/q" string, through the exact
// rational value.
inline double parse_number(std::string_view s) {
  const ExactScalar r = parse_exact(s);
  return static_cast<double>(BigFloat(numerator(r)) / BigFloat(denominator(r)));
}

// Node/data input file:
//   { "x": [decimal or "p/q" strings], "t": [...],
//     "b": [...] (optional), "change_of_variable": {"a0": ..., "a1": ...} (optional) }
// The strings are kept so exact-arithmetic consumers can parse the same values.
struct ProblemFile {
  std::vector<std::string> x_str, t_str, b_str;
  std::vector<double> x, t, b;
  std::optional<ChangeOfVariable> change_of_variable;

  NodeConfig config() const { return NodeConfig(x, t); }

  ExactVector exact_x() const { return parse_all(x_str); }
  ExactVector exact_t() const { return parse_all(t_str); }
  ExactVector exact_b() const { return parse_all(b_str); }

 private:
  static ExactVector parse_all(const std::vector<std::string>& v) {
    ExactVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = parse_exact(v[i]);
    return out;
  }
};

namespace io_detail {

inline std::vector<std::string> string_array(const nlohmann::json& j, const char* key) {
  std::vector<std::string> out;
  for (const auto& v : j.at(key)) {
    if (v.is_string())
      out.push_back(v.get<std::string>());
    else
      out.push_back(v.dump());
  }
  return out;
}

inline std::vector<double> to_doubles(const std::vector<std::string>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = parse_number(v[i]);
  return out;
}

}  // namespace io_detail

inline ProblemFile parse_problem(const nlohmann::json& j) {
  ProblemFile pf;
  pf.x_str = io_detail::string_array(j, "x");
  pf.t_str = io_detail::string_array(j, "t");
  pf.x = io_detail::to_doubles(pf.x_str);
  pf.t = io_detail::to_doubles(pf.t_str);
  if (j.contains("b")) {
    pf.b_str = io_detail::string_array(j, "b");
    pf.b = io_detail::to_doubles(pf.b_str);
    if (pf.b.size() != pf.t.size())
      throw DimensionMismatch("problem file: |b| must equal |t|");
  }
  if (j.contains("change_of_variable")) {
    const auto& c = j.at("change_of_variable");
    ChangeOfVariable cov;
    cov.a0 = c.at("a0").is_string() ? parse_number(c.at("a0").get<std::string>())
                                    : c.at("a0").get<double>();
    cov.a1 = c.at("a1").is_string() ? parse_number(c.at("a1").get<std::string>())
                                    : c.at("a1").get<double>();
    pf.change_of_variable = cov;
  }
  return pf;
}

inline ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open problem file: " + path);
  nlohmann::json j;
  in >> j;
  return parse_problem(j);
}

// "i,j,value,kind" with 1-based indices; kind distinguishes diagonal pivots
// from the two multiplier families.
inline void write_bd_csv(std::ostream& os, const BDMatrix& bd) {
  os << "i,j,value,kind\n";
  for (std::size_t i = 0; i < bd.rows(); ++i)
    for (std::size_t j = 0; j < bd.cols(); ++j) {
      const char* kind = i == j ? "pivot" : (i > j ? "mult" : "multT");
      os << (i + 1) << ',' << (j + 1) << ',' << format_double(bd.entries()(i, j)) << ',' << kind
         << '\n';
    }
}

inline void write_matrix_csv(std::ostream& os, const Matrix<double>& m) {
  os << "i,j,value\n";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (i + 1) << ',' << (j + 1) << ',' << format_double(m(i, j)) << '\n';
}

inline nlohmann::json fit_to_json(const FitModel& model) {
  nlohmann::json j;
  j["y_bar"] = model.y_bar();
  if (model.c_bar())
    j["c_bar"] = *model.c_bar();
  else
    j["c_bar"] = nullptr;
  j["residual_norm"] = model.residual_norm();
  j["change_of_variable"] = {{"a0", model.change_of_variable().a0},
                             {"a1", model.change_of_variable().a1}};
  return j;
}

}  // namespace tplag

#endif  // TPLAG_IO_HPP
