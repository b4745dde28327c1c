#ifndef TPLAG_ORACLE_REFDATA_HPP
#define TPLAG_ORACLE_REFDATA_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tplag/errors.hpp"
#include "tplag/oracle/exact.hpp"
#include "tplag/oracle/highprec.hpp"

namespace tplag {

// Bundled reference solutions: exact rationals (numerator/denominator string
// pairs) for the rational-node instance, 100-digit decimal strings for the
// irrational-node instance. Generated once by the tplag_refdata tool so tests
// and the reproduction command run offline.

struct Example1Ref {
  ExactVector c_bar_1, c_bar_2;
  ExactMatrix mp_inverse_L;
  ExactMatrix projection;
  double kappa2 = 0.0;
};

struct Example2Ref {
  BigVector x, t, b;
  std::string a0, a1;
  BigVector y_bar;
  BigVector projection_vector;
};

// Directory holding the bundled data; TPLAG_REFDATA overrides.
inline std::string refdata_dir() {
  if (const char* env = std::getenv("TPLAG_REFDATA")) return env;
#ifdef TPLAG_DATA_DIR
  if (std::filesystem::exists(TPLAG_DATA_DIR)) return TPLAG_DATA_DIR;
#endif
  return "data";
}

namespace refdata_detail {

inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingReference("MissingReference: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

inline nlohmann::json rat_to_json(const ExactScalar& r) {
  return nlohmann::json::array({numerator(r).str(), denominator(r).str()});
}

inline ExactScalar rat_from_json(const nlohmann::json& j) {
  return ExactScalar(BigInt(j.at(0).get<std::string>()), BigInt(j.at(1).get<std::string>()));
}

inline nlohmann::json rat_vector_to_json(const ExactVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : v) out.push_back(rat_to_json(r));
  return out;
}

inline ExactVector rat_vector_from_json(const nlohmann::json& j) {
  ExactVector out;
  for (const auto& e : j) out.push_back(rat_from_json(e));
  return out;
}

inline nlohmann::json rat_matrix_to_json(const ExactMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ExactMatrix rat_matrix_from_json(const nlohmann::json& j) {
  const std::size_t rows = j.size(), cols = rows ? j.at(0).size() : 0;
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rat_from_json(j.at(i).at(c));
  return m;
}

inline nlohmann::json big_vector_to_json(const BigVector& v, unsigned digits) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(bigfloat_to_string(x, digits));
  return out;
}

inline BigVector big_vector_from_json(const nlohmann::json& j) {
  BigVector out;
  for (const auto& e : j) out.push_back(bigfloat_from_string(e.get<std::string>()));
  return out;
}

}  // namespace refdata_detail

inline void save_example1_ref(const Example1Ref& ref, const std::string& path) {
  using namespace refdata_detail;
  nlohmann::json j;
  j["example"] = 1;
  j["c_bar_1"] = rat_vector_to_json(ref.c_bar_1);
  j["c_bar_2"] = rat_vector_to_json(ref.c_bar_2);
  j["mp_inverse_L"] = rat_matrix_to_json(ref.mp_inverse_L);
  j["projection"] = rat_matrix_to_json(ref.projection);
  j["kappa2"] = ref.kappa2;
  std::ofstream out(path);
  out << j.dump() << '\n';
}

inline Example1Ref load_example1_ref(const std::string& dir = refdata_dir()) {
  using namespace refdata_detail;
  const nlohmann::json j = load_json(dir + "/example1_ref.json");
  Example1Ref ref;
  ref.c_bar_1 = rat_vector_from_json(j.at("c_bar_1"));
  ref.c_bar_2 = rat_vector_from_json(j.at("c_bar_2"));
  ref.mp_inverse_L = rat_matrix_from_json(j.at("mp_inverse_L"));
  ref.projection = rat_matrix_from_json(j.at("projection"));
  ref.kappa2 = j.at("kappa2").get<double>();
  return ref;
}

inline void save_example2_ref(const Example2Ref& ref, const std::string& path,
                              unsigned digits = 105) {
  using namespace refdata_detail;
  nlohmann::json j;
  j["example"] = 2;
  j["digits"] = digits;
  j["x"] = big_vector_to_json(ref.x, digits);
  j["t"] = big_vector_to_json(ref.t, digits);
  j["b"] = big_vector_to_json(ref.b, digits);
  j["a0"] = ref.a0;
  j["a1"] = ref.a1;
  j["y_bar"] = big_vector_to_json(ref.y_bar, digits);
  j["projection_vector"] = big_vector_to_json(ref.projection_vector, digits);
  std::ofstream out(path);
  out << j.dump() << '\n';
}

inline Example2Ref load_example2_ref(const std::string& dir = refdata_dir()) {
  using namespace refdata_detail;
  const nlohmann::json j = load_json(dir + "/example2_ref.json");
  Example2Ref ref;
  ref.x = big_vector_from_json(j.at("x"));
  ref.t = big_vector_from_json(j.at("t"));
  ref.b = big_vector_from_json(j.at("b"));
  ref.a0 = j.at("a0").get<std::string>();
  ref.a1 = j.at("a1").get<std::string>();
  ref.y_bar = big_vector_from_json(j.at("y_bar"));
  ref.projection_vector = big_vector_from_json(j.at("projection_vector"));
  return ref;
}

}  // namespace tplag

#endif  // TPLAG_ORACLE_REFDATA_HPP
