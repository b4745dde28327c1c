// Generates the bundled demonstration instances and their reference solutions:
//   instance 1: rational nodes, references in exact arithmetic
//   instance 2: Chebyshev second-kind nodes, references at ~120-digit precision
// Outputs problem files plus reference files into the data directory so the
// test and reproduction paths run offline.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tplag/tplag.hpp"

namespace {

using namespace tplag;

const std::vector<std::string> kX1 = {
    "-14", "-129/10", "-116/10", "-11", "-97/10", "-84/10", "-79/10",
    "-72/10", "-69/10", "-64/10", "-6", "-5", "-44/10", "-35/10",
    "-3", "-3/2", "-9/10", "-4/10", "0", "1/10", "23/100"};

const std::vector<std::string> kT1 = {
    "99/10", "96/10", "92/10", "9", "87/10", "84/10", "81/10", "8",
    "775/100", "75/10", "725/100", "7", "68/10", "63/10", "6", "59/10",
    "56/10", "52/10", "5", "45/10", "41/10", "37/10", "32/10", "3",
    "28/10", "23/10", "21/10", "16/10", "125/100", "1", "8/10"};

const std::vector<std::string> kB1 = {
    "39/100", "-17/10", "-58/10", "-4", "5", "-57/10", "63/10", "-88/100",
    "-39/10", "69/10", "-7", "44/10", "3", "62/10", "-57/10", "-45/10",
    "48/10", "-85/100", "48/10", "24/10", "-4", "28/10", "27/10", "46/100",
    "-27/10", "-12/10", "-11/10", "-15/10", "12/10", "-84/100", "-12/100"};

const std::vector<std::string> kB2 = {
    "85/10", "81/10", "76/10", "74/10", "70/10", "67/10", "64/10", "63/10",
    "60/10", "58/10", "56/10", "53/10", "51/10", "47/10", "45/10", "44/10",
    "41/10", "38/10", "37/10", "33/10", "31/10", "28/10", "25/10", "23/10",
    "22/10", "19/10", "18/10", "15/10", "13/10", "11/10", "97/100"};

void write_problem(const std::string& path, const std::vector<std::string>& x,
                   const std::vector<std::string>& t, const std::vector<std::string>& b,
                   const nlohmann::json& cov = nullptr) {
  nlohmann::json j;
  j["x"] = x;
  j["t"] = t;
  if (!b.empty()) j["b"] = b;
  if (!cov.is_null()) j["change_of_variable"] = cov;
  std::ofstream out(path);
  out << j.dump(1) << '\n';
  std::printf("wrote %s\n", path.c_str());
}

ExactVector parse_all(const std::vector<std::string>& v) {
  ExactVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = parse_exact(v[i]);
  return out;
}

void generate_instance1(const std::string& dir) {
  write_problem(dir + "/example1.json", kX1, kT1, kB1);
  write_problem(dir + "/example1_b2.json", kX1, kT1, kB2);

  const ExactVector x = parse_all(kX1), t = parse_all(kT1);
  const ExactVector b1 = parse_all(kB1), b2 = parse_all(kB2);
  const ExactMatrix l = build_L(x, t);

  Example1Ref ref;
  auto tic = std::chrono::steady_clock::now();
  ref.c_bar_1 = exact_ls_solve(l, b1);
  ref.c_bar_2 = exact_ls_solve(l, b2);
  std::printf("instance 1 exact least squares done (%.1fs)\n",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count());
  tic = std::chrono::steady_clock::now();
  ref.mp_inverse_L = exact_pinv(l);
  std::printf("instance 1 exact pseudoinverse done (%.1fs)\n",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count());
  tic = std::chrono::steady_clock::now();
  ref.projection = exact_projection(l);
  std::printf("instance 1 exact projection done (%.1fs)\n",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count());
  tic = std::chrono::steady_clock::now();
  ref.kappa2 = condition_number_2(l);
  std::printf("instance 1 condition number %.3e (%.1fs)\n", ref.kappa2,
              std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count());
  save_example1_ref(ref, dir + "/example1_ref.json");
  std::printf("wrote %s\n", (dir + "/example1_ref.json").c_str());
}

void generate_instance2(const std::string& dir) {
  const std::size_t n1 = 11, l1 = 21;
  const BigFloat pi = acos(BigFloat(-1));
  Example2Ref ref;
  ref.x.resize(n1);
  ref.t.resize(l1);
  ref.b.resize(l1);
  for (std::size_t j = 0; j < n1; ++j) ref.x[j] = -cos(BigFloat(j) * pi / 10);
  for (std::size_t i = 0; i < l1; ++i) {
    ref.t[i] = cos(BigFloat(i) * pi / 20);
    ref.b[i] = exp(ref.t[i]) * sin(15 * ref.t[i]);
  }
  ref.a0 = "11/5";
  ref.a1 = "1";
  const BigFloat a0 = BigFloat(11) / 5;
  BigVector s(l1);
  for (std::size_t i = 0; i < l1; ++i) s[i] = a0 + ref.t[i];
  const BigMatrix m = build_A(ref.x, s);
  ref.y_bar = big_ls_solve(m, ref.b);
  ref.projection_vector.resize(l1);
  for (std::size_t i = 0; i < l1; ++i) {
    BigFloat acc = 0;
    for (std::size_t j = 0; j < n1; ++j) acc += m(i, j) * ref.y_bar[j];
    ref.projection_vector[i] = acc;
  }
  save_example2_ref(ref, dir + "/example2_ref.json");
  std::printf("wrote %s\n", (dir + "/example2_ref.json").c_str());

  auto strs = [](const BigVector& v) {
    std::vector<std::string> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = bigfloat_to_string(v[i], 36);
    return out;
  };
  write_problem(dir + "/example2.json", strs(ref.x), strs(ref.t), strs(ref.b),
                {{"a0", "11/5"}, {"a1", "1"}});
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir;
  if (argc > 1) {
    dir = argv[1];
  } else {
#ifdef TPLAG_DATA_DIR
    dir = TPLAG_DATA_DIR;
#else
    dir = "data";
#endif
  }
  try {
    generate_instance2(dir);
    generate_instance1(dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "refdata generation failed: %s\n", e.what());
    return 1;
  }
  return 0;
}
