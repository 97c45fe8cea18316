#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "relbound.h"

namespace {

struct Matrix {
  rb_matrix* h = nullptr;
  ~Matrix() { rb_matrix_free(h); }
};

struct Str {
  char* s = nullptr;
  ~Str() { rb_string_free(s); }
};

Matrix diag(const std::vector<double>& values) {
  const size_t n = values.size();
  std::vector<double> parts(2 * n * n, 0.0);
  for (size_t i = 0; i < n; ++i) parts[2 * (i * n + i)] = values[i];
  Matrix m;
  REQUIRE(rb_matrix_from_parts(n, n, parts.data(), &m.h) == RB_OK);
  return m;
}

}  // namespace

TEST_CASE("matrix construction and dimensions") {
  const Matrix m = diag({4, 1, 0});
  CHECK(rb_matrix_rows(m.h) == 3);
  CHECK(rb_matrix_cols(m.h) == 3);
  CHECK(rb_matrix_rows(nullptr) == 0);
}

TEST_CASE("eig report through the C surface") {
  const Matrix a = diag({4, 1, 0});
  const Matrix e = diag({0.4, 0.1, 0});
  Str out;
  REQUIRE(rb_eig_report(a.h, e.h, "sqrt", nullptr, nullptr, 0, &out.s) == RB_OK);
  const auto doc = nlohmann::json::parse(out.s);
  CHECK(doc["k"]["value"].get<double>() == doctest::Approx(0.1));
  CHECK(doc["verification"]["holds"].get<bool>());

  int pass = 0;
  REQUIRE(rb_report_all_checks_pass(out.s, &pass) == RB_OK);
  CHECK(pass == 1);
  Str csv;
  REQUIRE(rb_report_csv(out.s, &csv.s) == RB_OK);
  CHECK(std::strncmp(csv.s, "i,lambda", 8) == 0);
}

TEST_CASE("errors surface as status codes with messages") {
  const Matrix a = diag({4, 1});
  const Matrix e = diag({0.4, 0.1, 0.0});
  Str out;
  CHECK(rb_eig_report(a.h, e.h, "sqrt", nullptr, nullptr, 0, &out.s) ==
        RB_ERR_DIMENSION);
  CHECK(std::strlen(rb_last_error()) > 0);
  CHECK(rb_eig_report(a.h, nullptr, "sqrt", nullptr, nullptr, 0, &out.s) ==
        RB_ERR_ARGUMENT);
  CHECK(rb_matrix_read("/nonexistent/file.mtx", nullptr) == RB_ERR_ARGUMENT);
  Matrix missing;
  CHECK(rb_matrix_read("/nonexistent/file.mtx", &missing.h) == RB_ERR_IO);
}

TEST_CASE("gate violations map to their own status") {
  const Matrix a = diag({1, 0});
  const Matrix e = diag({2, 0});
  Str out;
  CHECK(rb_eig_report(a.h, e.h, "sqrt", nullptr, nullptr, 0, &out.s) ==
        RB_ERR_K_TOO_LARGE);
  REQUIRE(rb_eig_report(a.h, e.h, "sqrt", nullptr, nullptr, 1, &out.s) == RB_OK);
}

TEST_CASE("generation, file I/O, and the suite run end to end") {
  const std::string dir =
      (std::filesystem::temp_directory_path() / "relbound_capi").string();
  std::filesystem::create_directories(dir);

  Matrix a, e;
  REQUIRE(rb_gen_instance(
              R"({"n": 5, "rank": 3, "target_k": 0.5, "seed": 3,
                  "spectrum": {"kind": "signed"}})",
              &a.h, &e.h) == RB_OK);
  const std::string a_path = dir + "/a.mtx";
  REQUIRE(rb_matrix_write(a.h, a_path.c_str()) == RB_OK);
  Matrix back;
  REQUIRE(rb_matrix_read(a_path.c_str(), &back.h) == RB_OK);
  CHECK(rb_matrix_rows(back.h) == 5);

  Str sharp;
  REQUIRE(rb_sharp_report(a.h, e.h, &sharp.s) == RB_OK);
  CHECK(nlohmann::json::parse(sharp.s)["op"] == "sharp");

  Str suite;
  int all_passed = 0;
  REQUIRE(rb_suite_run(
              R"({"families": ["k_chain"], "instances": 10, "max_n": 8})",
              &suite.s, &all_passed) == RB_OK);
  CHECK(all_passed == 1);
  std::filesystem::remove_all(dir);
}
