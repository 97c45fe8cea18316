// Command-line surface over the C API. Exit codes: 0 all checks pass,
// 1 a bound/verification check failed, 2 input or usage error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "relbound.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct MatrixHandle {
  rb_matrix* m = nullptr;
  ~MatrixHandle() { rb_matrix_free(m); }
};

struct StringHandle {
  char* s = nullptr;
  ~StringHandle() { rb_string_free(s); }
};

[[noreturn]] void die(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(kExitUsage);
}

void check(rb_status status) {
  if (status != RB_OK) die(rb_last_error());
}

MatrixHandle load(const std::string& path) {
  MatrixHandle h;
  check(rb_matrix_read(path.c_str(), &h.m));
  return h;
}

/// Prints the document (or writes it to json_path) and converts the embedded
/// verdicts into the process exit code.
int emit(const char* json_text, const std::string& json_path, bool csv) {
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) die("cannot write " + json_path);
    out << json_text << "\n";
  }
  if (csv) {
    StringHandle table;
    check(rb_report_csv(json_text, &table.s));
    std::cout << table.s;
  } else if (json_path.empty()) {
    std::cout << json_text << "\n";
  }
  int pass = 0;
  check(rb_report_all_checks_pass(json_text, &pass));
  return pass ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative spectral perturbation bounds"};
  app.require_subcommand(1);

  std::string a_path, e_path, d_path, a1_path, a2_path;
  std::string k_formula = "sqrt";
  std::string json_path;
  bool psd = false, polar_k = false, csv = false;

  auto* eig = app.add_subcommand("eig", "Eigenvalue bound report");
  eig->add_option("--a", a_path, "Matrix A (.mtx)")->required();
  eig->add_option("--e", e_path, "Perturbation E (.mtx)")->required();
  eig->add_option("--k-formula", k_formula, "sqrt, pinv, or general");
  eig->add_option("--a1", a1_path, "Left factor (general formula)");
  eig->add_option("--a2", a2_path, "Right factor (general formula)");
  eig->add_flag("--psd", psd, "PSD mode: accept any k >= 0");
  eig->add_option("--json", json_path, "Write the report here");
  eig->add_flag("--csv", csv, "Print the per-index table as CSV");

  auto* sv = app.add_subcommand("sv", "Singular-value bound report");
  sv->add_option("--a", a_path, "Matrix A (.mtx)")->required();
  sv->add_option("--e", e_path, "Perturbation E (.mtx)")->required();
  sv->add_flag("--polar-k", polar_k, "Square-matrix polar constant");
  sv->add_option("--json", json_path, "Write the report here");
  sv->add_flag("--csv", csv, "Print the per-index table as CSV");

  auto* sharp = app.add_subcommand("sharp", "Sharpness verdicts");
  sharp->add_option("--a", a_path, "Matrix A (.mtx)")->required();
  sharp->add_option("--e", e_path, "Perturbation E (.mtx)")->required();
  sharp->add_option("--json", json_path, "Write the report here");

  auto* cong = app.add_subcommand("cong", "Congruence admissibility + invariance");
  cong->add_option("--a", a_path, "Matrix A (.mtx)")->required();
  cong->add_option("--e", e_path, "Perturbation E (.mtx)")->required();
  cong->add_option("--d", d_path, "Transformation D (.mtx)")->required();
  cong->add_option("--json", json_path, "Write the report here");

  std::size_t gen_n = 0, gen_rank = 0, gen_mult = 1;
  std::optional<std::size_t> gen_m;
  double gen_lo = 1e-3, gen_hi = 1e3, gen_value = 1.0, gen_mix = 0.5;
  double target_k = 0.5;
  std::uint64_t seed = 1;
  std::string spectrum = "log_uniform", out_prefix;
  std::vector<double> gen_values;
  bool gen_psd = false;

  auto* gen = app.add_subcommand("gen", "Generate an instance pair");
  gen->add_option("--n", gen_n, "Columns (and rows when square)")->required();
  gen->add_option("--m", gen_m, "Rows (rectangular instances)");
  gen->add_option("--rank", gen_rank, "Rank")->required();
  gen->add_option("--spectrum", spectrum,
                  "explicit, log_uniform, clustered, or signed");
  gen->add_option("--values", gen_values, "Explicit spectrum entries");
  gen->add_option("--lo", gen_lo, "Magnitude range low end");
  gen->add_option("--hi", gen_hi, "Magnitude range high end");
  gen->add_option("--value", gen_value, "Clustered value");
  gen->add_option("--mult", gen_mult, "Clustered multiplicity");
  gen->add_option("--mix", gen_mix, "Negative fraction (signed)");
  gen->add_option("--target-k", target_k, "Bound constant of the pair");
  gen->add_flag("--psd", gen_psd, "Positive semi-definite instance");
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--out-prefix", out_prefix, "Writes <p>_A.mtx, <p>_E.mtx")
      ->required();

  std::string config_path;
  std::size_t instances = 200;
  std::uint64_t suite_seed = 1;

  auto* suite = app.add_subcommand("suite", "Property-suite run");
  suite->add_option("--config", config_path, "Suite config (JSON)");
  suite->add_option("--instances", instances, "Instances per family");
  suite->add_option("--seed", suite_seed, "Seed");
  suite->add_option("--json", json_path, "Write the summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2; --help exits 0
  }

  if (eig->parsed()) {
    const MatrixHandle a = load(a_path), e = load(e_path);
    MatrixHandle a1, a2;
    if (k_formula == "general") {
      if (a1_path.empty() || a2_path.empty())
        die("--k-formula general needs --a1 and --a2");
      check(rb_matrix_read(a1_path.c_str(), &a1.m));
      check(rb_matrix_read(a2_path.c_str(), &a2.m));
    }
    StringHandle out;
    check(rb_eig_report(a.m, e.m, k_formula.c_str(), a1.m, a2.m, psd, &out.s));
    return emit(out.s, json_path, csv);
  }
  if (sv->parsed()) {
    const MatrixHandle a = load(a_path), e = load(e_path);
    StringHandle out;
    check(rb_sv_report(a.m, e.m, polar_k, &out.s));
    return emit(out.s, json_path, csv);
  }
  if (sharp->parsed()) {
    const MatrixHandle a = load(a_path), e = load(e_path);
    StringHandle out;
    check(rb_sharp_report(a.m, e.m, &out.s));
    return emit(out.s, json_path, false);
  }
  if (cong->parsed()) {
    const MatrixHandle a = load(a_path), e = load(e_path), d = load(d_path);
    StringHandle out;
    check(rb_cong_report(a.m, e.m, d.m, &out.s));
    return emit(out.s, json_path, false);
  }
  if (gen->parsed()) {
    nlohmann::json spec;
    spec["n"] = gen_n;
    if (gen_m) spec["m"] = *gen_m;
    spec["rank"] = gen_rank;
    spec["target_k"] = target_k;
    spec["psd"] = gen_psd;
    spec["seed"] = seed;
    spec["spectrum"]["kind"] = spectrum;
    if (!gen_values.empty()) spec["spectrum"]["values"] = gen_values;
    spec["spectrum"]["lo"] = gen_lo;
    spec["spectrum"]["hi"] = gen_hi;
    spec["spectrum"]["value"] = gen_value;
    spec["spectrum"]["mult"] = gen_mult;
    spec["spectrum"]["mix"] = gen_mix;
    MatrixHandle a, e;
    check(rb_gen_instance(spec.dump().c_str(), &a.m, &e.m));
    check(rb_matrix_write(a.m, (out_prefix + "_A.mtx").c_str()));
    check(rb_matrix_write(e.m, (out_prefix + "_E.mtx").c_str()));
    return kExitPass;
  }
  if (suite->parsed()) {
    nlohmann::json config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) die("cannot read " + config_path);
      try {
        in >> config;
      } catch (const std::exception& ex) {
        die(ex.what());
      }
    }
    if (!config.contains("families")) config["families"] = "all";
    if (suite->count("--instances")) config["instances"] = instances;
    if (suite->count("--seed")) config["seed"] = suite_seed;
    StringHandle out;
    int all_passed = 0;
    check(rb_suite_run(config.dump().c_str(), &out.s, &all_passed));
    if (!json_path.empty()) {
      std::ofstream outf(json_path);
      if (!outf) die("cannot write " + json_path);
      outf << out.s << "\n";
    } else {
      std::cout << out.s << "\n";
    }
    return all_passed ? kExitPass : kExitViolation;
  }
  return kExitUsage;
}
