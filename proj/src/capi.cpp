#include "relbound.h"

#include <cstring>
#include <new>
#include <string>

#include "relbound/errors.hpp"
#include "relbound/generate.hpp"
#include "relbound/matrix.hpp"
#include "relbound/mmio.hpp"
#include "relbound/report.hpp"
#include "relbound/suite.hpp"

struct rb_matrix {
  relbound::Matrix m;
};

namespace {

thread_local std::string g_last_error;

rb_status map_code(relbound::ErrorCode code) {
  using EC = relbound::ErrorCode;
  switch (code) {
    case EC::DimensionMismatch: return RB_ERR_DIMENSION;
    case EC::NoConvergence: return RB_ERR_NO_CONVERGENCE;
    case EC::KTooLarge: return RB_ERR_K_TOO_LARGE;
    case EC::NotPsd: return RB_ERR_NOT_PSD;
    case EC::FactorizationInvalid: return RB_ERR_FACTORIZATION;
    case EC::PolarConditionInvalid: return RB_ERR_POLAR_CONDITION;
    case EC::SingularInput: return RB_ERR_SINGULAR_INPUT;
    case EC::IndexOutOfRange: return RB_ERR_INDEX;
    case EC::ZeroMatrix: return RB_ERR_ZERO_MATRIX;
    case EC::NotInvertible: return RB_ERR_NOT_INVERTIBLE;
    case EC::NotAdmissible: return RB_ERR_NOT_ADMISSIBLE;
    case EC::NotSquare: return RB_ERR_NOT_SQUARE;
    case EC::OrientationError: return RB_ERR_ORIENTATION;
    case EC::ParseError: return RB_ERR_PARSE;
    case EC::SymmetryViolation: return RB_ERR_SYMMETRY;
    case EC::SpecInvalid: return RB_ERR_SPEC;
    case EC::IoError: return RB_ERR_IO;
    case EC::InvalidArgument: return RB_ERR_ARGUMENT;
  }
  return RB_ERR_INTERNAL;
}

/// Runs fn, translating exceptions into status codes + the thread-local
/// message.
template <typename Fn>
rb_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return RB_OK;
  } catch (const relbound::Error& err) {
    g_last_error = err.what();
    return map_code(err.code());
  } catch (const std::exception& ex) {
    g_last_error = ex.what();
    return RB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RB_ERR_INTERNAL;
  }
}

rb_status require(bool cond, const char* message) {
  if (cond) return RB_OK;
  g_last_error = message;
  return RB_ERR_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

relbound::HermitianMatrix as_hermitian(const rb_matrix* m) {
  return relbound::HermitianMatrix(m->m, 1e-10);
}

}  // namespace

extern "C" {

const char* rb_last_error(void) { return g_last_error.c_str(); }

rb_status rb_matrix_read(const char* path, rb_matrix** out) {
  if (rb_status s = require(path && out, "path and out must be non-null"))
    return s;
  return guarded([&] { *out = new rb_matrix{relbound::read_matrix(path)}; });
}

rb_status rb_matrix_write(const rb_matrix* m, const char* path) {
  if (rb_status s = require(m && path, "matrix and path must be non-null"))
    return s;
  return guarded([&] { relbound::write_matrix(path, m->m); });
}

rb_status rb_matrix_from_parts(size_t rows, size_t cols, const double* data,
                               rb_matrix** out) {
  if (rb_status s = require(data && out, "data and out must be non-null"))
    return s;
  return guarded([&] {
    relbound::Matrix m(rows, cols);
    for (size_t j = 0; j < cols; ++j)
      for (size_t i = 0; i < rows; ++i) {
        const size_t at = 2 * (j * rows + i);
        m(i, j) = relbound::cxd(data[at], data[at + 1]);
      }
    *out = new rb_matrix{std::move(m)};
  });
}

size_t rb_matrix_rows(const rb_matrix* m) { return m ? m->m.rows() : 0; }
size_t rb_matrix_cols(const rb_matrix* m) { return m ? m->m.cols() : 0; }

void rb_matrix_free(rb_matrix* m) { delete m; }
void rb_string_free(char* s) { delete[] s; }

rb_status rb_eig_report(const rb_matrix* a, const rb_matrix* e,
                        const char* k_formula, const rb_matrix* a1,
                        const rb_matrix* a2, int psd_mode, char** json_out) {
  if (rb_status s =
          require(a && e && k_formula && json_out, "null argument"))
    return s;
  return guarded([&] {
    *json_out = dup_string(relbound::eig_report_json(
        as_hermitian(a), as_hermitian(e), k_formula, a1 ? &a1->m : nullptr,
        a2 ? &a2->m : nullptr, psd_mode != 0));
  });
}

rb_status rb_sv_report(const rb_matrix* a, const rb_matrix* e, int polar_k,
                       char** json_out) {
  if (rb_status s = require(a && e && json_out, "null argument")) return s;
  return guarded([&] {
    *json_out =
        dup_string(relbound::sv_report_json(a->m, e->m, polar_k != 0));
  });
}

rb_status rb_sharp_report(const rb_matrix* a, const rb_matrix* e,
                          char** json_out) {
  if (rb_status s = require(a && e && json_out, "null argument")) return s;
  return guarded([&] {
    *json_out = dup_string(
        relbound::sharp_report_json(as_hermitian(a), as_hermitian(e)));
  });
}

rb_status rb_cong_report(const rb_matrix* a, const rb_matrix* e,
                         const rb_matrix* d, char** json_out) {
  if (rb_status s = require(a && e && d && json_out, "null argument"))
    return s;
  return guarded([&] {
    *json_out = dup_string(
        relbound::cong_report_json(as_hermitian(a), as_hermitian(e), d->m));
  });
}

rb_status rb_gen_instance(const char* spec_json, rb_matrix** a_out,
                          rb_matrix** e_out) {
  if (rb_status s = require(spec_json && a_out && e_out, "null argument"))
    return s;
  return guarded([&] {
    const relbound::InstanceSpec spec =
        relbound::instance_spec_from_json(spec_json);
    const double target = spec.target_k.value_or(0.5);
    if (spec.m) {
      relbound::Matrix a = relbound::gen_rectangular(spec);
      relbound::Matrix e =
          relbound::gen_rect_perturbation(a, target, spec.seed + 1);
      *a_out = new rb_matrix{std::move(a)};
      *e_out = new rb_matrix{std::move(e)};
    } else {
      relbound::HermitianMatrix a = relbound::gen_hermitian(spec);
      relbound::HermitianMatrix e =
          relbound::gen_perturbation(a, target, spec.seed + 1);
      *a_out = new rb_matrix{a.matrix()};
      *e_out = new rb_matrix{e.matrix()};
    }
  });
}

rb_status rb_suite_run(const char* config_json, char** json_out,
                       int* all_passed_out) {
  if (rb_status s = require(config_json && json_out, "null argument"))
    return s;
  return guarded([&] {
    const relbound::SuiteSummary summary =
        relbound::run_suite(relbound::SuiteConfig::from_json(config_json));
    *json_out = dup_string(summary.to_json());
    if (all_passed_out) *all_passed_out = summary.all_passed ? 1 : 0;
  });
}

rb_status rb_report_all_checks_pass(const char* json_text, int* pass_out) {
  if (rb_status s = require(json_text && pass_out, "null argument")) return s;
  return guarded([&] {
    *pass_out = relbound::report_all_checks_pass(json_text) ? 1 : 0;
  });
}

rb_status rb_report_csv(const char* json_text, char** csv_out) {
  if (rb_status s = require(json_text && csv_out, "null argument")) return s;
  return guarded(
      [&] { *csv_out = dup_string(relbound::report_csv(json_text)); });
}

}  // extern "C"
