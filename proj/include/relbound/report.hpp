#pragma once

#include <string>

#include "relbound/bounds.hpp"
#include "relbound/congruence.hpp"
#include "relbound/matrix.hpp"
#include "relbound/sharpness.hpp"
#include "relbound/singular.hpp"

namespace relbound {

inline constexpr int kSchemaVersion = 1;

// Structured report documents for the CLI surface. Each builder runs the full
// library pipeline for one subcommand and serializes the result; the CLI and
// in-process callers share these functions so outputs are byte-identical.

/// Eigenvalue bound report + verification. k_formula is one of
/// "sqrt", "pinv", "general"; a1/a2 feed the general factorization.
std::string eig_report_json(const HermitianMatrix& a, const HermitianMatrix& e,
                            const std::string& k_formula, const Matrix* a1,
                            const Matrix* a2, bool psd_mode);

/// Singular-value bound report + verification.
std::string sv_report_json(const Matrix& a, const Matrix& e, bool polar_k);

/// Per-index sharpness verdicts.
std::string sharp_report_json(const HermitianMatrix& a,
                              const HermitianMatrix& e);

/// Admissibility + k-invariance check.
std::string cong_report_json(const HermitianMatrix& a, const HermitianMatrix& e,
                             const Matrix& d);

/// True when the report document contains no failed check (drives the CLI
/// exit code).
bool report_all_checks_pass(const std::string& json_text);

/// Per-index CSV table for a report document (eig and sv reports).
std::string report_csv(const std::string& json_text);

}  // namespace relbound
