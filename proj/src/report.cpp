#include "relbound/report.hpp"

#include <sstream>

#include <json.hpp>

#include "relbound/config.hpp"
#include "relbound/svd.hpp"

namespace relbound {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json k_to_json(const KEstimate& k) {
  return ordered_json{{"value", k.value},
                      {"formula", k_formula_name(k.formula)},
                      {"admissible", k.admissible}};
}

ordered_json verdict_to_json(const Verdict& v) {
  return ordered_json{{"holds", v.holds},
                      {"worst_violation", v.worst_violation}};
}

}  // namespace

std::string eig_report_json(const HermitianMatrix& a, const HermitianMatrix& e,
                            const std::string& k_formula, const Matrix* a1,
                            const Matrix* a2, bool psd_mode) {
  KEstimate k;
  if (k_formula == "sqrt") {
    k = k_sqrt(a, e);
  } else if (k_formula == "pinv") {
    k = k_pinv(a, e, PinvSide::Left);
  } else if (k_formula == "general") {
    if (a1 == nullptr || a2 == nullptr)
      fail(ErrorCode::InvalidArgument, "general formula needs factors A1, A2");
    k = k_general(a, e, *a1, *a2);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown k formula '" + k_formula + "'");
  }

  const EigenBoundReport report = eigen_bounds(a, e, k, psd_mode);
  const Verdict verdict = verify_eigen_bounds(a, e, report);

  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["op"] = "eig";
  doc["n"] = report.n;
  doc["r"] = report.r;
  doc["psd_mode"] = report.psd_mode;
  doc["k"] = k_to_json(report.k);
  doc["entries"] = ordered_json::array();
  for (const auto& entry : report.entries)
    doc["entries"].push_back(ordered_json{{"i", entry.index},
                                          {"lambda", entry.lambda},
                                          {"lower", entry.lower},
                                          {"upper", entry.upper},
                                          {"upper_index", entry.upper_index}});
  doc["verification"] = verdict_to_json(verdict);
  return doc.dump(2);
}

std::string sv_report_json(const Matrix& a, const Matrix& e, bool polar_k) {
  const SingularBoundReport report = singular_bounds(a, e);
  const Verdict verdict = verify_singular_bounds(a, e, report);

  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["op"] = "sv";
  doc["m"] = report.m;
  doc["n"] = report.n;
  doc["r"] = report.r;
  doc["k"] = k_to_json(report.k);
  if (polar_k) {
    const KEstimate kp = k_singular_polar(a, e);
    doc["k_polar"] = k_to_json(kp);
    doc["k_polar_agreement"] =
        std::abs(kp.value - report.k.value) /
        std::max(report.k.value, tol::gap_floor);
  }
  doc["upper_entries"] = ordered_json::array();
  for (const auto& entry : report.upper_entries)
    doc["upper_entries"].push_back(
        ordered_json{{"i", entry.index},
                     {"sigma", entry.sigma},
                     {"ceiling", entry.ceiling},
                     {"target_index", entry.target_index}});
  doc["lower_entries"] = ordered_json::array();
  for (const auto& entry : report.lower_entries)
    doc["lower_entries"].push_back(ordered_json{{"i", entry.index},
                                                {"sigma", entry.sigma},
                                                {"floor", entry.floor}});
  doc["verification"] = verdict_to_json(verdict);
  return doc.dump(2);
}

std::string sharp_report_json(const HermitianMatrix& a,
                              const HermitianMatrix& e) {
  const std::vector<SharpnessVerdict> verdicts = sharpness_report(a, e);

  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["op"] = "sharp";
  doc["n"] = a.size();
  doc["verdicts"] = ordered_json::array();
  bool sufficiency_ok = true;
  for (const auto& v : verdicts) {
    if (v.condition_met && !v.sharper) sufficiency_ok = false;
    doc["verdicts"].push_back(
        ordered_json{{"i", v.index},
                     {"weyl_radius", v.weyl_radius},
                     {"relative_radius", v.relative_radius},
                     {"condition", sharp_condition_name(v.condition)},
                     {"condition_met", v.condition_met},
                     {"sharper", v.sharper}});
  }
  doc["sufficiency_holds"] = sufficiency_ok;
  return doc.dump(2);
}

std::string cong_report_json(const HermitianMatrix& a, const HermitianMatrix& e,
                             const Matrix& d) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["op"] = "cong";
  const SpectralDecomposition dec = hermitian_eig(a);
  CongruenceCheck check = check_admissible(d, dec);
  doc["commute_residual"] = check.commute_residual;
  doc["admissible"] = check.admissible;
  if (check.admissible) {
    check = k_invariance(a, e, d);
    doc["k_original"] = check.k_original;
    doc["k_transformed"] = check.k_transformed;
    doc["invariance_gap"] = check.invariance_gap;
    doc["invariant"] = check.invariance_gap <= tol::invariance;
  }
  return doc.dump(2);
}

bool report_all_checks_pass(const std::string& json_text) {
  const json doc = json::parse(json_text);
  if (doc.contains("verification"))
    return doc["verification"]["holds"].get<bool>();
  if (doc["op"] == "sharp") return doc["sufficiency_holds"].get<bool>();
  if (doc["op"] == "cong") {
    if (!doc["admissible"].get<bool>()) return false;
    return doc["invariant"].get<bool>();
  }
  return true;
}

std::string report_csv(const std::string& json_text) {
  const json doc = json::parse(json_text);
  std::ostringstream os;
  os.precision(17);
  if (doc["op"] == "eig") {
    os << "i,lambda,lower,upper,upper_index\n";
    for (const auto& e : doc["entries"])
      os << e["i"].get<std::size_t>() << "," << e["lambda"].get<double>() << ","
         << e["lower"].get<double>() << "," << e["upper"].get<double>() << ","
         << e["upper_index"].get<std::size_t>() << "\n";
  } else if (doc["op"] == "sv") {
    os << "kind,i,sigma,bound,target_index\n";
    for (const auto& e : doc["upper_entries"])
      os << "upper," << e["i"].get<std::size_t>() << ","
         << e["sigma"].get<double>() << "," << e["ceiling"].get<double>() << ","
         << e["target_index"].get<std::size_t>() << "\n";
    for (const auto& e : doc["lower_entries"])
      os << "lower," << e["i"].get<std::size_t>() << ","
         << e["sigma"].get<double>() << "," << e["floor"].get<double>() << ",\n";
  } else if (doc["op"] == "sharp") {
    os << "i,weyl_radius,relative_radius,condition,condition_met,sharper\n";
    for (const auto& v : doc["verdicts"])
      os << v["i"].get<std::size_t>() << "," << v["weyl_radius"].get<double>()
         << "," << v["relative_radius"].get<double>() << ","
         << v["condition"].get<std::string>() << ","
         << (v["condition_met"].get<bool>() ? 1 : 0) << ","
         << (v["sharper"].get<bool>() ? 1 : 0) << "\n";
  } else {
    fail(ErrorCode::InvalidArgument, "no CSV table for this report");
  }
  return os.str();
}

}  // namespace relbound
