#pragma once

// JSON serialization of series, named forms, matrices and check reports.
//
// Rationals are written as "num/den" strings in lowest terms ("7" for integers),
// so round-trips are exact.

#include <json.hpp>

#include "modforms/forms.hpp"
#include "modforms/matrix.hpp"
#include "modforms/numeric.hpp"

namespace modforms {

using Json = nlohmann::json;

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) fail(Errc::bad_input, "expected a rational string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

inline Json qexp_json(const QExp& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(rational_json(c));
  return {{"offset_num", f.offset_num()}, {"offset_den", f.offset_den()}, {"prec", f.prec()}, {"coeffs", coeffs}};
}

inline QExp qexp_from_json(const Json& j) {
  try {
    std::vector<Rational> c;
    for (const auto& e : j.at("coeffs")) c.push_back(rational_from_json(e));
    if (static_cast<long>(c.size()) != j.at("prec").get<long>()) fail(Errc::bad_input, "prec does not match coeffs");
    long den = j.at("offset_den").get<long>();
    if (den <= 0) fail(Errc::bad_input, "offset_den must be positive");
    return QExp(std::move(c), j.at("offset_num").get<long>(), den);
  } catch (const Json::exception& e) {
    fail(Errc::bad_input, std::string("malformed series JSON: ") + e.what());
  }
}

inline Json form_json(const NamedForm& f) {
  return {{"name", f.name},
          {"weight2", f.desc.weight2},
          {"level", f.desc.level},
          {"character", f.desc.character},
          {"cuspidal", f.desc.cuspidal},
          {"series", qexp_json(f.series)}};
}

inline NamedForm form_from_json(const Json& j) {
  try {
    NamedForm f;
    f.name = j.at("name").get<std::string>();
    f.desc.weight2 = j.at("weight2").get<long>();
    f.desc.level = j.at("level").get<long>();
    f.desc.character = j.at("character").get<long>();
    f.desc.cuspidal = j.at("cuspidal").get<bool>();
    f.series = qexp_from_json(j.at("series"));
    return f;
  } catch (const Json::exception& e) {
    fail(Errc::bad_input, std::string("malformed form JSON: ") + e.what());
  }
}

/// Row-major array of rows.
inline Json matrix_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (long i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline RatMatrix matrix_from_json(const Json& j) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j) {
    rows.emplace_back();
    for (const auto& e : r) rows.back().push_back(rational_from_json(e));
  }
  return RatMatrix::from_rows(rows);
}

inline Json report_json(const num::CheckReport& r) {
  return {{"check", r.check},
          {"expected", r.expected},
          {"computed", r.computed},
          {"residual", r.residual.to_string(6)},
          {"tolerance", r.tolerance.to_string(3)},
          {"pass", r.pass}};
}

}  // namespace modforms
