#pragma once

#include "pav/error.hpp"
#include "pav/fourier.hpp"
#include "pav/matrix.hpp"
#include "pav/moduli.hpp"
#include "pav/polarization.hpp"
#include "pav/torus.hpp"
#include "pav/type_vector.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pav {

using nlohmann::json;

// Canonical JSON: objects with sorted keys (nlohmann's default ordering),
// arbitrary-magnitude integers as decimal strings, two-space indentation and
// a trailing newline. Fixtures rely on the byte-level stability.

inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline Int int_from_string(const std::string& s) {
  if (s.empty()) throw error(errc::invalid_input, "empty integer literal");
  std::size_t start = (s[0] == '-') ? 1 : 0;
  if (start == s.size())
    throw error(errc::invalid_input, "bad integer literal: " + s);
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw error(errc::invalid_input, "bad integer literal: " + s);
  return Int(s);
}

inline json type_to_json(const TypeVector& t) {
  json a = json::array();
  for (const Int& x : t.d) a.push_back(x.str());
  return a;
}

inline TypeVector type_from_json(const json& j) {
  if (!j.is_array())
    throw error(errc::invalid_input, "type must be an array of decimal strings");
  std::vector<Int> d;
  for (const auto& x : j) {
    if (x.is_string())
      d.push_back(int_from_string(x.get<std::string>()));
    else if (x.is_number_integer())
      d.push_back(Int(x.get<long long>()));
    else
      throw error(errc::invalid_input, "type entries must be integers");
  }
  return validate_type(std::move(d));
}

inline json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw error(errc::invalid_input, "matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0)
    throw error(errc::invalid_input, "matrix rows must be nonempty arrays");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw error(errc::invalid_input, "matrix rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k) {
      const auto& x = j[i][k];
      if (x.is_string())
        m(i, k) = int_from_string(x.get<std::string>());
      else if (x.is_number_integer())
        m(i, k) = Int(x.get<long long>());
      else
        throw error(errc::invalid_input, "matrix entries must be integers");
    }
  }
  return m;
}

inline json polarization_to_json(const PolarizationForm& p) {
  json j;
  j["g"] = p.genus();
  j["E"] = matrix_to_json(p.matrix());
  return j;
}

inline PolarizationForm polarization_from_json(const json& j) {
  if (!j.is_object() || !j.contains("E"))
    throw error(errc::invalid_input, "expected an object with an \"E\" field");
  IntMatrix e = matrix_from_json(j.at("E"));
  if (j.contains("g")) {
    const std::size_t g = j.at("g").get<std::size_t>();
    if (e.rows() != 2 * g)
      throw error(errc::invalid_input, "\"g\" disagrees with the size of E");
  }
  return PolarizationForm(std::move(e));
}

inline json real_matrix_to_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline RMatrix real_matrix_from_json(const json& j, std::size_t rows,
                                     std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw error(errc::invalid_input, "bad real matrix shape");
  RMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw error(errc::invalid_input, "bad real matrix shape");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number())
        throw error(errc::invalid_input, "real matrix entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          j[i][k].get<double>();
    }
  }
  return m;
}

inline json torus_to_json(const PolarizedTorus& t) {
  json j = polarization_to_json(t.form);
  j["pi_re"] = real_matrix_to_json(t.periods.pi.real());
  j["pi_im"] = real_matrix_to_json(t.periods.pi.imag());
  return j;
}

inline PolarizedTorus torus_from_json(const json& j) {
  PolarizationForm p = polarization_from_json(j);
  const std::size_t g = p.genus();
  if (!j.contains("pi_re") || !j.contains("pi_im"))
    throw error(errc::invalid_input, "expected \"pi_re\" and \"pi_im\" fields");
  const RMatrix re = real_matrix_from_json(j.at("pi_re"), g, 2 * g);
  const RMatrix im = real_matrix_from_json(j.at("pi_im"), g, 2 * g);
  CMatrix pi = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  return PolarizedTorus(PeriodMatrix(std::move(pi)), std::move(p));
}

inline bool is_torus_json(const json& j) {
  return j.is_object() && j.contains("pi_re") && j.contains("pi_im");
}

inline json duality_report_to_json(const DualityReport& r) {
  json j;
  j["input_valid"] = r.input_valid;
  if (!r.input_valid) j["input_error"] = r.input_error;
  j["d_composition_left"] = r.d_composition_left;
  j["d_composition_right"] = r.d_composition_right;
  j["d_type"] = r.d_type_ok;
  j["delta_type"] = r.delta_type_ok;
  j["delta_involution"] = r.delta_involution;
  j["exponent_preserved"] = r.exponent_preserved;
  j["pass"] = r.pass();
  return j;
}

inline json riemann_report_to_json(const RiemannReport& r) {
  json j;
  j["r1_residual"] = r.r1_residual;
  j["r2_margin"] = r.r2_margin;
  j["tolerance"] = r.tolerance;
  j["r1"] = r.r1_ok;
  j["r2"] = r.r2_ok;
  j["pass"] = r.pass();
  return j;
}

inline json dual_torus_report_to_json(const DualTorusReport& r) {
  json j;
  j["dual_riemann"] = riemann_report_to_json(r.dual_riemann);
  j["pairing_residual"] = r.pairing_residual;
  j["pairing"] = r.pairing_ok;
  j["lattice_map_residual"] = r.lattice_map_residual;
  j["lattice_map_integral"] = r.lattice_map_integral;
  j["matched_variant"] = r.matched_variant;
  j["convention"] = r.convention_ok;
  j["dual_type"] = r.dual_type_ok;
  j["bidual_residual"] = r.bidual_residual;
  j["bidual"] = r.bidual_ok;
  j["pass"] = r.pass();
  return j;
}

inline json fm_report_to_json(const FmReport& r, const TypeVector& t) {
  json j;
  j["type"] = type_to_json(t);
  j["rank"] = Int(numerator(r.rank_component)).str();
  j["Ehat"] = matrix_to_json(r.c1_form);
  j["rank_ok"] = r.rank_ok;
  j["thm31"] = r.thm31;
  j["prop34"] = r.prop34;
  j["lemma32"] = r.lemma32;
  j["wit_sign"] = r.wit_sign;
  j["pass"] = r.pass();
  return j;
}

inline json orbit_report_to_json(const OrbitReport& r) {
  json j;
  j["g"] = r.g;
  j["max_dg"] = r.max_dg.str();
  json types = json::array();
  for (const TypeVector& t : r.types) types.push_back(type_to_json(t));
  j["types"] = std::move(types);
  json orbits = json::array();
  for (const auto& orbit : r.orbits) {
    json o = json::array();
    for (const TypeVector& t : orbit) o.push_back(type_to_json(t));
    orbits.push_back(std::move(o));
  }
  j["orbits"] = std::move(orbits);
  j["fixed_count"] = r.fixed_count;
  j["swap_count"] = r.swap_count;
  return j;
}

}  // namespace pav
