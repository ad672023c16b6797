#include "tfs/io.hpp"

#include <cmath>
#include <cstdio>

#include "tfs/version.hpp"

namespace tfs {

namespace {

double number_at(const Json& j, const std::string& where) {
  if (!j.is_number())
    throw Error(Errc::ParseError, where + " is not a number");
  return j.get<double>();
}

cd entry_at(const Json& j, Field field, const std::string& where) {
  if (field == Field::Real) return cd(number_at(j, where), 0.0);
  if (!j.is_array() || j.size() != 2)
    throw Error(Errc::ParseError, where + " must be a [re, im] pair");
  return cd(number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]"));
}

}  // namespace

Frame parse_frame(const std::string& text, bool renormalize, const Config& cfg) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(Errc::ParseError, "top level must be an object");
  for (const char* key : {"field", "n", "unit_norm", "vectors"})
    if (!doc.contains(key))
      throw Error(Errc::ParseError, std::string("missing key \"") + key + "\"");

  Frame F;
  const std::string field = doc["field"].is_string() ? doc["field"].get<std::string>() : "";
  if (field == "R")
    F.field = Field::Real;
  else if (field == "C")
    F.field = Field::Complex;
  else
    throw Error(Errc::ParseError, "field must be \"R\" or \"C\"");

  if (!doc["n"].is_number_integer())
    throw Error(Errc::ParseError, "n must be an integer");
  F.n = doc["n"].get<int>();
  if (F.n < 2) throw Error(Errc::ParseError, "n must be at least 2");

  if (!doc["unit_norm"].is_boolean())
    throw Error(Errc::ParseError, "unit_norm must be a boolean");
  F.unit_norm = doc["unit_norm"].get<bool>();

  const Json& vecs = doc["vectors"];
  if (!vecs.is_array() || vecs.empty())
    throw Error(Errc::ParseError, "vectors must be a non-empty array");
  const int k = static_cast<int>(vecs.size());
  F.vectors.resize(F.n, k);
  for (int i = 0; i < k; ++i) {
    const Json& v = vecs[i];
    const std::string where = "vectors[" + std::to_string(i) + "]";
    if (!v.is_array() || static_cast<int>(v.size()) != F.n)
      throw Error(Errc::ParseError, where + " must have exactly n = " +
                                        std::to_string(F.n) + " entries");
    for (int l = 0; l < F.n; ++l)
      F.vectors(l, i) = entry_at(v[l], F.field, where + "[" + std::to_string(l) + "]");
  }

  if (F.unit_norm) {
    for (int i = 0; i < k; ++i) {
      const double nm = F.vectors.col(i).norm();
      if (std::abs(nm - 1.0) <= cfg.tol_unit) continue;
      if (renormalize && nm > 0.0) {
        F.vectors.col(i) /= nm;
        continue;
      }
      throw Error(Errc::NormViolation, "vector " + std::to_string(i + 1) +
                                           " has norm " + format_double(nm));
    }
  }
  validate_frame(F, cfg);
  return F;
}

std::string emit_frame(const Frame& F) {
  Json doc;
  doc["field"] = F.field == Field::Real ? "R" : "C";
  doc["n"] = F.n;
  doc["unit_norm"] = F.unit_norm;
  Json vecs = Json::array();
  for (int i = 0; i < F.k(); ++i) {
    Json v = Json::array();
    for (int l = 0; l < F.n; ++l) {
      if (F.field == Field::Real)
        v.push_back(F.vectors(l, i).real());
      else
        v.push_back(Json::array({F.vectors(l, i).real(), F.vectors(l, i).imag()}));
    }
    vecs.push_back(std::move(v));
  }
  doc["vectors"] = std::move(vecs);
  return doc.dump(2) + "\n";
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json result_envelope(const std::string& command, const std::string& digest,
                     const Config& cfg) {
  Json doc;
  doc["tool"] = "tfscale";
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["input_digest"] = digest;
  Json tol;
  tol["tol_unit"] = cfg.tol_unit;
  tol["tol_sym"] = cfg.tol_sym;
  tol["tol_tight"] = cfg.tol_tight;
  tol["tol_psd"] = cfg.tol_psd;
  tol["tol_null"] = cfg.tol_null;
  tol["tol_eig"] = cfg.tol_eig;
  tol["tol_rank"] = cfg.tol_rank;
  tol["tol_hull"] = cfg.tol_hull;
  tol["borderline_factor"] = cfg.borderline_factor;
  doc["tolerances"] = std::move(tol);
  return doc;
}

void load_config_overlay(const std::string& text, Config& cfg) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::ParseError, "config: top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    auto num = [&]() { return number_at(value, "config." + key); };
    if (key == "tol_unit") cfg.tol_unit = num();
    else if (key == "tol_sym") cfg.tol_sym = num();
    else if (key == "tol_tight") cfg.tol_tight = num();
    else if (key == "tol_psd") cfg.tol_psd = num();
    else if (key == "tol_null") cfg.tol_null = num();
    else if (key == "tol_eig") cfg.tol_eig = num();
    else if (key == "tol_rank") cfg.tol_rank = num();
    else if (key == "tol_hull") cfg.tol_hull = num();
    else if (key == "borderline_factor") cfg.borderline_factor = num();
    else if (key == "max_jacobi_sweeps") cfg.max_jacobi_sweeps = static_cast<int>(num());
    else if (key == "max_hull_iterations")
      cfg.max_hull_iterations = static_cast<std::uint64_t>(num());
    else if (key == "max_perceptron_updates")
      cfg.max_perceptron_updates = static_cast<std::uint64_t>(num());
    else
      throw Error(Errc::ParseError, "config: unknown key \"" + key + "\"");
  }
}

Json json_real_vector(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json json_complex_vector(const Eigen::VectorXcd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i)
    a.push_back(Json::array({v(i).real(), v(i).imag()}));
  return a;
}

Json json_real_matrix(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json json_complex_matrix(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace tfs
