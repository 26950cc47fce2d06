#pragma once

// JSON import/export for POVMs, verdicts, feasibility regions and trend
// reports, plus CSV writers for sweep series. The POVM document layout is
// {dim, labels[], effects[][...]} with row-major [re, im] entry pairs.

#include "qea/incompat.hpp"
#include "qea/models.hpp"
#include "qea/observables.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace qea {

using json = nlohmann::json;

inline json to_json(const cmat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      rows.push_back({m(r, c).real(), m(r, c).imag()});
  return rows;
}

inline cmat cmat_from_json(const json& entries, int rows, int cols) {
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(rows) * cols)
    throw PreconditionError("cmat_from_json: wrong entry count");
  cmat m(rows, cols);
  std::size_t idx = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const json& e = entries.at(idx++);
      if (!e.is_array() || e.size() != 2)
        throw PreconditionError("cmat_from_json: entries must be [re, im] pairs");
      m(r, c) = complexd(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

inline json povm_to_json(const DiscreteObservable& obs) {
  json doc;
  doc["dim"] = obs.dim();
  doc["labels"] = obs.labels();
  json effects = json::array();
  for (int i = 0; i < obs.outcomes(); ++i) effects.push_back(to_json(obs.effect(i).matrix()));
  doc["effects"] = effects;
  return doc;
}

inline DiscreteObservable povm_from_json(const json& doc,
                                         const TolerancePolicy& pol = {}) {
  if (!doc.contains("dim") || !doc.contains("labels") || !doc.contains("effects"))
    throw PreconditionError("povm_from_json: need dim, labels and effects");
  const int dim = doc.at("dim").get<int>();
  std::vector<std::string> labels = doc.at("labels").get<std::vector<std::string>>();
  const json& effs = doc.at("effects");
  if (!effs.is_array() || effs.size() != labels.size())
    throw PreconditionError("povm_from_json: labels/effects mismatch");
  std::vector<Effect> effects;
  for (const json& e : effs) effects.emplace_back(cmat_from_json(e, dim, dim), pol);
  return DiscreteObservable(std::move(labels), std::move(effects), pol);
}

inline json verdict_to_json(const ComplementarityVerdict& v) {
  json j;
  j["set_x"] = v.set_x;
  j["set_y"] = v.set_y;
  j["disjoint"] = v.disjoint;
  j["boundary"] = v.boundary;
  j["overlap_cosine"] = v.overlap_cosine;
  if (v.witness) {
    json w = json::array();
    for (Eigen::Index i = 0; i < v.witness->size(); ++i)
      w.push_back({(*v.witness)(i).real(), (*v.witness)(i).imag()});
    j["witness"] = w;
  }
  return j;
}

inline json verdicts_to_json(const FamilyVerdict& fam) {
  json j;
  j["all_disjoint"] = fam.all_disjoint;
  json arr = json::array();
  for (const auto& v : fam.verdicts) arr.push_back(verdict_to_json(v));
  j["verdicts"] = arr;
  return j;
}

inline json trend_to_json(const TrendReport& t) {
  json j;
  j["parameters"] = t.parameters;
  j["values"] = t.values;
  j["noise_band"] = t.noise_band;
  j["non_increasing"] = t.non_increasing;
  for (const auto& [name, series] : t.series) j["series"][name] = series;
  return j;
}

inline std::string region_to_csv(const RegionMap& map) {
  std::ostringstream out;
  out << "lambda,mu,feasible\n";
  for (int i = 0; i < map.grid_n; ++i)
    for (int j = 0; j < map.grid_n; ++j)
      out << map.lambda_at(i) << ',' << map.mu_at(j) << ','
          << static_cast<int>(map.at(i, j)) << '\n';
  return out.str();
}

inline std::string series_to_csv(const std::vector<std::string>& header,
                                 const std::vector<std::vector<double>>& columns) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? ',' : '\n');
  if (columns.empty()) return out.str();
  const std::size_t rows = columns.front().size();
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << columns[c].at(r) << (c + 1 < columns.size() ? ',' : '\n');
  return out.str();
}

// Atomic file write: stage to a sibling temp file, then rename over.
inline void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("write_file_atomic: rename failed for " + path);
}

} // namespace qea
