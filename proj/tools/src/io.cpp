#include "io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "subrank/errors.hpp"

namespace subrank::io {

namespace {

using nlohmann::json;

std::vector<std::vector<double>> read_rows(const std::string& path,
                                           bool skip_header) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && skip_header) {
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw Error("malformed number '" + cell + "' in " + path);
      }
      while (used < cell.size() &&
             std::isspace(static_cast<unsigned char>(cell[used])))
        ++used;
      if (used != cell.size())
        throw Error("malformed number '" + cell + "' in " + path);
      if (!std::isfinite(v)) throw Error("non-finite value in " + path);
      row.push_back(v);
    }
    if (row.empty()) throw Error("empty row in " + path);
    if (!rows.empty() && row.size() != rows[0].size())
      throw Error("ragged rows in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("no data rows in " + path);
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

DenseMatrix read_matrix_csv(const std::string& path, bool skip_header) {
  auto rows = read_rows(path, skip_header);
  DenseMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

void write_matrix_csv(const std::string& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    for (std::size_t j = 0; j < m.n_cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

IndicatorMatrix read_mask_csv(const std::string& path, bool skip_header) {
  auto rows = read_rows(path, skip_header);
  IndicatorMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) {
      double v = rows[i][j];
      if (v != 0.0 && v != 1.0)
        throw Error("mask entries must be 0 or 1 in " + path);
      m.set(i, j, v == 1.0);
    }
  return m;
}

void write_mask_csv(const std::string& path, const IndicatorMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    for (std::size_t j = 0; j < m.n_cols(); ++j) {
      if (j) out << ',';
      out << (m.get(i, j) ? '1' : '0');
    }
    out << '\n';
  }
}

namespace {

json indices_json(const IndexSet& s) { return json(s.indices); }

IndexSet indices_from(const json& j) {
  return IndexSet(j.get<std::vector<std::size_t>>());
}

json matrix_json(const DenseMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.n_cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return json{{"n_rows", m.n_rows()}, {"n_cols", m.n_cols()},
              {"rows", std::move(rows)}};
}

DenseMatrix matrix_from(const json& j) {
  std::size_t n = j.at("n_rows"), m = j.at("n_cols");
  DenseMatrix out(n, m);
  const json& rows = j.at("rows");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < m; ++c) out(i, c) = rows.at(i).at(c);
  return out;
}

json bounds_json(const Rank1Bounds& b) {
  return json{{"delta", b.delta},
              {"gmax_row", b.gmax_row},
              {"gmax_col", b.gmax_col},
              {"gf_row", b.gf_row},
              {"gf_col", b.gf_col},
              {"max_norm_bound", b.max_norm_bound},
              {"fro_bound", b.fro_bound}};
}

Rank1Bounds bounds_from(const json& j) {
  Rank1Bounds b;
  b.delta = j.at("delta");
  b.gmax_row = j.at("gmax_row");
  b.gmax_col = j.at("gmax_col");
  b.gf_row = j.at("gf_row");
  b.gf_col = j.at("gf_col");
  b.max_norm_bound = j.at("max_norm_bound");
  b.fro_bound = j.at("fro_bound");
  return b;
}

json result_json(const TimedResult& tr) {
  const DiscoveryResult& r = tr.result;
  json j;
  j["rows"] = indices_json(r.submatrix.rows);
  j["cols"] = indices_json(r.submatrix.cols);
  j["objective"] = r.objective;
  j["error_max"] = r.error_max;
  j["error_fro"] = r.error_fro;
  j["error_spec"] = r.error_spec;
  j["bounds"] = r.bounds ? bounds_json(*r.bounds) : json();
  j["bounds_full_anchor"] =
      r.bounds_full_anchor ? bounds_json(*r.bounds_full_anchor) : json();
  j["second_sv_bound"] = r.second_sv_bound ? json(*r.second_sv_bound) : json();
  j["bounds_rank_k"] =
      r.bounds_rank_k ? json{{"max", r.bounds_rank_k->first},
                             {"fro", r.bounds_rank_k->second}}
                      : json();
  j["biclique_exact"] = r.biclique_exact;
  j["seed"] = json{{"rows", indices_json(r.seed.row_indices)},
                   {"cols", indices_json(r.seed.col_indices)},
                   {"det", r.seed.det_value},
                   {"samples", r.seed.samples_consumed},
                   {"delta_init", r.seed.final_delta_init}};
  j["anchor"] = r.anchor ? json{{"row", r.anchor->row_index},
                                {"col", r.anchor->col_index}}
                         : json();
  j["iteration"] = r.iteration_index;
  if (r.rank1_factor) {
    j["factor"] = json{{"kind", "interpretable_rank1"},
                       {"coefficients", r.rank1_factor->coefficients},
                       {"basis_row", r.rank1_factor->basis_row},
                       {"basis_row_position",
                        r.rank1_factor->basis_row_position}};
  } else if (r.rankk_factor) {
    j["factor"] = json{{"kind", r.rankk_factor->kind ==
                                        FactorKind::kInterpretable
                                    ? "interpretable"
                                    : "truncated_svd"},
                       {"left", matrix_json(r.rankk_factor->left)},
                       {"right", matrix_json(r.rankk_factor->right)}};
  } else {
    j["factor"] = json();
  }
  if (tr.wall_ms) j["wall_ms"] = *tr.wall_ms;
  return j;
}

TimedResult result_from(const json& j) {
  TimedResult tr;
  DiscoveryResult& r = tr.result;
  r.submatrix.rows = indices_from(j.at("rows"));
  r.submatrix.cols = indices_from(j.at("cols"));
  r.objective = j.at("objective");
  r.error_max = j.at("error_max");
  r.error_fro = j.at("error_fro");
  r.error_spec = j.at("error_spec");
  if (!j.at("bounds").is_null()) r.bounds = bounds_from(j.at("bounds"));
  if (!j.at("bounds_full_anchor").is_null())
    r.bounds_full_anchor = bounds_from(j.at("bounds_full_anchor"));
  if (!j.at("second_sv_bound").is_null())
    r.second_sv_bound = j.at("second_sv_bound").get<double>();
  if (!j.at("bounds_rank_k").is_null())
    r.bounds_rank_k = std::make_pair(
        j.at("bounds_rank_k").at("max").get<double>(),
        j.at("bounds_rank_k").at("fro").get<double>());
  r.biclique_exact = j.at("biclique_exact");
  const json& s = j.at("seed");
  r.seed.row_indices = indices_from(s.at("rows"));
  r.seed.col_indices = indices_from(s.at("cols"));
  r.seed.det_value = s.at("det");
  r.seed.samples_consumed = s.at("samples");
  r.seed.final_delta_init = s.at("delta_init");
  if (!j.at("anchor").is_null())
    r.anchor = Anchor{j.at("anchor").at("row").get<std::size_t>(),
                      j.at("anchor").at("col").get<std::size_t>()};
  r.iteration_index = j.at("iteration");
  const json& f = j.at("factor");
  if (!f.is_null()) {
    std::string kind = f.at("kind");
    if (kind == "interpretable_rank1") {
      Rank1Factor rf;
      rf.coefficients = f.at("coefficients").get<std::vector<double>>();
      rf.basis_row = f.at("basis_row").get<std::vector<double>>();
      rf.basis_row_position = f.at("basis_row_position");
      r.rank1_factor = std::move(rf);
    } else {
      RankKFactor kf;
      kf.kind = kind == "interpretable" ? FactorKind::kInterpretable
                                        : FactorKind::kTruncatedSvd;
      kf.left = matrix_from(f.at("left"));
      kf.right = matrix_from(f.at("right"));
      r.rankk_factor = std::move(kf);
    }
  }
  if (j.contains("wall_ms")) tr.wall_ms = j.at("wall_ms").get<double>();
  return tr;
}

}  // namespace

json to_json(const ResultDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  j["config"] = doc.config;
  json results = json::array();
  for (const auto& r : doc.results) results.push_back(result_json(r));
  j["results"] = std::move(results);
  return j;
}

ResultDocument document_from_json(const json& j) {
  ResultDocument doc;
  doc.schema_version = j.at("schema_version");
  doc.config = j.at("config");
  for (const auto& r : j.at("results")) doc.results.push_back(result_from(r));
  return doc;
}

void write_document(const std::string& path, const ResultDocument& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json(doc).dump(2) << '\n';
}

ResultDocument read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  try {
    return document_from_json(j);
  } catch (const json::exception& e) {
    throw Error(std::string("unexpected document shape: ") + e.what());
  }
}

}  // namespace subrank::io
