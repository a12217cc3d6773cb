#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subrank/indicator.hpp"
#include "subrank/matrix.hpp"
#include "subrank/pipeline.hpp"

namespace subrank::io {

// Headerless comma-separated matrix with 17-significant-digit doubles, so
// write followed by read restores every entry bit for bit.
DenseMatrix read_matrix_csv(const std::string& path, bool skip_header = false);
void write_matrix_csv(const std::string& path, const DenseMatrix& m);

// 0/1 grid in the same layout.
IndicatorMatrix read_mask_csv(const std::string& path,
                              bool skip_header = false);
void write_mask_csv(const std::string& path, const IndicatorMatrix& m);

std::string format_double(double v);

struct TimedResult {
  DiscoveryResult result;
  std::optional<double> wall_ms;  // present only when timing was requested

  bool operator==(const TimedResult&) const = default;
};

// Serialized discovery output: schema version, configuration echo, and one
// record per discovered submatrix.
struct ResultDocument {
  std::string schema_version = "1.0";
  nlohmann::json config = nlohmann::json::object();
  std::vector<TimedResult> results;

  bool operator==(const ResultDocument&) const = default;
};

nlohmann::json to_json(const ResultDocument& doc);
ResultDocument document_from_json(const nlohmann::json& j);

void write_document(const std::string& path, const ResultDocument& doc);
ResultDocument read_document(const std::string& path);

}  // namespace subrank::io
