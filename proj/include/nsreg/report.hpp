#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsreg/criteria.hpp"

namespace nsreg {

inline constexpr const char* kReportVersion = "nsreg-report/1";

/// One evaluated (point, radius, criterion) triple, or the error it raised.
struct ReportRow {
  std::size_t point_index = 0;
  Point3 point{0.0, 0.0, 0.0};
  double t0 = 0.0;
  double r = 0.0;
  std::string criterion;
  std::string param;
  std::optional<double> statistic;  // absent on error rows
  double threshold = kDefaultThreshold;
  std::optional<bool> satisfied;
  std::vector<NamedValue> components;
  std::string error;  // "kind: message" on error rows

  bool operator==(const ReportRow&) const = default;
};

ReportRow row_from_report(std::size_t point_index, const CriterionReport& rep);

struct ReportDocument {
  std::string version = kReportVersion;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<ReportRow> rows;
  nlohmann::json provenance = nlohmann::json::object();
};

/// Non-finite numbers are written as the string "violation".
nlohmann::json to_json(const ReportDocument& doc);
/// Throws FormatError on a schema mismatch.
ReportDocument report_from_json(const nlohmann::json& j);

/// SHA-256 (hex) of the canonical JSON dump with provenance.timestamp removed.
std::string determinism_hash(const ReportDocument& doc);

/// Columns: point, t0, r, criterion, param, statistic, threshold, satisfied, components.
void write_csv(const ReportDocument& doc, std::ostream& out);

std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path& path);

}  // namespace nsreg
