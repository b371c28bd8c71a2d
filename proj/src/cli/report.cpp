#include "nsreg/report.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "nsreg/error.hpp"

namespace nsreg {

using nlohmann::json;

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return "violation";
}

double read_number(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && j.get<std::string>() == "violation") return std::numeric_limits<double>::infinity();
  throw FormatError(std::string("report: field '") + what + "' is not a number");
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("report: missing field '") + key + "'");
  return j.at(key);
}

json components_json(const std::vector<NamedValue>& comps) {
  json c = json::array();
  for (const auto& nv : comps) c.push_back({{"name", nv.name}, {"value", number(nv.value)}});
  return c;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) {
  if (!std::isfinite(v)) return "violation";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

ReportRow row_from_report(std::size_t point_index, const CriterionReport& rep) {
  ReportRow row;
  row.point_index = point_index;
  row.point = rep.cylinder.center;
  row.t0 = rep.cylinder.time;
  row.r = rep.cylinder.radius;
  row.criterion = to_string(rep.kind.tag);
  row.param = rep.kind.param_string();
  row.statistic = rep.statistic;
  row.threshold = rep.threshold;
  row.satisfied = rep.satisfied;
  row.components = rep.components;
  return row;
}

json to_json(const ReportDocument& doc) {
  json rows = json::array();
  for (const auto& r : doc.rows) {
    json row{{"point_index", r.point_index},
             {"point", {r.point[0], r.point[1], r.point[2]}},
             {"t0", r.t0},
             {"r", r.r},
             {"criterion", r.criterion},
             {"param", r.param},
             {"threshold", r.threshold}};
    if (r.statistic) row["statistic"] = number(*r.statistic);
    if (r.satisfied) row["satisfied"] = *r.satisfied;
    row["components"] = components_json(r.components);
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  return json{{"version", doc.version}, {"inputs", doc.inputs}, {"rows", rows}, {"provenance", doc.provenance}};
}

ReportDocument report_from_json(const json& j) {
  ReportDocument doc;
  doc.version = field(j, "version").get<std::string>();
  if (doc.version != kReportVersion) throw FormatError("report: unsupported version '" + doc.version + "'");
  doc.inputs = field(j, "inputs");
  doc.provenance = field(j, "provenance");
  const json& rows = field(j, "rows");
  if (!rows.is_array()) throw FormatError("report: 'rows' must be an array");
  for (const json& r : rows) {
    ReportRow row;
    row.point_index = field(r, "point_index").get<std::size_t>();
    const json& p = field(r, "point");
    if (!p.is_array() || p.size() != 3) throw FormatError("report: 'point' must hold three numbers");
    for (int a = 0; a < 3; ++a) row.point[a] = read_number(p[a], "point");
    row.t0 = read_number(field(r, "t0"), "t0");
    row.r = read_number(field(r, "r"), "r");
    row.criterion = field(r, "criterion").get<std::string>();
    row.param = field(r, "param").get<std::string>();
    row.threshold = read_number(field(r, "threshold"), "threshold");
    if (r.contains("statistic")) row.statistic = read_number(r.at("statistic"), "statistic");
    if (r.contains("satisfied")) row.satisfied = r.at("satisfied").get<bool>();
    for (const json& c : field(r, "components"))
      row.components.push_back({field(c, "name").get<std::string>(), read_number(field(c, "value"), "value")});
    if (r.contains("error")) row.error = r.at("error").get<std::string>();
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

std::string determinism_hash(const ReportDocument& doc) {
  json j = to_json(doc);
  if (j["provenance"].is_object()) j["provenance"].erase("timestamp");
  return sha256_hex(j.dump());
}

void write_csv(const ReportDocument& doc, std::ostream& out) {
  out << "point,t0,r,criterion,param,statistic,threshold,satisfied,components\n";
  for (const auto& r : doc.rows) {
    const std::string point = fmt(r.point[0]) + " " + fmt(r.point[1]) + " " + fmt(r.point[2]);
    std::string stat = r.statistic ? fmt(*r.statistic) : "error";
    std::string sat = r.satisfied ? (*r.satisfied ? "true" : "false") : "error";
    json comps = components_json(r.components);
    if (!r.error.empty()) comps = json{{"error", r.error}};
    out << csv_quote(point) << ',' << fmt(r.t0) << ',' << fmt(r.r) << ',' << csv_quote(r.criterion) << ','
        << csv_quote(r.param) << ',' << stat << ',' << fmt(r.threshold) << ',' << sat << ','
        << csv_quote(comps.dump()) << '\n';
  }
}

}  // namespace nsreg
