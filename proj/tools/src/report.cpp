#include "ostrowski/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace ostrowski::cli {
namespace {

using json = nlohmann::ordered_json;

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string cell(const std::optional<T>& v, F&& f) {
  return v ? f(*v) : std::string();
}

json number_or_null(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

json string_or_null(const std::optional<std::string>& v) {
  if (!v) return nullptr;
  return *v;
}

std::optional<double> read_double(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::optional<std::string> read_string(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

}  // namespace

std::string emit_csv(const Report& report) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  const auto d = [](double v) { return format_double(v); };
  const auto s = [](const std::string& v) { return csv_escape(v); };
  for (const ReportRow& r : report.rows) {
    os << csv_escape(r.alpha) << ','
       << cell(r.n, [](std::uint64_t v) { return std::to_string(v); }) << ','
       << cell(r.a_n, s) << ',' << cell(r.q_n, s) << ',' << cell(r.re_T, d) << ','
       << cell(r.im_T, d) << ',' << cell(r.abs_T, d) << ',' << cell(r.bound, d) << ','
       << cell(r.ratio, d) << ',' << csv_escape(r.verdict) << '\n';
  }
  return os.str();
}

std::string emit_json(const Report& report) {
  json rows = json::array();
  for (const ReportRow& r : report.rows) {
    json row;
    row["alpha"] = r.alpha;
    row["n"] = r.n ? json(*r.n) : json(nullptr);
    row["a_n"] = string_or_null(r.a_n);
    row["q_n"] = string_or_null(r.q_n);
    row["re_T"] = number_or_null(r.re_T);
    row["im_T"] = number_or_null(r.im_T);
    row["abs_T"] = number_or_null(r.abs_T);
    row["bound"] = number_or_null(r.bound);
    row["ratio"] = number_or_null(r.ratio);
    row["verdict"] = r.verdict;
    rows.push_back(std::move(row));
  }
  json doc;
  doc["meta"] = {{"alpha", report.alpha}, {"command", report.command}, {"version", report.version}};
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string emit(const Report& report, Format format) {
  return format == Format::kCsv ? emit_csv(report) : emit_json(report);
}

Report parse_json_report(const std::string& text) {
  const json doc = json::parse(text);
  Report report;
  const json& meta = doc.at("meta");
  report.alpha = meta.at("alpha").get<std::string>();
  report.command = meta.at("command").get<std::string>();
  report.version = meta.at("version").get<std::string>();
  for (const json& j : doc.at("rows")) {
    ReportRow r;
    r.alpha = j.at("alpha").get<std::string>();
    if (!j.at("n").is_null()) r.n = j.at("n").get<std::uint64_t>();
    r.a_n = read_string(j.at("a_n"));
    r.q_n = read_string(j.at("q_n"));
    r.re_T = read_double(j.at("re_T"));
    r.im_T = read_double(j.at("im_T"));
    r.abs_T = read_double(j.at("abs_T"));
    r.bound = read_double(j.at("bound"));
    r.ratio = read_double(j.at("ratio"));
    r.verdict = j.at("verdict").get<std::string>();
    report.rows.push_back(std::move(r));
  }
  return report;
}

std::string emit_json_error(const std::string& code, const std::string& message) {
  json doc;
  doc["error"] = {{"code", code}, {"message", message}};
  return doc.dump(2) + "\n";
}

}  // namespace ostrowski::cli
