#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ostrowski::cli {

inline constexpr const char* kVersion = "0.1.0";

/// One output line. Unset fields print as empty CSV cells and JSON nulls.
/// Exact integers travel as decimal strings.
struct ReportRow {
  std::string alpha;
  std::optional<std::uint64_t> n;
  std::optional<std::string> a_n;
  std::optional<std::string> q_n;
  std::optional<double> re_T;
  std::optional<double> im_T;
  std::optional<double> abs_T;
  std::optional<double> bound;
  std::optional<double> ratio;
  std::string verdict;

  bool operator==(const ReportRow&) const = default;
};

struct Report {
  std::string alpha;
  std::string command;
  std::string version = kVersion;
  std::vector<ReportRow> rows;

  bool operator==(const Report&) const = default;
};

enum class Format { kCsv, kJson };

inline constexpr const char* kCsvHeader = "alpha,n,a_n,q_n,re_T,im_T,abs_T,bound,ratio,verdict";

/// Byte-stable rendering; floats use 17 significant digits in CSV and the
/// shortest round-trip form in JSON.
std::string emit(const Report& report, Format format);
std::string emit_csv(const Report& report);
std::string emit_json(const Report& report);

/// Inverse of emit_json.
Report parse_json_report(const std::string& text);

/// {"error":{"code":...,"message":...}}
std::string emit_json_error(const std::string& code, const std::string& message);

}  // namespace ostrowski::cli
