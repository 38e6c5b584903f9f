#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace jetcheck {

enum class CheckVerdict { Pass, Fail, Flagged };

[[nodiscard]] std::string_view check_verdict_name(CheckVerdict v);

struct ReportEntry {
  std::string check_id;
  std::string subject;
  CheckVerdict verdict = CheckVerdict::Pass;
  std::string residual;
  std::string anchor;
};

/// Ordered list of check records. Flagged entries mark known discrepancies
/// and suspect inputs; they do not affect the exit code.
class VerificationReport {
 public:
  void add(ReportEntry e);
  void add(std::string check_id, std::string subject, CheckVerdict verdict, std::string residual,
           std::string anchor);
  void append(const VerificationReport& other);

  [[nodiscard]] const std::vector<ReportEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t count(CheckVerdict v) const;
  [[nodiscard]] bool any_fail() const { return count(CheckVerdict::Fail) > 0; }
  /// 0 when nothing failed, 2 otherwise.
  [[nodiscard]] int exit_code() const { return any_fail() ? 2 : 0; }

  /// One `check_id<TAB>subject<TAB>verdict<TAB>residual<TAB>anchor` line per entry.
  void write_records(std::ostream& out) const;
  /// Human-readable totals and the non-passing entries.
  void write_summary(std::ostream& out) const;
  [[nodiscard]] std::string to_json() const;

 private:
  std::vector<ReportEntry> entries_;
};

/// printf-style "%.3e".
[[nodiscard]] std::string format_residual(double value);

}  // namespace jetcheck
