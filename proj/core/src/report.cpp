#include "jetcheck/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace jetcheck {

namespace {

// Records are tab separated and newline terminated.
std::string field(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return s;
}

}  // namespace

std::string_view check_verdict_name(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::Pass:
      return "pass";
    case CheckVerdict::Fail:
      return "fail";
    case CheckVerdict::Flagged:
      return "flagged";
  }
  return "?";
}

void VerificationReport::add(ReportEntry e) { entries_.push_back(std::move(e)); }

void VerificationReport::add(std::string check_id, std::string subject, CheckVerdict verdict, std::string residual,
                             std::string anchor) {
  add(ReportEntry{std::move(check_id), std::move(subject), verdict, std::move(residual), std::move(anchor)});
}

void VerificationReport::append(const VerificationReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::size_t VerificationReport::count(CheckVerdict v) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [v](const ReportEntry& e) { return e.verdict == v; }));
}

void VerificationReport::write_records(std::ostream& out) const {
  for (const auto& e : entries_) {
    out << field(e.check_id) << '\t' << field(e.subject) << '\t' << check_verdict_name(e.verdict) << '\t'
        << field(e.residual) << '\t' << field(e.anchor) << '\n';
  }
}

void VerificationReport::write_summary(std::ostream& out) const {
  out << entries_.size() << " checks: " << count(CheckVerdict::Pass) << " pass, " << count(CheckVerdict::Fail)
      << " fail, " << count(CheckVerdict::Flagged) << " flagged\n";
  for (const auto& e : entries_) {
    if (e.verdict == CheckVerdict::Pass) continue;
    out << "  " << check_verdict_name(e.verdict) << "  " << e.check_id << "  " << e.subject << '\n';
  }
}

std::string VerificationReport::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : entries_) {
    entries.push_back({{"check_id", e.check_id},
                       {"subject", e.subject},
                       {"verdict", std::string(check_verdict_name(e.verdict))},
                       {"residual", e.residual},
                       {"anchor", e.anchor}});
  }
  nlohmann::json doc{{"entries", entries},
                     {"summary",
                      {{"pass", count(CheckVerdict::Pass)},
                       {"fail", count(CheckVerdict::Fail)},
                       {"flagged", count(CheckVerdict::Flagged)}}}};
  return doc.dump(2) + "\n";
}

std::string format_residual(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", value);
  return buf;
}

}  // namespace jetcheck
