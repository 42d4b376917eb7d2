#pragma once

#include <string>
#include <vector>

namespace tautring {

enum class Status { Pass, Fail, Skipped };

std::string to_string(Status s);

struct ReportEntry {
  std::string id;
  std::string title;
  std::string anchor;           // descriptive anchor, see docs/anchors.md
  std::string provenance = "derived";
  Status status = Status::Pass;
  std::string residual = "0";
  std::string detail;
  double seconds = 0;

  static ReportEntry check(std::string id, std::string title, std::string anchor, bool ok,
                           std::string residual = "0", std::string detail = "");
};

class VerificationReport {
 public:
  void add(ReportEntry e) { entries_.push_back(std::move(e)); }
  void append(const VerificationReport& other);
  const std::vector<ReportEntry>& entries() const { return entries_; }
  std::vector<ReportEntry>& entries() { return entries_; }

  std::size_t count(Status s) const;
  bool ok() const { return count(Status::Fail) == 0; }

  /// One `key=value` record per entry. Timing is omitted unless requested so
  /// the body is byte-stable across runs.
  std::string render_lines(bool with_timing = false) const;
  /// Aggregate document for machine consumption.
  std::string render_json() const;

 private:
  std::vector<ReportEntry> entries_;
};

}  // namespace tautring
