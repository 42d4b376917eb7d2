#include "tautring/report.hpp"

#include "json.hpp"

#include <iomanip>
#include <sstream>

namespace tautring {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "unknown";
}

ReportEntry ReportEntry::check(std::string id, std::string title, std::string anchor, bool ok, std::string residual,
                               std::string detail) {
  ReportEntry e;
  e.id = std::move(id);
  e.title = std::move(title);
  e.anchor = std::move(anchor);
  e.status = ok ? Status::Pass : Status::Fail;
  e.residual = std::move(residual);
  e.detail = std::move(detail);
  return e;
}

void VerificationReport::append(const VerificationReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::size_t VerificationReport::count(Status s) const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += (e.status == s);
  return n;
}

namespace {

// Values may contain spaces; quote them so records stay one line and parseable.
std::string quoted(const std::string& v) {
  std::string out = "\"";
  for (char ch : v) {
    if (ch == '"' || ch == '\\') out += '\\';
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string VerificationReport::render_lines(bool with_timing) const {
  std::ostringstream os;
  for (const auto& e : entries_) {
    os << "id=" << e.id << " status=" << to_string(e.status) << " title=" << quoted(e.title)
       << " anchor=" << quoted(e.anchor) << " provenance=" << e.provenance << " residual=" << quoted(e.residual);
    if (!e.detail.empty()) os << " detail=" << quoted(e.detail);
    if (with_timing) os << " seconds=" << std::fixed << std::setprecision(3) << e.seconds;
    os << '\n';
  }
  os << "summary pass=" << count(Status::Pass) << " fail=" << count(Status::Fail)
     << " skipped=" << count(Status::Skipped) << '\n';
  return os.str();
}

std::string VerificationReport::render_json() const {
  nlohmann::json doc;
  doc["entries"] = nlohmann::json::array();
  for (const auto& e : entries_) {
    doc["entries"].push_back({{"id", e.id},
                              {"title", e.title},
                              {"anchor", e.anchor},
                              {"provenance", e.provenance},
                              {"status", to_string(e.status)},
                              {"residual", e.residual},
                              {"detail", e.detail},
                              {"seconds", e.seconds}});
  }
  doc["summary"] = {{"pass", count(Status::Pass)}, {"fail", count(Status::Fail)}, {"skipped", count(Status::Skipped)}};
  return doc.dump(2);
}

}  // namespace tautring
