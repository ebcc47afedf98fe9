#include <algorithm>
#include <cstdio>
#include <sstream>

#include "gencontact/scenario.hpp"

namespace gencontact {

namespace {

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

void write_table(std::ostream& out, const Table& t, const std::string& indent) {
  if (t.header.empty()) return;
  std::vector<std::size_t> width(t.header.size());
  for (std::size_t c = 0; c < t.header.size(); ++c) width[c] = t.header[c].size();
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string text = indent;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      text += cells[c];
      if (c + 1 < cells.size()) text += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out << text << "\n";
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
}

}  // namespace

std::size_t Report::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [v](const CheckResult& c) { return c.verdict == v; }));
}

ExitCode Report::exit_code(bool strict) const {
  if (count(Verdict::Fail) > 0) return ExitCode::Fail;
  if (strict && count(Verdict::Inconclusive) > 0) return ExitCode::Inconclusive;
  return ExitCode::Pass;
}

std::string render_text(const Report& r, bool timing) {
  std::ostringstream out;
  out << "scenario " << r.scenario;
  if (!r.description.empty()) out << ": " << r.description;
  out << "\n";
  for (const auto& c : r.checks) {
    out << "[" << to_string(c.verdict) << "] " << c.label;
    if (timing) out << " (" << seconds(c.seconds) << " s)";
    out << "\n";
    for (const auto& n : c.notes) out << "    " << n << "\n";
    for (const auto& res : c.residuals) out << "    residual: " << res << "\n";
    write_table(out, c.table, "    ");
  }
  out << r.count(Verdict::Pass) << " passed, " << r.count(Verdict::Fail) << " failed, "
      << r.count(Verdict::Inconclusive) << " inconclusive\n";
  return out.str();
}

std::string render_records(const Report& r, bool strict, bool timing) {
  std::ostringstream out;
  out << "[scenario " << r.scenario << "]\n";
  if (!r.description.empty()) out << "description = " << r.description << "\n";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const CheckResult& c = r.checks[i];
    out << "\n[check " << i + 1 << "]\n";
    out << "name = " << c.label << "\n";
    out << "verdict = " << to_string(c.verdict) << "\n";
    for (const auto& res : c.residuals) out << "residual = " << res << "\n";
    for (const auto& n : c.notes) out << "note = " << n << "\n";
    if (!c.table.header.empty()) {
      std::string cols;
      for (std::size_t k = 0; k < c.table.header.size(); ++k) cols += (k ? " | " : "") + c.table.header[k];
      out << "columns = " << cols << "\n";
    }
    for (const auto& row : c.table.rows) {
      std::string cells;
      for (std::size_t k = 0; k < row.size(); ++k) cells += (k ? " | " : "") + row[k];
      out << "row = " << cells << "\n";
    }
    if (timing) out << "seconds = " << seconds(c.seconds) << "\n";
  }
  out << "\n[summary]\n";
  out << "passed = " << r.count(Verdict::Pass) << "\n";
  out << "failed = " << r.count(Verdict::Fail) << "\n";
  out << "inconclusive = " << r.count(Verdict::Inconclusive) << "\n";
  out << "exit = " << static_cast<int>(r.exit_code(strict)) << "\n";
  return out.str();
}

}  // namespace gencontact
