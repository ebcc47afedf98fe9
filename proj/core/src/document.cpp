#include "gencontact/document.hpp"

#include <sstream>

#include "gencontact/errors.hpp"

namespace gencontact {

std::string trim(const std::string& text) {
  const auto b = text.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = text.find_last_not_of(" \t\r\n");
  return text.substr(b, e - b + 1);
}

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> split_list(const std::string& text, char separator) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == separator) {
      if (auto t = trim(cur); !t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (auto t = trim(cur); !t.empty()) out.push_back(t);
  return out;
}

const Entry* Section::find(const std::string& key) const {
  for (const auto& e : entries) {
    if (!e.key.empty() && e.key.front() == key) return &e;
  }
  return nullptr;
}

std::vector<const Entry*> Section::all(const std::string& key) const {
  std::vector<const Entry*> out;
  for (const auto& e : entries) {
    if (!e.key.empty() && e.key.front() == key) out.push_back(&e);
  }
  return out;
}

std::string Section::get(const std::string& key, const std::string& fallback) const {
  const Entry* e = find(key);
  return e ? e->value : fallback;
}

const Entry& Section::require(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw ParseError("[" + kind + " " + name + "] is missing '" + key + "'", line);
  return *e;
}

Document parse_document(const std::string& text, const std::string& source) {
  Document doc;
  doc.source = source;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  std::string pending;
  int pending_line = 0;
  auto strip_comment = [](const std::string& s) {
    const auto h = s.find('#');
    return h == std::string::npos ? s : s.substr(0, h);
  };
  auto handle = [&](const std::string& line, int at) {
    const std::string t = trim(line);
    if (t.empty()) return;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError("unterminated section header", at);
      auto words = split_words(t.substr(1, t.size() - 2));
      if (words.empty() || words.size() > 2) throw ParseError("section header must be '[kind name]' or '[kind]'", at);
      doc.sections.push_back(Section{words[0], words.size() == 2 ? words[1] : "", at, {}});
      return;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", at);
    if (doc.sections.empty()) throw ParseError("entry outside of a section", at);
    Entry e;
    e.line = at;
    e.key = split_words(line.substr(0, eq));
    if (e.key.empty()) throw ParseError("missing key before '='", at, static_cast<int>(eq) + 1);
    const std::string rest = line.substr(eq + 1);
    const auto first = rest.find_first_not_of(" \t");
    e.value = trim(rest);
    e.value_column = static_cast<int>(eq) + 2 + static_cast<int>(first == std::string::npos ? 0 : first);
    doc.sections.back().entries.push_back(std::move(e));
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    const std::string t = trim(line);
    if (!t.empty() && t.back() == '\\') {
      if (pending.empty()) pending_line = lineno;
      const auto bs = line.rfind('\\');
      pending += line.substr(0, bs) + " ";
      continue;
    }
    if (!pending.empty()) {
      handle(pending + line, pending_line);
      pending.clear();
      continue;
    }
    handle(line, lineno);
  }
  if (!pending.empty()) handle(pending, pending_line);
  return doc;
}

}  // namespace gencontact
