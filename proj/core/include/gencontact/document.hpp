#pragma once

#include <string>
#include <vector>

namespace gencontact {

/// `words... = value` inside a section. A line ending in a backslash
/// continues on the next one; `#` starts a comment.
struct Entry {
  int line = 0;
  std::vector<std::string> key;
  std::string value;
  /// Column of the first character of `value` in its line.
  int value_column = 0;
};

struct Section {
  std::string kind;
  std::string name;
  int line = 0;
  std::vector<Entry> entries;

  /// First entry whose leading key word matches; nullptr when absent.
  const Entry* find(const std::string& key) const;
  std::vector<const Entry*> all(const std::string& key) const;
  /// Value of `key`, or `fallback` when the key is absent.
  std::string get(const std::string& key, const std::string& fallback = "") const;
  /// Value of `key`; throws ParseError naming the section when absent.
  const Entry& require(const std::string& key) const;
};

/// Sections of the form `[kind name]` (or `[kind]`) followed by entries.
struct Document {
  std::string source;
  std::vector<Section> sections;
};

Document parse_document(const std::string& text, const std::string& source = "<input>");

/// Splits on whitespace.
std::vector<std::string> split_words(const std::string& text);
/// Splits on a separator character and trims each piece; empty pieces are dropped.
std::vector<std::string> split_list(const std::string& text, char separator);
std::string trim(const std::string& text);

}  // namespace gencontact
