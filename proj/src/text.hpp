#pragma once

// Line handling shared by the text-format parsers.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace scissors::text {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Line {
  int number;
  std::string content;  // comment stripped, trimmed, nonempty
};

/// Nonempty lines with `#` comments removed, numbered from 1.
inline std::vector<Line> lines(std::string_view input) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    std::size_t end = input.find('\n', pos);
    if (end == std::string_view::npos) end = input.size();
    ++number;
    std::string_view raw = input.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string t = trim(raw);
    if (!t.empty()) out.push_back({number, std::move(t)});
    pos = end + 1;
  }
  return out;
}

inline bool starts_with_key(const std::string& line, std::string_view key) {
  if (line.size() < key.size() || line.compare(0, key.size(), key) != 0) return false;
  return line.size() == key.size() || line[key.size()] == ':' || std::isspace(static_cast<unsigned char>(line[key.size()]));
}

}  // namespace scissors::text
