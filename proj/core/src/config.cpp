#include "trustnet/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace trustnet {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return INFINITY;
  double value = 0.0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (ec != std::errc() || ptr != end || t.empty()) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return value;
}

std::uint64_t parse_uint(const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t value = 0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (ec != std::errc() || ptr != end || t.empty()) {
    throw std::invalid_argument("not a non-negative integer: '" + text + "'");
  }
  return value;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

KeyValueDocument KeyValueDocument::parse(const std::string& text, const std::string& source) {
  KeyValueDocument doc;
  doc.source_ = source;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) {
      throw ConfigError(where + "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "missing key");
    for (char c : key) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_')) {
        throw ConfigError(where + "invalid key '" + key + "'");
      }
    }
    if (!doc.values_.emplace(key, value).second) {
      throw ConfigError(where + "duplicate key '" + key + "'");
    }
    doc.lines_[key] = line_no;
  }
  return doc;
}

KeyValueDocument KeyValueDocument::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path.string());
}

const std::string* KeyValueDocument::find(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return nullptr;
  used_[key] = true;
  return &it->second;
}

int KeyValueDocument::line_of(const std::string& key) const {
  auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

void KeyValueDocument::fail(const std::string& key, const std::string& why) const {
  throw ConfigError(source_ + ":" + std::to_string(line_of(key)) + ": " + key + ": " + why);
}

std::string KeyValueDocument::get_string(const std::string& key,
                                         const std::string& fallback) const {
  const std::string* v = find(key);
  return v ? *v : fallback;
}

double KeyValueDocument::get_double(const std::string& key, double fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  try {
    return parse_double(*v);
  } catch (const std::exception& e) {
    fail(key, e.what());
  }
}

std::uint64_t KeyValueDocument::get_uint(const std::string& key, std::uint64_t fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  try {
    return parse_uint(*v);
  } catch (const std::exception& e) {
    fail(key, e.what());
  }
}

bool KeyValueDocument::get_bool(const std::string& key, bool fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  if (*v == "true") return true;
  if (*v == "false") return false;
  fail(key, "expected true or false");
}

std::vector<double> KeyValueDocument::get_doubles(const std::string& key,
                                                  std::vector<double> fallback) const {
  const std::string* v = find(key);
  if (!v) return fallback;
  std::vector<double> out;
  std::istringstream items(*v);
  std::string item;
  try {
    while (std::getline(items, item, ',')) out.push_back(parse_double(item));
  } catch (const std::exception& e) {
    fail(key, e.what());
  }
  if (out.empty()) fail(key, "expected a comma-separated list");
  return out;
}

void KeyValueDocument::reject_unused() const {
  for (const auto& [key, value] : values_) {
    if (!used_.count(key)) fail(key, "unknown key");
  }
}

}  // namespace trustnet
