#include "ccov/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccov/error.hpp"

namespace ccov {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::vector<ConfigSection> parse_config_sections(const std::string& text) {
  std::vector<ConfigSection> sections;
  sections.push_back({"", {}});
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        raise(Errc::config_error, "line " + std::to_string(line_no) + ": unterminated section header");
      sections.push_back({trim(line.substr(1, line.size() - 2)), {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      raise(Errc::config_error, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      raise(Errc::config_error, "line " + std::to_string(line_no) + ": empty key");
    sections.back().entries.emplace_back(key, value);
  }
  if (sections.front().name.empty() && sections.front().entries.empty()) sections.erase(sections.begin());
  return sections;
}

DatasetManifest manifest_from_entries(
    const std::vector<std::pair<std::string, std::string>>& entries, const std::string& base_dir) {
  DatasetManifest m;
  for (const auto& [key, value] : entries) {
    if (key == "name") {
      m.name = value;
    } else if (key == "path") {
      std::filesystem::path p(value);
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      m.path = p.string();
    } else if (key == "label") {
      m.label_column = value;
    } else if (key.rfind("kind.", 0) == 0) {
      const std::string feature = key.substr(5);
      if (value == "continuous") m.kinds[feature] = FeatureKind::continuous;
      else if (value == "discrete") m.kinds[feature] = FeatureKind::discrete;
      else raise(Errc::config_error, "kind for '" + feature + "' must be continuous or discrete");
    } else {
      raise(Errc::config_error, "unknown dataset key '" + key + "'");
    }
  }
  if (m.path.empty()) raise(Errc::config_error, "dataset section needs a path");
  if (m.label_column.empty()) raise(Errc::config_error, "dataset section needs a label column");
  if (m.name.empty()) m.name = std::filesystem::path(m.path).stem().string();
  return m;
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open manifest '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto sections = parse_config_sections(buffer.str());
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& section : sections)
    for (const auto& entry : section.entries) entries.push_back(entry);
  return manifest_from_entries(entries, std::filesystem::path(path).parent_path().string());
}

}  // namespace ccov
