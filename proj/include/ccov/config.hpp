#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ccov/dataset.hpp"

namespace ccov {

/// Where to find one dataset: CSV path, label column, and per-feature kind
/// overrides. Parsed from plain key=value text (see Config grammar in the
/// README): name, path, label, and kind.<feature> = continuous|discrete.
struct DatasetManifest {
  std::string name;
  std::string path;
  std::string label_column;
  KindOverrides kinds;
};

/// A parsed section: header name plus key/value pairs in file order.
struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;
};

/// Parses sectioned key=value text ("[section]" headers, '#' comments).
/// Entries before any header land in a section with an empty name.
std::vector<ConfigSection> parse_config_sections(const std::string& text);

/// Builds a manifest from one section's entries. `base_dir` (directory of the
/// file the section came from) resolves relative CSV paths.
DatasetManifest manifest_from_entries(
    const std::vector<std::pair<std::string, std::string>>& entries, const std::string& base_dir);

/// Loads a standalone manifest file (key=value lines, no section header
/// required).
DatasetManifest load_manifest(const std::string& path);

}  // namespace ccov
