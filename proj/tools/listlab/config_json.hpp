#pragma once

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

namespace listlab::cli {

// CLI11 config reader for JSON files. Nested objects name subcommands:
//   {"seed": 3, "merge-ratio": {"p": 2, "ell": 8, "r": [1, 2, 5]}}
class ConfigJson : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

}  // namespace listlab::cli
