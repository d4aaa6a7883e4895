#include "config_json.hpp"

namespace listlab::cli {

namespace {

std::string scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

void flatten(const nlohmann::json& obj, std::vector<std::string>& parents,
             std::vector<CLI::ConfigItem>& out) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      parents.push_back(key);
      flatten(value, parents, out);
      parents.pop_back();
      continue;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    if (value.is_array()) {
      for (const auto& v : value) item.inputs.push_back(scalar(v));
    } else {
      item.inputs.push_back(scalar(value));
    }
    out.push_back(std::move(item));
  }
}

void dump(const CLI::App* app, bool default_also, nlohmann::json& j) {
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->get_configurable() == false || opt->get_lnames().empty()) continue;
    const auto name = opt->get_lnames().front();
    if (name == "help" || name == "config") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      j[name] = res.size() == 1 ? nlohmann::json(res.front()) : nlohmann::json(res);
    } else if (default_also && !opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    }
  }
  for (const CLI::App* sub : app->get_subcommands({})) {
    if (sub->count() == 0 && !default_also) continue;
    nlohmann::json child = nlohmann::json::object();
    dump(sub, default_also, child);
    j[sub->get_name()] = std::move(child);
  }
}

}  // namespace

std::string ConfigJson::to_config(const CLI::App* app, bool default_also, bool,
                                  std::string) const {
  nlohmann::json j = nlohmann::json::object();
  dump(app, default_also, j);
  return j.dump(2);
}

std::vector<CLI::ConfigItem> ConfigJson::from_config(std::istream& input) const {
  nlohmann::json j;
  try {
    input >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
  std::vector<std::string> parents;
  std::vector<CLI::ConfigItem> out;
  flatten(j, parents, out);
  return out;
}

}  // namespace listlab::cli
