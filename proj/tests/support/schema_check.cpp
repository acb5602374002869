#include "support/schema_check.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <stdexcept>

namespace pubindex::testing {

namespace {

bool has_type(const nlohmann::json& v, const std::string& type) {
  if (type == "null") return v.is_null();
  if (type == "boolean") return v.is_boolean();
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "integer") return v.is_number_integer() || (v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>())));
  if (type == "number") return v.is_number();
  throw std::invalid_argument("unsupported schema type '" + type + "'");
}

const nlohmann::json& resolve(const nlohmann::json& root, const std::string& ref) {
  const std::string prefix = "#/$defs/";
  if (ref.rfind(prefix, 0) != 0) throw std::invalid_argument("unsupported $ref '" + ref + "'");
  return root.at("$defs").at(ref.substr(prefix.size()));
}

void check(const nlohmann::json& root, const nlohmann::json& schema, const nlohmann::json& v,
           const std::string& at, std::vector<std::string>& errors) {
  static const std::vector<std::string> kKnown = {
      "$schema", "$id", "$defs", "$ref", "title", "description", "type", "properties", "required",
      "additionalProperties", "items", "enum", "const", "minimum", "maximum", "minItems", "maxItems",
      "minLength", "pattern"};
  for (const auto& [key, _] : schema.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      throw std::invalid_argument("unsupported schema keyword '" + key + "' at " + at);
    }
  }
  if (schema.contains("$ref")) {
    check(root, resolve(root, schema["$ref"].get<std::string>()), v, at, errors);
    return;
  }
  if (schema.contains("type")) {
    bool ok = false;
    if (schema["type"].is_array()) {
      for (const auto& t : schema["type"]) ok = ok || has_type(v, t.get<std::string>());
    } else {
      ok = has_type(v, schema["type"].get<std::string>());
    }
    if (!ok) {
      errors.push_back(at + ": expected type " + schema["type"].dump() + ", got " + v.type_name());
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == v;
    if (!found) errors.push_back(at + ": value " + v.dump() + " not in enum");
  }
  if (schema.contains("const") && schema["const"] != v) {
    errors.push_back(at + ": expected const " + schema["const"].dump());
  }
  if (v.is_number()) {
    if (schema.contains("minimum") && v.get<double>() < schema["minimum"].get<double>()) {
      errors.push_back(at + ": below minimum");
    }
    if (schema.contains("maximum") && v.get<double>() > schema["maximum"].get<double>()) {
      errors.push_back(at + ": above maximum");
    }
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (schema.contains("minLength") && s.size() < schema["minLength"].get<std::size_t>()) {
      errors.push_back(at + ": string shorter than minLength");
    }
    if (schema.contains("pattern") && !std::regex_search(s, std::regex(schema["pattern"].get<std::string>()))) {
      errors.push_back(at + ": '" + s + "' does not match " + schema["pattern"].get<std::string>());
    }
  }
  if (v.is_array()) {
    if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>()) {
      errors.push_back(at + ": fewer than minItems");
    }
    if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<std::size_t>()) {
      errors.push_back(at + ": more than maxItems");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        check(root, schema["items"], v[i], at + "[" + std::to_string(i) + "]", errors);
      }
    }
  }
  if (v.is_object()) {
    if (schema.contains("required")) {
      for (const auto& r : schema["required"]) {
        if (!v.contains(r.get<std::string>())) errors.push_back(at + ": missing '" + r.get<std::string>() + "'");
      }
    }
    const auto props = schema.value("properties", nlohmann::json::object());
    for (const auto& [key, value] : v.items()) {
      if (props.contains(key)) {
        check(root, props[key], value, at + "." + key, errors);
      } else if (schema.contains("additionalProperties") && schema["additionalProperties"] == false) {
        errors.push_back(at + ": unexpected property '" + key + "'");
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_schema(const nlohmann::json& schema, const nlohmann::json& instance) {
  std::vector<std::string> errors;
  check(schema, schema, instance, "$", errors);
  return errors;
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return nlohmann::json::parse(in);
}

}  // namespace pubindex::testing
