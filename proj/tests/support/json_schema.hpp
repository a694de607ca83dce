#pragma once

// Validator for the JSON Schema subset used by the shipped schemas:
// $ref (local #/$defs only), oneOf, anyOf, type, const, enum, properties,
// required, additionalProperties, items, min/maxItems, minLength, pattern and
// the numeric bounds. Unknown keywords are ignored.

#include <cmath>
#include <fstream>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

namespace schema_support {

using nlohmann::json;

class Validator {
 public:
  explicit Validator(json root) : root_(std::move(root)) {}

  static Validator from_file(const std::string& path) {
    std::ifstream in(path);
    return Validator(json::parse(in));
  }

  /// Empty when valid; otherwise one message per violation found.
  std::vector<std::string> validate(const json& instance) const {
    std::vector<std::string> errors;
    check(root_, instance, "$", errors);
    return errors;
  }

 private:
  const json& resolve(const std::string& ref) const {
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) throw std::runtime_error("unsupported $ref " + ref);
    return root_.at("$defs").at(ref.substr(prefix.size()));
  }

  static bool has_type(const json& v, const std::string& type) {
    if (type == "null") return v.is_null();
    if (type == "boolean") return v.is_boolean();
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "number") return v.is_number();
    if (type == "integer") {
      if (v.is_number_integer()) return true;
      return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
    }
    return false;
  }

  void check(const json& schema, const json& v, const std::string& path,
             std::vector<std::string>& errors) const {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) errors.push_back(path + ": not allowed");
      return;
    }
    if (schema.contains("$ref")) check(resolve(schema["$ref"]), v, path, errors);

    if (schema.contains("type")) {
      const json& t = schema["type"];
      bool ok = false;
      if (t.is_string()) {
        ok = has_type(v, t);
      } else {
        for (const auto& option : t) ok = ok || has_type(v, option);
      }
      if (!ok) {
        errors.push_back(path + ": wrong type, expected " + t.dump());
        return;
      }
    }
    if (schema.contains("const") && v != schema["const"]) {
      errors.push_back(path + ": expected " + schema["const"].dump());
    }
    if (schema.contains("enum")) {
      bool found = false;
      for (const auto& option : schema["enum"]) found = found || v == option;
      if (!found) errors.push_back(path + ": not in enum");
    }
    if (schema.contains("oneOf") || schema.contains("anyOf")) {
      const bool one = schema.contains("oneOf");
      int matches = 0;
      for (const auto& sub : schema[one ? "oneOf" : "anyOf"]) {
        std::vector<std::string> sub_errors;
        check(sub, v, path, sub_errors);
        if (sub_errors.empty()) ++matches;
      }
      if (one ? matches != 1 : matches == 0) {
        errors.push_back(path + ": " + std::to_string(matches) + " alternatives matched");
      }
    }

    if (v.is_number()) {
      const double x = v.get<double>();
      if (schema.contains("minimum") && x < schema["minimum"].get<double>()) {
        errors.push_back(path + ": below minimum");
      }
      if (schema.contains("maximum") && x > schema["maximum"].get<double>()) {
        errors.push_back(path + ": above maximum");
      }
      if (schema.contains("exclusiveMinimum") && x <= schema["exclusiveMinimum"].get<double>()) {
        errors.push_back(path + ": not above exclusiveMinimum");
      }
      if (schema.contains("exclusiveMaximum") && x >= schema["exclusiveMaximum"].get<double>()) {
        errors.push_back(path + ": not below exclusiveMaximum");
      }
    }

    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (schema.contains("minLength") && s.size() < schema["minLength"].get<std::size_t>()) {
        errors.push_back(path + ": too short");
      }
      if (schema.contains("pattern") &&
          !std::regex_search(s, std::regex(schema["pattern"].get<std::string>()))) {
        errors.push_back(path + ": does not match pattern");
      }
    }

    if (v.is_array()) {
      if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>()) {
        errors.push_back(path + ": too few items");
      }
      if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<std::size_t>()) {
        errors.push_back(path + ": too many items");
      }
      if (schema.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          check(schema["items"], v[i], path + "[" + std::to_string(i) + "]", errors);
        }
      }
    }

    if (v.is_object()) {
      if (schema.contains("required")) {
        for (const auto& key : schema["required"]) {
          if (!v.contains(key.get<std::string>())) {
            errors.push_back(path + "." + key.get<std::string>() + ": required");
          }
        }
      }
      const json empty = json::object();
      const json& props = schema.contains("properties") ? schema["properties"] : empty;
      for (const auto& [key, value] : v.items()) {
        const std::string sub = path + "." + key;
        if (props.contains(key)) {
          check(props[key], value, sub, errors);
        } else if (schema.contains("additionalProperties")) {
          check(schema["additionalProperties"], value, sub, errors);
        }
      }
    }
  }

  json root_;
};

}  // namespace schema_support
