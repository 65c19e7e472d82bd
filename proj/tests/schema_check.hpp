// Minimal JSON-Schema validator for the report schema. Covers the subset the
// shipped schema uses: $ref into $defs, type (single or list), enum,
// properties/required/additionalProperties, items, and numeric bounds.
#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

namespace schemacheck {

using json = nlohmann::ordered_json;

inline bool type_matches(const std::string& type, const json& v) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    if (type == "integer") return v.is_number_integer() || v.is_number_unsigned();
    if (type == "number") return v.is_number();
    return false;
}

inline bool validate(const json& root, const json& schema, const json& instance,
                     const std::string& path, std::string& error) {
    if (schema.contains("$ref")) {
        const std::string ref = schema["$ref"].get<std::string>();
        const std::string prefix = "#/$defs/";
        if (ref.rfind(prefix, 0) != 0) {
            error = path + ": unsupported $ref '" + ref + "'";
            return false;
        }
        const std::string name = ref.substr(prefix.size());
        if (!root.contains("$defs") || !root["$defs"].contains(name)) {
            error = path + ": unresolved $ref '" + ref + "'";
            return false;
        }
        return validate(root, root["$defs"][name], instance, path, error);
    }

    if (schema.contains("type")) {
        const json& type = schema["type"];
        bool ok = false;
        if (type.is_string()) {
            ok = type_matches(type.get<std::string>(), instance);
        } else {
            for (const auto& t : type) ok = ok || type_matches(t.get<std::string>(), instance);
        }
        if (!ok) {
            error = path + ": type mismatch (got " + std::string(instance.type_name()) + ")";
            return false;
        }
    }
    if (instance.is_null()) return true;  // nullable field: nothing more to check

    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema["enum"]) ok = ok || v == instance;
        if (!ok) {
            error = path + ": value " + instance.dump() + " not in enum";
            return false;
        }
    }

    if (instance.is_number()) {
        const double v = instance.get<double>();
        if (schema.contains("minimum") && v < schema["minimum"].get<double>()) {
            error = path + ": " + std::to_string(v) + " below minimum";
            return false;
        }
        if (schema.contains("maximum") && v > schema["maximum"].get<double>()) {
            error = path + ": " + std::to_string(v) + " above maximum";
            return false;
        }
        if (schema.contains("exclusiveMinimum") &&
            v <= schema["exclusiveMinimum"].get<double>()) {
            error = path + ": " + std::to_string(v) + " not above exclusiveMinimum";
            return false;
        }
        if (schema.contains("exclusiveMaximum") &&
            v >= schema["exclusiveMaximum"].get<double>()) {
            error = path + ": " + std::to_string(v) + " not below exclusiveMaximum";
            return false;
        }
    }

    if (instance.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"]) {
                if (!instance.contains(key.get<std::string>())) {
                    error = path + ": missing required key '" + key.get<std::string>() + "'";
                    return false;
                }
            }
        }
        const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        for (const auto& [key, value] : instance.items()) {
            if (props && props->contains(key)) {
                if (!validate(root, (*props)[key], value, path + "/" + key, error))
                    return false;
            } else if (schema.contains("additionalProperties") &&
                       schema["additionalProperties"].is_boolean() &&
                       !schema["additionalProperties"].get<bool>()) {
                error = path + ": unexpected key '" + key + "'";
                return false;
            }
        }
    }

    if (instance.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& element : instance) {
            if (!validate(root, schema["items"], element, path + "/" + std::to_string(i++),
                          error))
                return false;
        }
    }
    return true;
}

inline bool validate(const json& schema, const json& instance, std::string& error) {
    return validate(schema, schema, instance, "#", error);
}

}  // namespace schemacheck
