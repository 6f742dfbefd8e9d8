#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "voa/model.hpp"

namespace voa {

inline constexpr int kModelFormatVersion = 1;

// Sorted keys, compact, floats as %.17g, non-finite floats as strings,
// trailing LF. Deterministic byte output for a given document.
std::string canonical_dump(const nlohmann::json& j);

std::string sha256_hex(const std::string& bytes);

nlohmann::json scalar_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j);
nlohmann::json vector_json(const GradedVector& v);
GradedVector vector_from_json(const nlohmann::json& j, int cutoff);

// Full model document including its "fingerprint" field.
nlohmann::json model_to_json(const VOAModel& model);
std::string model_fingerprint(const VOAModel& model);
// Throws InputError on schema problems or fingerprint mismatch.
VOAModel model_from_json(const nlohmann::json& doc);

void save_model(const VOAModel& model, const std::string& path);
VOAModel load_model(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace voa
