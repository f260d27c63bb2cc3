#pragma once

#include <string>

#include <json.hpp>

#include "histomark/attacks.hpp"
#include "histomark/bench.hpp"
#include "histomark/codec.hpp"
#include "histomark/metrics.hpp"

namespace histomark {

/// JSON views of the reports. Every document carries "kind" and
/// "schema_version" and validates against schema/report.schema.json.
/// Infinite PSNR is written as null.
inline constexpr int kReportSchemaVersion = 1;

nlohmann::json to_json(const EmbedParams& params);
nlohmann::json to_json(const QualityReport& q);
nlohmann::json to_json(const DetectionReport& d, const std::string& image);
nlohmann::json to_json(const EmbedResult& r, const std::string& input, const std::string& output);
nlohmann::json to_json(const BenchReport& report);
nlohmann::json attack_json(const AttackSpec& spec, const std::string& input, const std::string& output,
                           const QualityReport& q);

}  // namespace histomark
