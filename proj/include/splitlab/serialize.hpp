#pragma once

#include <string>

#include <json.hpp>

#include "splitlab/constants.hpp"
#include "splitlab/dynamics.hpp"
#include "splitlab/formal.hpp"

namespace splitlab {

inline constexpr const char* kSeriesFormat = "splitting-lab/series.v1";
inline constexpr const char* kReportFormat = "splitting-lab/report.v1";

/// Polynomials are emitted as {"<power-of-u>": [num, den]} with exact
/// decimal strings; floats as decimal strings tagged with their precision.
nlohmann::json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

nlohmann::json series_document(const FormalSolution& sol,
                               const ConstantEstimates* constants = nullptr);
nlohmann::json report_document(const SplittingReport& rep);

std::string report_csv(const SplittingReport& rep);

/// Serialize with a stable key order and fixed float rendering so equal
/// inputs produce byte-identical artifacts.
std::string dump_deterministic(const nlohmann::json& j);

}  // namespace splitlab
