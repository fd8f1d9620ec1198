#pragma once

#include "kcross/certificate.hpp"
#include "kcross/coloring.hpp"
#include "kcross/regularity.hpp"
#include "kcross/same_type.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace kcross {

/// {"num": ..., "den": ..., "decimal": "..."}; num/den are JSON integers when
/// they fit in 64 bits and decimal strings otherwise.
nlohmann::json rational_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json stats_json(const ColoringStats& stats);
nlohmann::json certificate_json(const Certificate& cert);
nlohmann::json conditions_json(const ConditionReport& report);
nlohmann::json box_partition_json(const GeometricGraph& g, const BoxPartition& partition);
nlohmann::json same_type_json(const SameTypeCheck& check);

enum class Pipeline { BaselineRandom, Greedy, FullTheorem };

const char* to_string(Pipeline p);
Pipeline parse_pipeline(const std::string& name);

struct Report {
    std::string instance;
    std::size_t n = 0;
    std::size_t m = 0;
    Rational density;
    std::uint64_t crossings = 0;
    Pipeline pipeline = Pipeline::Greedy;
    std::uint32_t k = 2;
    std::uint64_t seed = 0;
    ColoringStats stats;
    std::optional<Certificate> certificate;
    bool ok = true;
    std::string failed_stage;
    std::string message;
    std::map<std::string, double> timings_ms;
};

nlohmann::json report_json(const Report& report);

/// Frozen CSV header for experiment summaries; one row per report.
const std::string& csv_header();
std::string csv_row(const Report& report);

/// Standalone SVG: one <line> per edge colored by `coloring`, one <circle> per vertex.
void write_svg(std::ostream& out, const GeometricGraph& g, const EdgeColoring* coloring);

struct ExperimentConfig {
    std::string instance = "instance";
    Pipeline pipeline = Pipeline::Greedy;
    std::uint32_t k = 2;
    std::uint64_t seed = 1;
    BuildParams build;
    std::string out_dir;  // empty: no files written
    bool write_json = true;
    bool write_csv = true;
    bool write_svg = false;
};

/// Runs one pipeline on g. Pipeline failures are recorded in the report (the
/// greedy coloring stands in for the statistics) rather than thrown.
Report run_experiment(const GeometricGraph& g, const ExperimentConfig& config, EdgeColoring* coloring_out = nullptr);

} // namespace kcross
