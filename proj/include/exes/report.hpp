#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "exes/experiments.hpp"

namespace exes {

/// Version string stamped into reports and manifests.
std::string_view code_version();

/// Shortest decimal form of `v` at 12 significant digits.
std::string format_number(double v);

/// `v` rounded to 12 significant digits, for JSON emission.
double round12(double v);

/// Canonical report document. Contains no timestamps or scheduling details,
/// so identical (config, code version) pairs serialize byte for byte alike.
nlohmann::json report_to_json(const ExperimentReport& report);

void write_dyads_csv(std::ostream& out, const ExperimentReport& report);
void write_rounds_csv(std::ostream& out, const ExperimentReport& report);
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);
void write_ablation_csv(std::ostream& out, const std::vector<AblationDelta>& rows);
void write_reliance_csv(std::ostream& out, const ExperimentReport& report);

struct RunManifest {
    std::string run_id;
    std::string config_hash;
    std::string code_version;
    std::string created_at;
    std::vector<std::string> artifacts;  // relative to the run directory
};

/// Default run directory name: UTC timestamp plus config hash.
std::string default_run_id(const std::string& config_hash);

/// Writes every artifact of `report` under `dir` and then manifest.json.
/// Throws IoError when a file cannot be written.
RunManifest write_run(const ExperimentReport& report, const std::filesystem::path& dir);

nlohmann::json read_json_file(const std::filesystem::path& path);

/// Minimal CSV reader for the files written above (no quoted fields).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Per-condition values of one metric column of a dyads.csv file, in file
/// order of first appearance.
std::vector<std::pair<std::string, std::vector<double>>> metric_by_condition(const CsvTable& dyads,
                                                                            const std::string& metric);

}  // namespace exes
