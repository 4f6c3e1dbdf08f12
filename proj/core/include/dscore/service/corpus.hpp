#pragma once

#include "dscore/frontend/metrics.hpp"

#include <nlohmann/json.hpp>

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dscore::service {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SchemaError {
    int line = 0;  // 1-based
    std::string message;
};

struct FunctionRecord {
    std::string id;
    std::string project;
    std::string original_decompiled;
    std::map<std::string, std::string> candidates;  // tag -> source
    nlohmann::json provenance;

    // Filled at ingest.
    std::optional<frontend::SourceMetrics> metrics;
    std::string parse_error;  // why metrics are missing

    [[nodiscard]] bool parseable() const { return metrics.has_value(); }
};

struct Corpus {
    std::vector<FunctionRecord> records;
    std::vector<SchemaError> errors;
};

/// Validates one JSON object. Throws std::invalid_argument describing the
/// first schema violation.
FunctionRecord record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FunctionRecord& r);

/// One record per line; blank lines are skipped. Bad lines and duplicate ids
/// are collected in Corpus::errors.
Corpus ingest(std::istream& in);
/// Throws IoError when the file cannot be read.
Corpus ingest(const std::string& path);

struct FilterResult {
    std::vector<FunctionRecord> kept;
    std::vector<std::pair<std::string, std::string>> dropped;  // id, reason
};

/// Keeps records with effective_lines >= min_lines and cyclomatic complexity
/// >= min_cc. Unparseable records are dropped.
FilterResult filter_dataset(const std::vector<FunctionRecord>& records, int min_lines = 20, int min_cc = 4);

}  // namespace dscore::service
