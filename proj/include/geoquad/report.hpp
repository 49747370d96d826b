#pragma once

#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "geoquad/errors.hpp"

namespace geoquad {

struct Axis {
    std::string name;
    std::vector<double> values;
};

std::vector<double> linspace(double lo, double hi, int count);
std::vector<double> logspace(double lo, double hi, int count);

/// Tabular experiment result: value columns over the cartesian product of
/// the axes, flattened row-major (last axis fastest). An optional "failed"
/// column (0/1) flags cells whose values are NaN by failure rather than by
/// result. Metadata is free-form provenance (config echo, versions).
struct ExperimentReport {
    std::string kind;
    std::vector<Axis> axes;
    // deque: add_column hands out references that must survive later appends
    std::deque<std::pair<std::string, std::vector<double>>> columns;
    std::map<std::string, std::string> metadata;

    std::size_t cell_count() const;
    std::vector<double>& add_column(const std::string& name);
    const std::vector<double>* column(const std::string& name) const;

    /// Shape check plus finite-or-flagged: every column has cell_count()
    /// entries and non-finite entries appear only in cells with failed != 0.
    void validate() const;
};

/// Shortest round-trip decimal rendering of a double ("%.17g").
std::string format_double(double value);

std::string to_csv(const ExperimentReport& report);
nlohmann::json to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& doc);

/// Throws IoError if the document does not match the report schema.
void validate_report_json(const nlohmann::json& doc);

void emit_csv(const ExperimentReport& report, const std::string& path);
void emit_json(const ExperimentReport& report, const std::string& path);

/// Line plot: first axis on x, every column a polyline. y log-scaled when
/// log_y and all values are positive.
void emit_svg_line(const ExperimentReport& report, const std::string& path, bool log_y = false);

/// Heatmap of one column over the first two axes.
void emit_svg_heatmap(const ExperimentReport& report, const std::string& column_name,
                      const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace geoquad
