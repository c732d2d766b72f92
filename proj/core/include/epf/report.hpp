#pragma once

#include <string>
#include <vector>

#include "epf/metrics.hpp"
#include "epf/models.hpp"

namespace epf {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_delimited(const Table& table);
void write_text_file(const std::string& path, const std::string& content);

enum class Metric { rmse, mae };

// models x horizons grid of pooled scores.
Table table_by_horizon(const std::vector<MetricsResult>& results, Metric metric);

// years x models grid for one horizon.
Table table_by_year(const std::vector<MetricsResult>& results, Metric metric,
                    int horizon);

// model x model one-sided p-values for one horizon; diagonal marked.
Table table_dm_matrix(const std::vector<DmResult>& results, int horizon);

// Standalone SVGs; all rendering is deterministic.
std::string svg_table_heatmap(const Table& table, const std::string& title);
std::string svg_coefficient_paths(const CoefficientPathTable& paths,
                                  const std::string& title);
// Records for one model/horizon, ordered by (target, hour); cumulative
// component stacking so the top envelope equals the forecast.
std::string svg_components(const std::vector<ForecastRecord>& records,
                           const std::string& title);

}  // namespace epf
