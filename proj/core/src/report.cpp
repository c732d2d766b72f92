#include "epf/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "epf/error.hpp"

namespace epf {

std::string render_delimited(const Table& table) {
  std::string out;
  for (size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ",";
    out += table.header[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Internal, "cannot write " + path);
  out << content;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

double pick_metric(const MetricsResult& r, Metric m) {
  return m == Metric::rmse ? r.rmse : r.mae;
}

}  // namespace

Table table_by_horizon(const std::vector<MetricsResult>& results, Metric metric) {
  if (results.empty()) throw Error(ErrorCode::EmptyInput, "no metrics");
  std::set<int> horizons;
  std::set<std::string> models;
  std::map<std::pair<std::string, int>, double> cells;
  for (const auto& r : results) {
    if (r.year != 0) continue;
    horizons.insert(r.horizon);
    models.insert(r.model);
    cells[{r.model, r.horizon}] = pick_metric(r, metric);
  }
  Table t;
  t.header.push_back("model");
  for (int h : horizons) t.header.push_back("h" + std::to_string(h));
  for (const auto& m : models) {
    std::vector<std::string> row{m};
    for (int h : horizons) {
      auto it = cells.find({m, h});
      row.push_back(it == cells.end() ? "" : fmt(it->second));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table table_by_year(const std::vector<MetricsResult>& results, Metric metric,
                    int horizon) {
  if (results.empty()) throw Error(ErrorCode::EmptyInput, "no metrics");
  std::set<int> years;
  std::set<std::string> models;
  std::map<std::pair<int, std::string>, double> cells;
  for (const auto& r : results) {
    if (r.year == 0 || r.horizon != horizon) continue;
    years.insert(r.year);
    models.insert(r.model);
    cells[{r.year, r.model}] = pick_metric(r, metric);
  }
  Table t;
  t.header.push_back("year");
  for (const auto& m : models) t.header.push_back(m);
  for (int y : years) {
    std::vector<std::string> row{std::to_string(y)};
    for (const auto& m : models) {
      auto it = cells.find({y, m});
      row.push_back(it == cells.end() ? "" : fmt(it->second));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table table_dm_matrix(const std::vector<DmResult>& results, int horizon) {
  if (results.empty()) throw Error(ErrorCode::EmptyInput, "no dm results");
  std::set<std::string> models;
  std::map<std::pair<std::string, std::string>, double> cells;
  for (const auto& r : results) {
    if (r.horizon != horizon) continue;
    models.insert(r.model_a);
    models.insert(r.model_b);
    cells[{r.model_a, r.model_b}] = r.p_value;
  }
  Table t;
  t.header.push_back("a\\b");
  for (const auto& m : models) t.header.push_back(m);
  for (const auto& a : models) {
    std::vector<std::string> row{a};
    for (const auto& b : models) {
      if (a == b) {
        row.push_back("—");
        continue;
      }
      auto it = cells.find({a, b});
      if (it != cells.end()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", it->second);
        row.push_back(buf);
      } else {
        row.push_back("");
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

constexpr int kCellW = 72, kCellH = 24, kMargin = 8;

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// 3-bucket shading across each row's numeric range.
const char* bucket_color(double v, double lo, double hi) {
  if (!(hi > lo)) return "#e8f5d0";
  double r = (v - lo) / (hi - lo);
  if (r < 1.0 / 3.0) return "#b6e3a0";
  if (r < 2.0 / 3.0) return "#f5eaa0";
  return "#f0b0a0";
}

std::string svg_open(int width, int height, const std::string& title) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                "height=\"%d\" font-family=\"monospace\" font-size=\"11\">\n",
                width, height);
  std::string out = buf;
  out += "<title>" + xml_escape(title) + "</title>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return out;
}

std::string text_at(double x, double y, const std::string& s) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "<text x=\"%.1f\" y=\"%.1f\">", x, y);
  return std::string(buf) + xml_escape(s) + "</text>\n";
}

}  // namespace

std::string svg_table_heatmap(const Table& table, const std::string& title) {
  const int cols = int(table.header.size());
  const int rows = int(table.rows.size());
  const int width = 2 * kMargin + cols * kCellW;
  const int height = 2 * kMargin + (rows + 2) * kCellH;
  std::string out = svg_open(width, height, title);
  out += text_at(kMargin, kMargin + 14, title);

  auto cell_xy = [&](int r, int c) {
    return std::make_pair(double(kMargin + c * kCellW),
                          double(kMargin + (r + 1) * kCellH));
  };
  for (int c = 0; c < cols; ++c) {
    auto [x, y] = cell_xy(0, c);
    out += text_at(x + 4, y + 16, table.header[size_t(c)]);
  }
  for (int r = 0; r < rows; ++r) {
    const auto& row = table.rows[size_t(r)];
    double lo = 0, hi = 0;
    bool first = true;
    for (size_t c = 1; c < row.size(); ++c) {
      try {
        double v = std::stod(row[c]);
        lo = first ? v : std::min(lo, v);
        hi = first ? v : std::max(hi, v);
        first = false;
      } catch (...) {
      }
    }
    for (int c = 0; c < int(row.size()); ++c) {
      auto [x, y] = cell_xy(r + 1, c);
      if (c > 0) {
        const char* color = "#ffffff";
        try {
          color = bucket_color(std::stod(row[size_t(c)]), lo, hi);
        } catch (...) {
        }
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%.1f\" y=\"%.1f\" width=\"%d\" height=\"%d\" "
                      "fill=\"%s\" stroke=\"#cccccc\"/>\n",
                      x, y, kCellW, kCellH, color);
        out += buf;
      }
      out += text_at(x + 4, y + 16, row[size_t(c)]);
    }
  }
  out += "</svg>\n";
  return out;
}

namespace {

constexpr int kChartW = 720, kChartH = 360, kPad = 48;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Scale {
  double lo, hi;
  double map(double v, double px0, double px1) const {
    double r = hi > lo ? (v - lo) / (hi - lo) : 0.5;
    return px0 + r * (px1 - px0);
  }
};

std::string polyline(const std::vector<std::pair<double, double>>& pts,
                     const char* color) {
  std::string out = "<polyline fill=\"none\" stroke=\"";
  out += color;
  out += "\" stroke-width=\"1.5\" points=\"";
  char buf[48];
  for (auto [x, y] : pts) {
    std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", x, y);
    out += buf;
  }
  out += "\"/>\n";
  return out;
}

}  // namespace

std::string svg_coefficient_paths(const CoefficientPathTable& paths,
                                  const std::string& title) {
  if (paths.horizons.empty() || paths.regressors.empty()) {
    throw Error(ErrorCode::EmptyInput, "empty coefficient path table");
  }
  double lo = paths.coefficients.minCoeff();
  double hi = paths.coefficients.maxCoeff();
  if (lo == hi) {
    lo -= 1;
    hi += 1;
  }
  Scale ys{lo, hi};
  Scale xs{double(paths.horizons.front()), double(paths.horizons.back())};

  std::string out = svg_open(kChartW, kChartH, title);
  out += text_at(kPad, 18, title);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n",
                kPad, kChartH - kPad, kChartW - kPad, kChartH - kPad);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n",
                kPad, kPad, kPad, kChartH - kPad);
  out += buf;

  for (long j = 0; j < long(paths.regressors.size()); ++j) {
    std::vector<std::pair<double, double>> pts;
    for (long i = 0; i < long(paths.horizons.size()); ++i) {
      double x = xs.map(double(paths.horizons[size_t(i)]), kPad, kChartW - kPad);
      double y = ys.map(paths.coefficients(i, j), kChartH - kPad, kPad);
      pts.emplace_back(x, y);
    }
    const char* color = kPalette[size_t(j) % (sizeof(kPalette) / sizeof(*kPalette))];
    out += polyline(pts, color);
    double ly = 30.0 + 12.0 * double(j % 24);
    double lx = kChartW - kPad + 4 - 110.0 * double(j / 24);
    out += "<g fill=\"" + std::string(color) + "\">" +
           text_at(lx - 108, ly, paths.regressors[size_t(j)]) + "</g>";
  }
  out += text_at(kPad, kChartH - kPad + 16, "horizon (days)");
  out += text_at(4, kPad, fmt(hi));
  out += text_at(4, kChartH - kPad, fmt(lo));
  out += "</svg>\n";
  return out;
}

std::string svg_components(const std::vector<ForecastRecord>& records,
                           const std::string& title) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no records");
  const long n = long(records.size());

  // Cumulative stacking: intercept, then each group; last envelope is the
  // forecast itself.
  std::vector<std::vector<double>> levels(size_t(kRegressorGroupCount + 1),
                                          std::vector<double>(size_t(n)));
  double lo = 0, hi = 0;
  for (long i = 0; i < n; ++i) {
    double acc = records[size_t(i)].intercept;
    levels[0][size_t(i)] = acc;
    for (int g = 0; g < kRegressorGroupCount; ++g) {
      acc += records[size_t(i)].components[size_t(g)];
      levels[size_t(g + 1)][size_t(i)] = acc;
    }
    lo = std::min(lo, *std::min_element(levels[0].begin(), levels[0].end()));
    for (const auto& lv : levels) {
      lo = std::min(lo, lv[size_t(i)]);
      hi = std::max(hi, lv[size_t(i)]);
    }
    hi = std::max(hi, records[size_t(i)].actual);
    lo = std::min(lo, records[size_t(i)].actual);
  }
  if (lo == hi) {
    lo -= 1;
    hi += 1;
  }
  Scale ys{lo, hi};
  Scale xs{0, double(n - 1)};

  std::string out = svg_open(kChartW, kChartH, title);
  out += text_at(kPad, 18, title);
  const char* names[] = {"intercept",       "calendar_week", "calendar_season",
                         "autoreg",         "res_load",      "fuels",
                         "noise"};
  for (size_t lvl = 0; lvl < levels.size(); ++lvl) {
    std::vector<std::pair<double, double>> pts;
    for (long i = 0; i < n; ++i) {
      pts.emplace_back(xs.map(double(i), kPad, kChartW - kPad),
                       ys.map(levels[lvl][size_t(i)], kChartH - kPad, kPad));
    }
    const char* color = kPalette[lvl % (sizeof(kPalette) / sizeof(*kPalette))];
    out += polyline(pts, color);
    out += "<g fill=\"" + std::string(color) + "\">" +
           text_at(kChartW - kPad - 104, 30.0 + 12.0 * double(lvl), names[lvl]) +
           "</g>";
  }
  // realized price for reference
  std::vector<std::pair<double, double>> actual_pts;
  for (long i = 0; i < n; ++i) {
    actual_pts.emplace_back(xs.map(double(i), kPad, kChartW - kPad),
                            ys.map(records[size_t(i)].actual, kChartH - kPad, kPad));
  }
  out += polyline(actual_pts, "#000000");
  out += "<g fill=\"#000000\">" +
         text_at(kChartW - kPad - 104, 30.0 + 12.0 * double(levels.size()),
                 "actual") +
         "</g>";
  out += "</svg>\n";
  return out;
}

}  // namespace epf
