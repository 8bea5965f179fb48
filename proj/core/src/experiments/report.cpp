#include "batchq/experiments/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace batchq::experiments {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void ComparisonReport::append(const ComparisonReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

bool ComparisonReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const StatRow& r) { return r.pass; });
}

void ComparisonReport::write_csv(std::ostream& out) const {
  out << "study,statistic,rho,value,threshold,pass,seed,n1,n2\n";
  for (const StatRow& r : rows) {
    out << r.study << ',' << r.statistic << ',' << fmt(r.rho) << ',' << fmt(r.value) << ','
        << fmt(r.threshold) << ',' << (r.pass ? "true" : "false") << ',' << r.seed << ',' << r.n1
        << ',' << r.n2 << '\n';
  }
}

void ComparisonReport::write_json(std::ostream& out, const std::string& config_line) const {
  nlohmann::json j;
  if (!config_line.empty()) j["config"] = config_line;
  j["all_pass"] = all_pass();
  j["rows"] = nlohmann::json::array();
  for (const StatRow& r : rows) {
    nlohmann::json row;
    row["study"] = r.study;
    row["statistic"] = r.statistic;
    row["rho"] = r.rho;
    row["value"] = r.value;
    if (std::isnan(r.threshold)) {
      row["threshold"] = nullptr;
    } else {
      row["threshold"] = r.threshold;
    }
    row["pass"] = r.pass;
    row["seed"] = r.seed;
    row["n1"] = r.n1;
    row["n2"] = r.n2;
    j["rows"].push_back(std::move(row));
  }
  out << j.dump(2) << '\n';
}

std::vector<std::string> write_gnuplot_data(const ComparisonReport& report,
                                            const std::string& dir,
                                            const std::string& header) {
  namespace fs = std::filesystem;
  std::map<std::string, std::vector<const StatRow*>> by_stat;
  for (const StatRow& r : report.rows) by_stat[r.study + "_" + r.statistic].push_back(&r);

  std::vector<std::string> files;
  for (const auto& [name, rows] : by_stat) {
    const fs::path file = fs::path(dir) / (name + ".dat");
    std::ofstream out(file);
    if (!out) throw std::runtime_error("write_gnuplot_data: cannot open " + file.string());
    if (!header.empty()) out << header << '\n';
    out << "# rho value\n";
    for (const StatRow* r : rows) out << fmt(r->rho) << ' ' << fmt(r->value) << '\n';
    files.push_back(file.string());
  }
  return files;
}

}  // namespace batchq::experiments
