#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace batchq::experiments {

/// One named statistic from a study, with the sample sizes and seed that
/// produced it. threshold is NaN for informational rows; pass is true for
/// those.
struct StatRow {
  std::string study;
  std::string statistic;
  double rho = 0.0;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = true;
  std::uint64_t seed = 0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

struct ComparisonReport {
  std::vector<StatRow> rows;

  void add(StatRow row) { rows.push_back(std::move(row)); }
  void append(const ComparisonReport& other);
  bool all_pass() const;

  /// CSV: study,statistic,rho,value,threshold,pass,seed,n1,n2
  void write_csv(std::ostream& out) const;
  /// JSON summary: rows plus an overall pass flag; config_line, when given,
  /// is recorded as the "config" field.
  void write_json(std::ostream& out, const std::string& config_line = "") const;
};

/// One gnuplot-friendly two-column file (rho, value) per statistic,
/// written into dir as <study>_<statistic>.dat. A non-empty header becomes
/// the leading comment line of each file. Returns the file names.
std::vector<std::string> write_gnuplot_data(const ComparisonReport& report,
                                            const std::string& dir,
                                            const std::string& header = "");

}  // namespace batchq::experiments
