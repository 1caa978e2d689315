#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dualrisk/rational.hpp"

namespace dualrisk {

/// Comma-separated table with a header row. Cells holding commas, quotes or
/// newlines are quoted; rationals go in as `p/q`.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add(std::vector<std::string> row);
  /// item, subject, exact value, 12-digit decimal.
  void add_exact(const std::string& item, const std::string& subject, const Rational& value);
  /// item, subject, empty exact cell, 12-digit decimal.
  void add_real(const std::string& item, const std::string& subject, double value);
  /// item, subject, text, empty decimal cell.
  void add_text(const std::string& item, const std::string& subject, const std::string& text);

  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct ReproFile {
  std::string name;
  CsvTable table;
};

/// Every worked number of the divergence example, the apportionment
/// examples, the derivative portfolios and the self-protection study, one
/// table per topic: divergence.csv, apportionment.csv, portfolio.csv,
/// self_protection.csv. Deterministic.
std::vector<ReproFile> repro_tables();

/// Writes repro_tables() into `dir` (created if missing); returns the paths.
std::vector<std::filesystem::path> write_repro(const std::filesystem::path& dir);

}  // namespace dualrisk
