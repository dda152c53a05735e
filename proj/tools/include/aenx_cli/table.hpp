#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace aenx::cli {

/// Fixed float formatting shared by CSV and JSON output: 9 significant digits.
std::string format_real(double v);
/// The value format_real prints, as a double (what JSON serializes).
double rounded_real(double v);

using Cell = std::variant<double, long long, std::string, bool>;

/// Column-stable table that serializes to CSV or to a JSON array of rows.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return rows_.size(); }

  void write_csv(std::ostream& os) const;
  nlohmann::ordered_json to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string cell_text(const Cell& cell);
nlohmann::ordered_json cell_to_json(const Cell& cell);

}  // namespace aenx::cli
