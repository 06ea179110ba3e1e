#pragma once

// Command reports and their table / csv / json renderings. Every number is
// formatted once, to 12 significant digits, and all three views print that
// same text.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twobc/hilbert.hpp"

namespace twobc::cli {

enum class Format { table, csv, json };

std::optional<Format> parse_format(std::string_view text);

inline constexpr int kSignificantDigits = 12;

/// %.12g
std::string format_number(double x);

class Cell {
 public:
  Cell() = default;  // empty, shown as "-"
  Cell(double x) : value_(x) {}
  Cell(Complex z) : value_(z) {}
  Cell(std::size_t n) : value_(static_cast<std::uint64_t>(n)) {}
  Cell(bool b) : value_(b) {}
  Cell(std::string s) : value_(std::move(s)) {}
  Cell(const char* s) : value_(std::string(s)) {}

  /// Text shown in table and csv views.
  std::string text() const;

  const auto& value() const noexcept { return value_; }

 private:
  std::variant<std::monostate, double, Complex, std::uint64_t, bool, std::string> value_;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, Cell>> summary;
  std::vector<Table> tables;
};

void render(const Report& report, Format format, std::ostream& out);

}  // namespace twobc::cli
