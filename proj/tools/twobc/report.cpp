#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include <nlohmann/json.hpp>

namespace twobc::cli {

namespace {

using Json = nlohmann::ordered_json;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// The json value is parsed back from the formatted text so that it equals the
// number shown in the other views.
double shown(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

Json to_json(const Cell& cell) {
  return std::visit(Overloaded{
                        [](std::monostate) { return Json(nullptr); },
                        [](double x) { return Json(shown(x)); },
                        [](Complex z) { return Json::array({shown(z.real()), shown(z.imag())}); },
                        [](std::uint64_t n) { return Json(n); },
                        [](bool b) { return Json(b); },
                        [](const std::string& s) { return Json(s); },
                    },
                    cell.value());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render_table(const Report& report, std::ostream& out) {
  out << report.command << '\n';
  std::size_t key_width = 0;
  for (const auto& [key, _] : report.summary) key_width = std::max(key_width, key.size());
  for (const auto& [key, cell] : report.summary) {
    out << "  " << key << std::string(key_width - key.size(), ' ') << "  " << cell.text() << '\n';
  }
  for (const auto& table : report.tables) {
    out << '\n' << table.name << '\n';
    std::vector<std::size_t> width(table.columns.size());
    for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
    std::vector<std::vector<std::string>> texts;
    for (const auto& row : table.rows) {
      auto& t = texts.emplace_back();
      for (std::size_t c = 0; c < row.size(); ++c) {
        t.push_back(row[c].text());
        width[c] = std::max(width[c], t.back().size());
      }
    }
    auto line = [&](const std::vector<std::string>& cells) {
      out << ' ';
      for (std::size_t c = 0; c < cells.size(); ++c) {
        out << ' ' << cells[c];
        if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size() + 1, ' ');
      }
      out << '\n';
    };
    line(table.columns);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto& t : texts) line(t);
  }
}

void render_csv(const Report& report, std::ostream& out) {
  out << "# " << report.command << '\n';
  out << "key,value\n";
  for (const auto& [key, cell] : report.summary) out << csv_field(key) << ',' << csv_field(cell.text()) << '\n';
  for (const auto& table : report.tables) {
    out << "\n# " << table.name << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << csv_field(table.columns[c]);
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(row[c].text());
      out << '\n';
    }
  }
}

void render_json(const Report& report, std::ostream& out) {
  Json doc;
  doc["command"] = report.command;
  Json summary = Json::object();
  for (const auto& [key, cell] : report.summary) summary[key] = to_json(cell);
  doc["summary"] = std::move(summary);
  Json tables = Json::object();
  for (const auto& table : report.tables) {
    Json rows = Json::array();
    for (const auto& row : table.rows) {
      Json r = Json::object();
      for (std::size_t c = 0; c < row.size(); ++c) r[table.columns[c]] = to_json(row[c]);
      rows.push_back(std::move(r));
    }
    tables[table.name] = std::move(rows);
  }
  doc["tables"] = std::move(tables);
  out << doc.dump(2) << '\n';
}

}  // namespace

std::optional<Format> parse_format(std::string_view text) {
  if (text == "table") return Format::table;
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  return std::nullopt;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x == 0.0 ? 0.0 : x);
  return buf;
}

std::string Cell::text() const {
  return std::visit(Overloaded{
                        [](std::monostate) { return std::string("-"); },
                        [](double x) { return format_number(x); },
                        [](Complex z) { return "(" + format_number(z.real()) + ", " + format_number(z.imag()) + ")"; },
                        [](std::uint64_t n) { return std::to_string(n); },
                        [](bool b) { return std::string(b ? "true" : "false"); },
                        [](const std::string& s) { return s; },
                    },
                    value_);
}

void render(const Report& report, Format format, std::ostream& out) {
  switch (format) {
    case Format::table: render_table(report, out); break;
    case Format::csv: render_csv(report, out); break;
    case Format::json: render_json(report, out); break;
  }
}

}  // namespace twobc::cli
