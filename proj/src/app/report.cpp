#include "geophase/app/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace geophase::app {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string value_text(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return csv_escape(std::get<std::string>(v));
}

// Doubles go through the same 12-digit text so CSV and JSON agree.
nlohmann::ordered_json number_json(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return nlohmann::ordered_json::parse(format_number(x));
}

nlohmann::ordered_json value_json(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return number_json(*d);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::get<std::string>(v);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_report(const Report& report, Format format, std::ostream& out) {
  if (format == Format::csv) {
    out << "observable,label,value\n";
    for (const auto& r : report.records) {
      out << csv_escape(r.observable) << ',' << csv_escape(r.label) << ',' << value_text(r.value) << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["command"] = report.command;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    nlohmann::ordered_json rec;
    rec["observable"] = r.observable;
    rec["label"] = r.label;
    rec["value"] = value_json(r.value);
    doc["records"].push_back(std::move(rec));
  }
  out << doc.dump(2) << '\n';
}

void write_sweep(const SweepTable& table, Format format, std::ostream& out) {
  if (format == Format::csv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["axis"] = table.axis;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (double x : row) r.push_back(number_json(x));
    doc["rows"].push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace geophase::app
