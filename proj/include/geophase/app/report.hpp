#pragma once

// Serialization of scenario reports and sweep tables.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "geophase/app/config.hpp"

namespace geophase::app {

using Value = std::variant<double, std::int64_t, std::string>;

/// One observable. `label` names the constituent, branch or trial.
struct Record {
  std::string observable;
  std::string label;
  Value value;
};

struct Report {
  std::string command;
  std::vector<Record> records;

  void add(std::string observable, std::string label, Value value) {
    records.push_back({std::move(observable), std::move(label), std::move(value)});
  }
};

struct SweepTable {
  std::string axis;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// %.12g; nan and inf print as "nan", "inf", "-inf".
std::string format_number(double x);

/// CSV: header `observable,label,value`, one line per record.
/// JSON: {"command": ..., "records": [{"observable", "label", "value"}, ...]}.
void write_report(const Report& report, Format format, std::ostream& out);

/// CSV: the column header, then one line per row. JSON: an object with the
/// axis, the columns and the rows as arrays.
void write_sweep(const SweepTable& table, Format format, std::ostream& out);

}  // namespace geophase::app
