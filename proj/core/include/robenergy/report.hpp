#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robenergy/energy.hpp"

namespace robenergy {

struct InputFile {
  std::string path;
  std::string fnv1a64;  // content hash, hex
};

struct Comparison {
  double measured_j = 0.0;
  double deviation_pct = 0.0;  // (estimated - measured) / measured * 100, signed
};

/// Machine-readable record of one CLI run. Serialized with stable key order
/// and round-trip float formatting so identical inputs produce byte-identical
/// reports.
struct RunReport {
  std::string command;
  std::vector<InputFile> inputs;
  ElectricalParams params;
  IntegrationRule rule = IntegrationRule::left_riemann;
  double scale = 1.0;
  std::optional<EnergyReport> energy;
  std::optional<Comparison> comparison;
  std::optional<double> measured_duration_s;       // informational, no correction applied
  std::optional<double> duration_deviation_pct;
};

struct CompareRow {
  ElectricalParams params;
  EnergyReport energy;
  std::optional<double> deviation_pct;
};

struct CompareReport {
  std::string label;
  std::vector<InputFile> inputs;
  IntegrationRule rule = IntegrationRule::left_riemann;
  double scale = 1.0;
  std::vector<CompareRow> rows;
  std::optional<double> measured_j;
  std::optional<double> measured_duration_s;
  std::optional<double> duration_deviation_pct;
};

std::string fnv1a64_hex(const std::string& bytes);
InputFile hash_file(const std::string& path);

double deviation_pct(double estimated, double measured);

std::string run_report_to_json(const RunReport& report);
std::string compare_report_to_json(const CompareReport& report);

/// One data line of the side-by-side energy table:
///   "<label> | <e1> | <e2> | <measured> | <duration>"
/// with two decimals per number and "n/a" for a missing measurement.
std::string format_comparison_row(const std::string& label, double energy1_j,
                                  double energy2_j, std::optional<double> measured_j,
                                  double duration_s);

/// Header plus data line for a two-row comparison.
std::string compare_report_to_table(const CompareReport& report);

}  // namespace robenergy
