#include "robenergy/report.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "robenergy/errors.hpp"
#include "robenergy/version.hpp"

namespace robenergy {

namespace {

using json = nlohmann::ordered_json;

json params_node(const ElectricalParams& params) {
  return {{"r_kt2", params.r_kt2}, {"p_overhead", params.p_overhead}};
}

json energy_node(const EnergyReport& e) {
  json node;
  node["total_j"] = e.total_energy;
  node["mechanical_j"] = e.mechanical_energy;
  node["joule_j"] = e.joule_energy;
  node["overhead_j"] = e.overhead_energy;
  node["duration_s"] = e.duration;
  node["overhead_fraction"] = e.overhead_fraction;
  node["rule"] = to_string(e.integration_rule);
  return node;
}

json inputs_node(const std::vector<InputFile>& inputs) {
  json arr = json::array();
  for (const InputFile& f : inputs) arr.push_back({{"path", f.path}, {"fnv1a64", f.fnv1a64}});
  return arr;
}

json report_header(const std::string& command) {
  json doc;
  doc["report_version"] = kReportVersion;
  doc["toolkit_version"] = kToolkitVersion;
  doc["command"] = command;
  return doc;
}

std::string two_decimals(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

InputFile hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return {path, fnv1a64_hex(buffer.str())};
}

double deviation_pct(double estimated, double measured) {
  return (estimated - measured) / measured * 100.0;
}

std::string run_report_to_json(const RunReport& report) {
  json doc = report_header(report.command);
  doc["inputs"] = inputs_node(report.inputs);
  doc["params"] = params_node(report.params);
  doc["rule"] = to_string(report.rule);
  doc["scale"] = report.scale;
  if (report.energy) doc["energy"] = energy_node(*report.energy);
  if (report.comparison) {
    doc["comparison"] = {{"measured_j", report.comparison->measured_j},
                         {"deviation_pct", report.comparison->deviation_pct}};
  }
  if (report.measured_duration_s) doc["measured_duration_s"] = *report.measured_duration_s;
  if (report.duration_deviation_pct)
    doc["duration_deviation_pct"] = *report.duration_deviation_pct;
  return doc.dump(2) + "\n";
}

std::string compare_report_to_json(const CompareReport& report) {
  json doc = report_header("compare");
  doc["label"] = report.label;
  doc["inputs"] = inputs_node(report.inputs);
  doc["rule"] = to_string(report.rule);
  doc["scale"] = report.scale;
  if (report.measured_j) doc["measured_j"] = *report.measured_j;
  if (report.measured_duration_s) doc["measured_duration_s"] = *report.measured_duration_s;
  if (report.duration_deviation_pct)
    doc["duration_deviation_pct"] = *report.duration_deviation_pct;

  json rows = json::array();
  for (const CompareRow& row : report.rows) {
    json node;
    node["params"] = params_node(row.params);
    node["energy"] = energy_node(row.energy);
    if (row.deviation_pct) node["deviation_pct"] = *row.deviation_pct;
    rows.push_back(std::move(node));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string format_comparison_row(const std::string& label, double energy1_j, double energy2_j,
                                  std::optional<double> measured_j, double duration_s) {
  std::ostringstream out;
  out << label << " | " << two_decimals(energy1_j) << " | " << two_decimals(energy2_j) << " | "
      << (measured_j ? two_decimals(*measured_j) : std::string("n/a")) << " | "
      << two_decimals(duration_s);
  return out.str();
}

std::string compare_report_to_table(const CompareReport& report) {
  std::ostringstream out;
  out << "movement | params1_j | params2_j | measured_j | time_s\n";
  if (report.rows.size() == 2) {
    out << format_comparison_row(report.label, report.rows[0].energy.total_energy,
                                 report.rows[1].energy.total_energy, report.measured_j,
                                 report.rows[0].energy.duration)
        << "\n";
  }
  if (report.measured_j) {
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      if (report.rows[i].deviation_pct)
        out << "params" << i + 1 << " deviation: " << two_decimals(*report.rows[i].deviation_pct)
            << "%\n";
    }
  }
  return out.str();
}

}  // namespace robenergy
