#include "gridid/measurements.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

namespace gridid {

std::string Diagnostic::message() const {
  const char* what = kind == Kind::kDuplicateVoltage ? "voltage" : "current";
  return std::string(what) + " at node " + std::to_string(node) +
         " is identical in snapshots " + std::to_string(snapshot) + " and " +
         std::to_string(snapshot + 1);
}

namespace {

bool all_finite(const Eigen::VectorXcd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) {
      return false;
    }
  }
  return true;
}

}  // namespace

MeasurementSet MeasurementSet::validate(std::vector<PhasorSnapshot> snapshots,
                                        std::vector<Diagnostic>* diagnostics) {
  if (snapshots.empty()) {
    throw ShapeError("measurement set has no snapshots");
  }

  const bool all_unassigned =
      std::all_of(snapshots.begin(), snapshots.end(),
                  [](const PhasorSnapshot& s) { return s.index == 0; });
  if (all_unassigned) {
    int k = 1;
    for (auto& s : snapshots) s.index = k++;
  } else {
    std::sort(snapshots.begin(), snapshots.end(),
              [](const PhasorSnapshot& a, const PhasorSnapshot& b) {
                return a.index < b.index;
              });
    for (std::size_t p = 0; p < snapshots.size(); ++p) {
      if (snapshots[p].index != static_cast<int>(p) + 1) {
        throw ShapeError("snapshot indices must form 1..tau, found index " +
                         std::to_string(snapshots[p].index) + " at position " +
                         std::to_string(p + 1));
      }
    }
  }

  const int n = static_cast<int>(snapshots.front().voltages.size());
  NodeCount node_count(n);
  for (const auto& s : snapshots) {
    if (s.voltages.size() != n || s.currents.size() != n) {
      throw ShapeError("snapshot " + std::to_string(s.index) + " has " +
                       std::to_string(s.voltages.size()) + " voltages and " +
                       std::to_string(s.currents.size()) +
                       " currents, expected " + std::to_string(n) + " each");
    }
    if (!all_finite(s.voltages) || !all_finite(s.currents)) {
      throw ValidationError("snapshot " + std::to_string(s.index) +
                            " contains non-finite entries");
    }
  }

  if (diagnostics != nullptr) {
    for (std::size_t p = 0; p + 1 < snapshots.size(); ++p) {
      const auto& a = snapshots[p];
      const auto& b = snapshots[p + 1];
      for (int node = 0; node < n; ++node) {
        if (a.voltages(node) == b.voltages(node)) {
          diagnostics->push_back(Diagnostic{
              Diagnostic::Kind::kDuplicateVoltage, node + 1, a.index});
        }
        if (a.currents(node) == b.currents(node)) {
          diagnostics->push_back(Diagnostic{
              Diagnostic::Kind::kDuplicateCurrent, node + 1, a.index});
        }
      }
    }
  }

  return MeasurementSet(std::move(snapshots), node_count.value());
}

const PhasorSnapshot& MeasurementSet::snapshot(int k) const {
  if (k < 1 || k > snapshot_count()) {
    throw DomainError("snapshot index " + std::to_string(k) +
                      " out of range [1, " + std::to_string(snapshot_count()) +
                      "]");
  }
  return snapshots_[static_cast<std::size_t>(k) - 1];
}

bool operator==(const MeasurementSet& a, const MeasurementSet& b) {
  if (a.n_ != b.n_ || a.snapshots_.size() != b.snapshots_.size()) return false;
  for (std::size_t p = 0; p < a.snapshots_.size(); ++p) {
    const auto& sa = a.snapshots_[p];
    const auto& sb = b.snapshots_[p];
    if (sa.index != sb.index) return false;
    if (sa.voltages != sb.voltages || sa.currents != sb.currents) return false;
  }
  return true;
}

std::vector<NodalVoltageProfile> nodal_profiles(const MeasurementSet& set) {
  const int n = set.node_count();
  const int tau = set.snapshot_count();
  std::vector<NodalVoltageProfile> profiles;
  profiles.reserve(static_cast<std::size_t>(n));
  for (int node = 1; node <= n; ++node) {
    NodalVoltageProfile profile;
    profile.node = node;
    profile.values.resize(tau);
    for (int k = 1; k <= tau; ++k) {
      profile.values(k - 1) = set.snapshot(k).voltages(node - 1);
    }
    profiles.push_back(std::move(profile));
  }
  return profiles;
}

namespace {

constexpr const char* kCsvHeader = "k,node,v_re,v_im,i_re,i_im";

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.pop_back();
  }
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  return s.substr(start);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string::npos) {
      fields.push_back(strip(line.substr(begin)));
      break;
    }
    fields.push_back(strip(line.substr(begin, comma - begin)));
    begin = comma + 1;
  }
  return fields;
}

int parse_int(const std::string& field, const char* what, int line) {
  int value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw ParseError(std::string("cannot parse ") + what + " from '" + field +
                         "'",
                     line);
  }
  return value;
}

double parse_double(const std::string& field, const char* what, int line) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw ParseError(std::string("cannot parse ") + what + " from '" + field +
                         "'",
                     line);
  }
  return value;
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

struct CsvCell {
  std::complex<double> voltage;
  std::complex<double> current;
};

}  // namespace

MeasurementSet read_measurements_csv(std::istream& in,
                                     std::vector<Diagnostic>* diagnostics) {
  std::string line;
  int line_number = 0;
  bool header_seen = false;
  std::map<std::pair<int, int>, CsvCell> cells;
  int max_k = 0;
  int max_node = 0;

  while (std::getline(in, line)) {
    ++line_number;
    if (line_number == 1 && line.size() >= 3 &&
        static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB &&
        static_cast<unsigned char>(line[2]) == 0xBF) {
      line.erase(0, 3);  // UTF-8 BOM
    }
    std::string trimmed = strip(line);
    if (trimmed.empty()) continue;

    if (!header_seen) {
      std::string normalized;
      for (char c : trimmed) {
        if (c != ' ' && c != '\t') normalized.push_back(c);
      }
      if (normalized != kCsvHeader) {
        throw ParseError("expected header '" + std::string(kCsvHeader) +
                             "', found '" + trimmed + "'",
                         line_number);
      }
      header_seen = true;
      continue;
    }

    const std::vector<std::string> fields = split_fields(trimmed);
    if (fields.size() != 6) {
      throw ParseError("expected 6 fields, found " +
                           std::to_string(fields.size()),
                       line_number);
    }
    const int k = parse_int(fields[0], "k", line_number);
    const int node = parse_int(fields[1], "node", line_number);
    if (k < 1) throw ParseError("k must be >= 1", line_number);
    if (node < 1) throw ParseError("node must be >= 1", line_number);
    CsvCell cell;
    cell.voltage = {parse_double(fields[2], "v_re", line_number),
                    parse_double(fields[3], "v_im", line_number)};
    cell.current = {parse_double(fields[4], "i_re", line_number),
                    parse_double(fields[5], "i_im", line_number)};
    const auto [it, inserted] = cells.emplace(std::make_pair(k, node), cell);
    if (!inserted) {
      throw ParseError("duplicate entry for k=" + std::to_string(k) +
                           ", node=" + std::to_string(node),
                       line_number);
    }
    max_k = std::max(max_k, k);
    max_node = std::max(max_node, node);
  }

  if (!header_seen) {
    throw CompletenessError("empty input: missing header and data rows");
  }
  if (cells.empty()) {
    throw CompletenessError("no measurement rows");
  }

  std::vector<PhasorSnapshot> snapshots;
  snapshots.reserve(static_cast<std::size_t>(max_k));
  for (int k = 1; k <= max_k; ++k) {
    PhasorSnapshot snapshot;
    snapshot.index = k;
    snapshot.voltages.resize(max_node);
    snapshot.currents.resize(max_node);
    for (int node = 1; node <= max_node; ++node) {
      const auto it = cells.find({k, node});
      if (it == cells.end()) {
        throw CompletenessError("missing row for k=" + std::to_string(k) +
                                ", node=" + std::to_string(node));
      }
      snapshot.voltages(node - 1) = it->second.voltage;
      snapshot.currents(node - 1) = it->second.current;
    }
    snapshots.push_back(std::move(snapshot));
  }
  return MeasurementSet::validate(std::move(snapshots), diagnostics);
}

MeasurementSet read_measurements_csv(const std::filesystem::path& path,
                                     std::vector<Diagnostic>* diagnostics) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open measurements file: " + path.string());
  }
  return read_measurements_csv(in, diagnostics);
}

void write_measurements_csv(const MeasurementSet& set, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& snapshot : set.snapshots()) {
    for (int node = 1; node <= set.node_count(); ++node) {
      const auto v = snapshot.voltages(node - 1);
      const auto i = snapshot.currents(node - 1);
      out << snapshot.index << ',' << node << ',' << format_double(v.real())
          << ',' << format_double(v.imag()) << ',' << format_double(i.real())
          << ',' << format_double(i.imag()) << '\n';
    }
  }
}

void write_measurements_csv(const MeasurementSet& set,
                            const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open output file: " + path.string());
  }
  write_measurements_csv(set, out);
}

}  // namespace gridid
