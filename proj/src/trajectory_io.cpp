#include "liesys/trajectory_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "liesys/errors.hpp"
#include "liesys/matgroups.hpp"

namespace liesys {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

std::vector<std::string> numbered(const std::string& first, char prefix, int n) {
  std::vector<std::string> h{first};
  for (int i = 1; i <= n; ++i) h.push_back(prefix + std::to_string(i));
  return h;
}

}  // namespace

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  char buf[32];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
  if (!out) throw Error("failed writing '" + path + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size())
      throw ParseError("expected " + std::to_string(table.header.size()) + " columns", lineno);
    std::vector<double> row;
    for (const auto& c : cells) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != c.size() || c.empty()) throw ParseError("not a number: '" + c + "'", lineno);
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw Error("'" + path + "' is empty");
  return table;
}

void write_states(const std::string& path, const StateTrajectory& traj,
                  const std::vector<int>& angles) {
  const int n = traj.x.empty() ? 0 : static_cast<int>(traj.x.front().size());
  CsvTable table{numbered("t", 'x', n), {}};
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    std::vector<double> row{traj.t[i]};
    Vec x = traj.x[i];
    for (int a : angles) x(a) = wrap_angle(x(a));
    row.insert(row.end(), x.data(), x.data() + x.size());
    table.rows.push_back(std::move(row));
  }
  write_csv(path, table);
}

StateTrajectory read_states(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.empty() || table.header.front() != "t")
    throw Error("'" + path + "' is not a state trajectory file");
  StateTrajectory traj;
  for (const auto& row : table.rows) {
    traj.t.push_back(row.front());
    traj.x.push_back(Eigen::Map<const Vec>(row.data() + 1, static_cast<Eigen::Index>(row.size() - 1)));
  }
  return traj;
}

void write_wei_norman(const std::string& path, const WeiNormanTrajectory& wn) {
  const int r = wn.v.empty() ? 0 : static_cast<int>(wn.v.front().size());
  CsvTable table{numbered("t", 'v', r), {}};
  for (std::size_t i = 0; i < wn.t.size(); ++i) {
    std::vector<double> row{wn.t[i]};
    row.insert(row.end(), wn.v[i].data(), wn.v[i].data() + wn.v[i].size());
    table.rows.push_back(std::move(row));
  }
  write_csv(path, table);
}

std::vector<std::pair<double, Vec>> read_wei_norman(const std::string& path) {
  std::vector<std::pair<double, Vec>> out;
  for (const auto& row : read_csv(path).rows)
    out.emplace_back(row.front(),
                     Eigen::Map<const Vec>(row.data() + 1, static_cast<Eigen::Index>(row.size() - 1)));
  return out;
}

void write_wavefunction(const std::string& path, const WaveFunctionGrid& phi) {
  CsvTable table{{"p", "re", "im"}, {}};
  for (std::size_t i = 0; i < phi.p.size(); ++i)
    table.rows.push_back({phi.p[i], phi.values[i].real(), phi.values[i].imag()});
  write_csv(path, table);
}

WaveFunctionGrid read_wavefunction(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header != std::vector<std::string>{"p", "re", "im"})
    throw Error("'" + path + "' is not a wavefunction file");
  WaveFunctionGrid phi;
  for (const auto& row : table.rows) {
    phi.p.push_back(row[0]);
    phi.values.emplace_back(row[1], row[2]);
  }
  return phi;
}

}  // namespace liesys
