#pragma once

#include <complex>
#include <string>
#include <vector>

#include "liesys/models.hpp"
#include "liesys/trajectory.hpp"

namespace liesys {

/// Plain numeric CSV table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Values are written with %.17g so that reading back is exact.
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

/// Header `t,x1..xn`. Components listed in `angles` are wrapped to (-pi, pi].
void write_states(const std::string& path, const StateTrajectory& traj,
                  const std::vector<int>& angles = {});
StateTrajectory read_states(const std::string& path);

/// Header `t,v1..vr`.
void write_wei_norman(const std::string& path, const WeiNormanTrajectory& wn);
/// Reads samples only; the order and algebra key are not stored in the file.
std::vector<std::pair<double, Vec>> read_wei_norman(const std::string& path);

/// Header `p,re,im`.
void write_wavefunction(const std::string& path, const WaveFunctionGrid& phi);
WaveFunctionGrid read_wavefunction(const std::string& path);

}  // namespace liesys
