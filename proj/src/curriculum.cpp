#include "ffrl/curriculum.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ffrl {

const std::array<CurriculumLevel, kNumLevels>& builtin_ladder() {
  // {index, pos_r, ori_r, mass_r}
  static const std::array<CurriculumLevel, kNumLevels> ladder = {{
      {1, 0.0, 0.0, 0.0},    {2, 0.0, 0.05, 0.0},   {3, 0.0, 0.1, 0.0},
      {4, 0.1, 0.1, 0.0},    {5, 0.1, 0.1, 0.5},    {6, 0.2, 0.15, 0.5},
      {7, 0.25, 0.2, 0.5},   {8, 0.3, 0.3, 0.5},    {9, 0.4, 0.4, 0.5},
      {10, 0.5, 0.5, 0.5},   {11, 0.6, 0.5, 0.5},   {12, 0.7, 0.5, 0.5},
      {13, 0.8, 0.5, 0.5},   {14, 0.9, 0.5, 0.5},   {15, 1.0, 0.5, 0.5},
      {16, 1.1, 0.5, 0.5},   {17, 1.2, 0.5, 0.5},   {18, 1.3, 0.5, 0.5},
      {19, 1.4, 0.5, 0.5},   {20, 1.5, 0.5, 0.5},   {21, 1.5, 0.5, 1.0},
      {22, 1.5, 0.5, 1.5},
  }};
  return ladder;
}

CurriculumLevel level_ranges(int index) {
  if (index < 1 || index > kNumLevels) {
    throw std::out_of_range("level_ranges: index must be in [1, 22]");
  }
  return builtin_ladder()[static_cast<std::size_t>(index - 1)];
}

std::vector<CurriculumLevel> ladder_with_mass_override(
    std::span<const CurriculumLevel> base, double mass_r_override) {
  if (mass_r_override < 0.0) {
    throw std::invalid_argument("mass_r_override must be >= 0");
  }
  std::vector<CurriculumLevel> out(base.begin(), base.end());
  for (auto& level : out) level.mass_r = mass_r_override;
  return out;
}

namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::string ladder_to_csv(std::span<const CurriculumLevel> ladder) {
  std::string out = "level,pos_R,ori_R,mass_R\n";
  for (const auto& level : ladder) {
    out += std::to_string(level.index) + "," + format_value(level.pos_r) +
           "," + format_value(level.ori_r) + "," + format_value(level.mass_r) +
           "\n";
  }
  return out;
}

std::vector<CurriculumLevel> ladder_from_csv(std::istream& in) {
  std::vector<CurriculumLevel> out;
  std::string line;
  bool first = true;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (first && line.rfind("level", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    std::stringstream ss(line);
    std::string cell;
    CurriculumLevel level;
    double* fields[3] = {&level.pos_r, &level.ori_r, &level.mass_r};
    if (!std::getline(ss, cell, ',')) {
      throw std::runtime_error("ladder csv: bad row at line " +
                               std::to_string(line_no));
    }
    level.index = std::stoi(cell);
    for (double* field : fields) {
      if (!std::getline(ss, cell, ',')) {
        throw std::runtime_error("ladder csv: expected 4 columns at line " +
                                 std::to_string(line_no));
      }
      *field = std::stod(cell);
    }
    out.push_back(level);
  }
  if (out.empty()) {
    throw std::runtime_error("ladder csv: no levels found");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].index != static_cast<int>(i) + 1) {
      throw std::runtime_error("ladder csv: levels must be numbered 1..N");
    }
    if (out[i].pos_r < 0 || out[i].ori_r < 0 || out[i].mass_r < 0) {
      throw std::runtime_error("ladder csv: ranges must be >= 0");
    }
  }
  return out;
}

std::vector<CurriculumLevel> load_ladder_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("ladder csv: cannot open " + path);
  }
  return ladder_from_csv(in);
}

CurriculumState::CurriculumState(int n_envs, int max_level)
    : levels_(static_cast<std::size_t>(n_envs), 1),
      hold_counts_(static_cast<std::size_t>(n_envs), 0),
      max_level_(max_level) {
  if (n_envs <= 0) throw std::invalid_argument("CurriculumState: n_envs <= 0");
  if (max_level < 1) {
    throw std::invalid_argument("CurriculumState: max_level < 1");
  }
}

bool CurriculumState::update(int env_id, double reward,
                             const AdvancementRule& rule) {
  if (rule.hold_steps <= 0) {
    throw std::invalid_argument("AdvancementRule: hold_steps must be > 0");
  }
  int& count = hold_counts_[static_cast<std::size_t>(env_id)];
  int& level = levels_[static_cast<std::size_t>(env_id)];
  if (reward > rule.reward_threshold) {
    ++count;
    if (count >= rule.hold_steps) {
      count = 0;
      if (level < max_level_) {
        ++level;
        return true;
      }
    }
  } else {
    count = 0;
  }
  return false;
}

double CurriculumState::mean_level() const {
  const double sum = std::accumulate(levels_.begin(), levels_.end(), 0.0);
  return sum / static_cast<double>(levels_.size());
}

int CurriculumState::min_level() const {
  return *std::min_element(levels_.begin(), levels_.end());
}

}  // namespace ffrl
