#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ffrl {

// One rung of the difficulty ladder: randomization half-ranges for the goal
// position (m), the goal-quaternion vector components (dimensionless), and
// the body mass (kg).
struct CurriculumLevel {
  int index = 1;  // 1-based
  double pos_r = 0.0;
  double ori_r = 0.0;
  double mass_r = 0.0;
};

inline constexpr int kNumLevels = 22;

// The built-in 22-level ladder.
const std::array<CurriculumLevel, kNumLevels>& builtin_ladder();

// Row lookup, 1-based. Throws std::out_of_range outside [1, 22].
CurriculumLevel level_ranges(int index);

// Copy of `base` with mass_r replaced by `mass_r_override` at every level
// (used for training runs that randomize mass hard from the start).
std::vector<CurriculumLevel> ladder_with_mass_override(
    std::span<const CurriculumLevel> base, double mass_r_override);

// --- plain-text ladder serialization (CSV: level,pos_R,ori_R,mass_R) ---
std::string ladder_to_csv(std::span<const CurriculumLevel> ladder);
std::vector<CurriculumLevel> ladder_from_csv(std::istream& in);
std::vector<CurriculumLevel> load_ladder_csv(const std::string& path);

struct AdvancementRule {
  double reward_threshold = 1.5;
  int hold_steps = 550;
};

// Per-environment level tracking. Levels only ever increase; the consecutive
// hold counter resets whenever the reward drops to the threshold or below,
// or when the level changes.
class CurriculumState {
 public:
  CurriculumState(int n_envs, int max_level = kNumLevels);

  // Feed one reward observation for env `env_id`; returns true when the env
  // advanced a level on this call.
  bool update(int env_id, double reward, const AdvancementRule& rule);

  int level(int env_id) const { return levels_[env_id]; }
  int hold_count(int env_id) const { return hold_counts_[env_id]; }
  int max_level() const { return max_level_; }
  int n_envs() const { return static_cast<int>(levels_.size()); }
  double mean_level() const;
  int min_level() const;

 private:
  std::vector<int> levels_;
  std::vector<int> hold_counts_;
  int max_level_;
};

}  // namespace ffrl
