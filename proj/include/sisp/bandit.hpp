#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <deque>
#include <string_view>

namespace sisp {

enum class ArmId : int { Uniform = 0, PCPositive = 1, PCNegative = 2 };

inline constexpr std::size_t kArmCount = 3;
inline constexpr std::array<ArmId, kArmCount> kArms{ArmId::Uniform, ArmId::PCPositive, ArmId::PCNegative};

[[nodiscard]] constexpr std::size_t index_of(ArmId arm) noexcept { return static_cast<std::size_t>(arm); }
[[nodiscard]] std::string_view arm_name(ArmId arm) noexcept;

struct RewardConstants {
    double c_u = 1e8;
    double c_s = 5.0;
};

inline constexpr double kRewardDistanceFloor = 1e-6;

/// Zero for invalid samples; uniform samples earn dist / c_u, principal
/// component samples earn c_s / max(dist, 1e-6).
[[nodiscard]] double compute_reward(ArmId arm, bool valid, double dist_from_start, const RewardConstants& k);

struct WindowEntry {
    ArmId arm;
    double reward;
};

struct ArmStats {
    std::size_t pulls = 0;  // in-window
    double mean = 0.0;      // in-window, 0 when unpulled
};

/// Sliding-window UCB over the three sampler arms.
class BanditState {
public:
    explicit BanditState(std::size_t window = 256, double beta = std::sqrt(2.0), RewardConstants k = {});

    /// argmax over enabled arms of mean + beta * sqrt(ln(total + 1) / (n + 1));
    /// ties go to the earlier arm in Uniform, PCPositive, PCNegative order.
    [[nodiscard]] ArmId select_arm() const;
    [[nodiscard]] std::array<double, kArmCount> scores() const;
    [[nodiscard]] std::array<ArmStats, kArmCount> window_stats() const;

    void update(ArmId arm, double reward);

    void set_enabled(ArmId arm, bool enabled) { enabled_[index_of(arm)] = enabled; }
    [[nodiscard]] bool enabled(ArmId arm) const { return enabled_[index_of(arm)]; }

    [[nodiscard]] const std::deque<WindowEntry>& window() const noexcept { return window_; }
    [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] const RewardConstants& constants() const noexcept { return constants_; }
    [[nodiscard]] double cumulative(ArmId arm) const { return cumulative_[index_of(arm)]; }
    [[nodiscard]] std::size_t lifetime_pulls(ArmId arm) const { return lifetime_pulls_[index_of(arm)]; }

private:
    std::size_t capacity_;
    double beta_;
    RewardConstants constants_;
    std::deque<WindowEntry> window_;
    std::array<double, kArmCount> cumulative_{};
    std::array<std::size_t, kArmCount> lifetime_pulls_{};
    std::array<bool, kArmCount> enabled_{true, true, true};
};

}  // namespace sisp
