#include "sisp/bandit.hpp"

#include <algorithm>
#include <limits>

#include "sisp/types.hpp"

namespace sisp {

std::string_view arm_name(ArmId arm) noexcept {
    switch (arm) {
        case ArmId::Uniform: return "uniform";
        case ArmId::PCPositive: return "pc_positive";
        case ArmId::PCNegative: return "pc_negative";
    }
    return "unknown";
}

double compute_reward(ArmId arm, bool valid, double dist_from_start, const RewardConstants& k) {
    require(dist_from_start >= 0.0, "compute_reward: distance must be non-negative");
    if (!valid) return 0.0;
    if (arm == ArmId::Uniform) return dist_from_start / k.c_u;
    return k.c_s / std::max(dist_from_start, kRewardDistanceFloor);
}

BanditState::BanditState(std::size_t window, double beta, RewardConstants k)
    : capacity_(window), beta_(beta), constants_(k) {
    require(window >= 1, "bandit: window must hold at least one entry");
    require(beta >= 0.0, "bandit: beta must be non-negative");
}

std::array<ArmStats, kArmCount> BanditState::window_stats() const {
    std::array<double, kArmCount> sums{};
    std::array<ArmStats, kArmCount> stats{};
    for (const auto& e : window_) {
        sums[index_of(e.arm)] += e.reward;
        ++stats[index_of(e.arm)].pulls;
    }
    for (std::size_t b = 0; b < kArmCount; ++b) {
        if (stats[b].pulls > 0) stats[b].mean = sums[b] / static_cast<double>(stats[b].pulls);
    }
    return stats;
}

std::array<double, kArmCount> BanditState::scores() const {
    const auto stats = window_stats();
    const double log_total = std::log(static_cast<double>(window_.size()) + 1.0);
    std::array<double, kArmCount> out{};
    for (std::size_t b = 0; b < kArmCount; ++b) {
        out[b] = stats[b].mean + beta_ * std::sqrt(log_total / (static_cast<double>(stats[b].pulls) + 1.0));
    }
    return out;
}

ArmId BanditState::select_arm() const {
    const auto s = scores();
    std::size_t best = kArmCount;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < kArmCount; ++b) {
        if (!enabled_[b]) continue;
        if (best == kArmCount || s[b] > best_score) {
            best = b;
            best_score = s[b];
        }
    }
    require(best != kArmCount, "bandit: every arm is disabled");
    return kArms[best];
}

void BanditState::update(ArmId arm, double reward) {
    require(reward >= 0.0, "bandit: rewards must be non-negative");
    window_.push_back({arm, reward});
    if (window_.size() > capacity_) window_.pop_front();
    cumulative_[index_of(arm)] += reward;
    ++lifetime_pulls_[index_of(arm)];
}

}  // namespace sisp
