#include "dhw/reward.hpp"

#include <stdexcept>

namespace dhw::reward {

double comfort_loss_l(const std::vector<sim::OutflowChunk>& outflow, double threshold_c) {
    double lost = 0.0;
    for (const auto& c : outflow)
        if (c.temp_c < threshold_c) lost += c.volume_l;
    return lost;
}

StepReward step_reward(double lost_comfort_l, double efficiency_wh, double exploration_bits,
                       const RewardWeights& weights) {
    if (!weights.valid()) throw std::invalid_argument("step_reward: negative weight");
    StepReward r;
    r.lost_comfort_l = lost_comfort_l;
    r.efficiency_wh = efficiency_wh;
    r.exploration_bits = exploration_bits;
    r.value = -weights.comfort_per_l * lost_comfort_l +
              weights.efficiency_per_kwh * (efficiency_wh / 1000.0) +
              weights.exploration_per_bit * exploration_bits;
    return r;
}

double episode_return(const std::vector<double>& step_values, int horizon) {
    if (horizon < 1) throw std::invalid_argument("episode_return: horizon must be >= 1");
    if (static_cast<int>(step_values.size()) != horizon)
        throw std::invalid_argument("episode_return: expected exactly " + std::to_string(horizon) +
                                    " rewards, got " + std::to_string(step_values.size()));
    double s = 0.0;
    for (double v : step_values) s += v;
    return s / horizon;
}

}  // namespace dhw::reward
