#pragma once

#include <vector>

#include "dhw/simcore.hpp"

namespace dhw::reward {

constexpr double kComfortThresholdC = 45.0;

// A: per liter of lost comfort (large finite stand-in for "infinite").
// B: per kWh of electric energy. C: per bit of information gain.
struct RewardWeights {
    double comfort_per_l = 1e6;
    double efficiency_per_kwh = 1.0;
    double exploration_per_bit = 0.1;

    bool valid() const {
        return comfort_per_l >= 0.0 && efficiency_per_kwh >= 0.0 && exploration_per_bit >= 0.0;
    }
};

struct StepReward {
    double lost_comfort_l = 0.0;     // c_t, liters drawn below the comfort threshold
    double efficiency_wh = 0.0;      // o_t, negative electric Wh consumed
    double exploration_bits = 0.0;   // e_t
    double value = 0.0;              // -A*c + B*(o/1000) + C*e
};

// Liters that left the tap below threshold during one or more draws.
double comfort_loss_l(const std::vector<sim::OutflowChunk>& outflow,
                      double threshold_c = kComfortThresholdC);

StepReward step_reward(double lost_comfort_l, double efficiency_wh, double exploration_bits,
                       const RewardWeights& weights);

// Finite-horizon return: plain average of the step rewards, no discounting.
double episode_return(const std::vector<double>& step_values, int horizon);

}  // namespace dhw::reward
