#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "dhw/mlp.hpp"
#include "dhw/occupant.hpp"

namespace dhw::dynamics {

// Observable state proxy for the unobservable vessel energy content.
struct StateFeatures {
    double midpoint_c = 0.0;
    double minutes_since_reheat = 0.0;
    double draw_since_reheat_l = 0.0;
    double ambient_c = 0.0;
    int period_of_day = 0;
};

struct Action {
    bool reheat = false;
    double target_c = 0.0;
};

// One transition. draw_since_reheat_l includes the draw of the transition
// period itself, so the feature vector fully determines the thermocline
// position the next observation reflects; rollouts advance it the same way
// from the forecast before each prediction.
struct Experience {
    StateFeatures features;
    Action action;
    double next_midpoint_c = 0.0;
    double electric_wh = 0.0;
    std::int64_t timestamp_min = 0;
};

// Outputs: 0 = next mid-point temperature (C), 1 = electric energy (Wh).
struct EnsemblePrediction {
    std::array<double, 2> mean{0.0, 0.0};
    std::array<double, 2> variance{0.0, 0.0};
};

class TransitionModel {
public:
    virtual ~TransitionModel() = default;
    virtual EnsemblePrediction predict_next(const StateFeatures& features,
                                            const Action& action) const = 0;
    virtual bool is_trained() const = 0;
};

struct EnsembleConfig {
    int n_members = 10;
    int hidden = 32;
    int max_training_samples = 1500;  // most recent transitions
    int periods_per_day = 96;
    double sensor_noise_std_c = 0.25;
    double electric_noise_floor_wh = 25.0;
    Mlp::TrainOptions train;
    std::uint64_t master_seed = 1;
};

// Bootstrap ensemble of identical-topology networks over z-normalized
// features; the temperature head predicts the mid-point delta. Immutable
// once trained.
class EnsembleModel : public TransitionModel {
public:
    static constexpr int kInputDim = 6;   // M, tau, D, ambient, sin/cos period
    static constexpr int kOutputDim = 2;  // delta midpoint, electric

    EnsemblePrediction predict_next(const StateFeatures& features,
                                    const Action& action) const override;
    bool is_trained() const override { return trained_; }

    int n_members() const { return static_cast<int>(members_.size()); }
    const EnsembleConfig& config() const { return config_; }
    bool degenerate_targets() const { return degenerate_targets_; }
    // Learned residual variance per output; floors the predictive density.
    const std::array<double, 2>& noise_variance() const { return noise_var_; }

    std::vector<double> member_parameters(int i) const { return members_[i].parameters(); }

    void save(std::ostream& out) const;
    static EnsembleModel load(std::istream& in);

    friend EnsembleModel train_ensemble(const std::vector<Experience>& experiences,
                                        const EnsembleConfig& config);

private:
    void encode(const StateFeatures& f, double* x) const;

    EnsembleConfig config_;
    std::vector<Mlp> members_;
    std::array<double, kInputDim> in_mean_{}, in_std_{};
    std::array<double, 2> out_mean_{}, out_std_{};
    std::array<double, 2> noise_var_{};
    bool trained_ = false;
    bool degenerate_targets_ = false;
};

// Trains each member to its own bootstrap resample of the discharge
// transitions (reheat actions are excluded; a separate terminal model covers
// them). Requires at least 50 usable experiences. Deterministic in
// config.master_seed.
EnsembleModel train_ensemble(const std::vector<Experience>& experiences,
                             const EnsembleConfig& config);

// Piecewise-linear electric-energy model in (ambient temp, mid-point as the
// condenser inlet proxy): least squares on a hinge basis at configured knots.
struct HeatPumpFitConfig {
    std::vector<double> ambient_knots = {0.0, 7.0, 15.0};
    std::vector<double> water_knots = {25.0, 35.0, 45.0, 55.0};
    int min_samples = 20;
};

class HeatPumpFit {
public:
    double predict_wh(double ambient_c, double water_c) const;
    bool fitted() const { return fitted_; }
    bool rank_deficient() const { return rank_deficient_; }
    double mae_wh() const { return mae_wh_; }
    double mape() const { return mape_; }

    void save(std::ostream& out) const;
    static HeatPumpFit load(std::istream& in);

    friend HeatPumpFit fit_heat_pump(const std::vector<Experience>& experiences,
                                     const HeatPumpFitConfig& config);

private:
    HeatPumpFitConfig config_;
    std::vector<double> coef_;
    double mae_wh_ = 0.0;
    double mape_ = 0.0;
    bool fitted_ = false;
    bool rank_deficient_ = false;
};

// Fits on reheat-period experiences (action.reheat, electric > 0). Flags rank
// deficiency when the data does not span the basis (fit degrades gracefully
// to the spanned subspace). Throws if fewer than config.min_samples rows.
HeatPumpFit fit_heat_pump(const std::vector<Experience>& experiences,
                          const HeatPumpFitConfig& config = {});

// Charging takes several control periods at rated power; the planner needs a
// data-driven estimate of how many. Linear least squares over completed
// cycles with a conservative fallback before enough cycles exist.
struct ReheatCycle {
    double start_midpoint_c = 0.0;
    double draw_since_reheat_l = 0.0;
    double target_c = 0.0;
    double ambient_c = 0.0;
    int duration_periods = 1;
    double electric_wh = 0.0;
};

class ReheatOutcomeModel {
public:
    ReheatOutcomeModel() = default;
    ReheatOutcomeModel(HeatPumpFit fit, const std::vector<ReheatCycle>& cycles,
                       double fallback_periods_per_kelvin = 0.12,
                       double fallback_periods_per_100l = 1.2);

    int duration_periods(double start_midpoint_c, double draw_since_reheat_l,
                         double target_c) const;
    // Electric energy for one full charging period.
    double step_electric_wh(double ambient_c, double midpoint_c) const;

    const HeatPumpFit& heat_pump() const { return hp_fit_; }
    bool duration_fitted() const { return duration_fitted_; }

    void save(std::ostream& out) const;
    static ReheatOutcomeModel load(std::istream& in);

private:
    HeatPumpFit hp_fit_;
    std::array<double, 3> dur_coef_{1.0, 0.0, 0.0};  // 1, (target - midpoint), draw
    bool duration_fitted_ = false;
    double fallback_per_k_ = 0.12;
    double fallback_per_100l_ = 1.2;
};

// Surprisal (bits) of the observed outcome under the ensemble's Gaussian
// predictive density, variance floored at the learned/sensor noise level.
double information_gain(const EnsembleModel& model, const Experience& experience);

struct RolloutStep {
    StateFeatures features;  // state the prediction was made from
    EnsemblePrediction pred;
    bool charging = false;
    bool clamped = false;
};

struct RolloutResult {
    std::vector<RolloutStep> steps;
    double total_electric_wh = 0.0;
    bool clamped = false;
};

struct RolloutConfig {
    double k_risk = 1.0;  // draws assumed at mean + k*std
    int period_min = 15;
    // nullptr: reheat actions complete within one period with zero energy
    const ReheatOutcomeModel* reheat_model = nullptr;
};

// Chains model predictions over the horizon: the mean feeds back as the next
// input, forecast draws advance the cumulative-draw feature, per-step
// variance is recorded (no full distribution propagation). Reheat actions
// ramp to the target over the estimated charging duration; the policy is
// held during those periods, mirroring the live controller.
RolloutResult rollout(const TransitionModel& model, StateFeatures initial,
                      const std::vector<Action>& actions,
                      const occupant::DrawForecast& draw_forecast,
                      const std::vector<double>& ambient_forecast, const RolloutConfig& cfg);

// Fixed probe set for uncertainty snapshots, built from feature ranges at
// first training and frozen for the rest of the run.
struct ProbeGrid {
    std::vector<StateFeatures> points;
};

ProbeGrid make_probe_grid(double mid_lo, double mid_hi, double draw_lo, double draw_hi,
                          double tau_lo_min, double tau_hi_min, double amb_lo, double amb_hi,
                          int period_of_day = 48);
ProbeGrid probe_grid_from_experiences(const std::vector<Experience>& experiences);

// Temperature-head predictive variance at each probe.
std::vector<double> probe_variances(const EnsembleModel& model, const ProbeGrid& grid);
// Electric-head variance, for the reward-model trigger.
std::vector<double> probe_variances_electric(const EnsembleModel& model, const ProbeGrid& grid);

}  // namespace dhw::dynamics
