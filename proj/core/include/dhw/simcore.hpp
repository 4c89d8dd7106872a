#pragma once

#include <cstdint>
#include <vector>

#include "dhw/rng.hpp"

namespace dhw::sim {

// Water properties at tank conditions, density 1 kg/L.
constexpr double kWhPerLiterKelvin = 4186.0 / 3600.0;  // 1.16278 Wh/(L.K)
constexpr double kJoulesPerLiterKelvin = 4186.0;

constexpr double kColdInletC = 10.0;
constexpr double kTankMaxC = 70.0;

struct TankParams {
    double volume_l = 200.0;
    int n_layers = 10;
    // Total standing-loss conductance of the vessel, split equally over
    // layers. 2.08 W/K makes a full 50 C tank at 20 C indoor lose ~1.5 kWh/day.
    double loss_w_per_k = 2.08;
    double inlet_temp_c = kColdInletC;
    // The vessel sits indoors; standing losses relax toward this, not the
    // outdoor trace.
    double indoor_temp_c = 20.0;
    double sensor_noise_std_c = 0.25;

    double layer_volume_l() const { return volume_l / n_layers; }
    int sensor_layer() const { return n_layers / 2; }
    double layer_heat_capacity_wh_per_k() const { return layer_volume_l() * kWhPerLiterKelvin; }
};

// Hidden true state of the stratified vessel. Index 0 is the bottom layer.
struct VesselState {
    std::vector<double> layer_temps;
    double volume_l = 200.0;
    std::int64_t timestamp_min = 0;

    int n_layers() const { return static_cast<int>(layer_temps.size()); }
    double layer_volume_l() const { return volume_l / layer_temps.size(); }
    double midpoint_temp() const { return layer_temps[layer_temps.size() / 2]; }
    double top_temp() const { return layer_temps.back(); }
    double bottom_temp() const { return layer_temps.front(); }
    // Heat content relative to 0 C, in Wh.
    double energy_wh() const;
    bool valid() const;
};

VesselState make_uniform_state(const TankParams& params, double temp_c,
                               std::int64_t timestamp_min = 0);

// Piecewise-(bi)linear COP surface over (ambient temp, condenser water temp).
struct CopTable {
    std::vector<double> ambient_breaks_c;  // strictly increasing
    std::vector<double> water_breaks_c;    // strictly increasing
    std::vector<std::vector<double>> cop;  // cop[i][j] at (ambient i, water j)

    // Bilinear interpolation; clamps to the table boundary and reports it.
    double lookup(double ambient_c, double water_c, bool* clamped = nullptr) const;
    bool valid() const;
};

enum class HeatPumpMode { idle, reheat };

struct HeatPumpSpec {
    double rated_thermal_w = 6000.0;
    CopTable cop_table;
    HeatPumpMode mode = HeatPumpMode::idle;
};

CopTable default_cop_table();

struct HeatPumpOutput {
    double thermal_wh = 0.0;
    double electric_wh = 0.0;
    bool clamped = false;  // temps fell outside the COP table domain
};

// Full-power operation for dt minutes. thermal = rated * dt/60,
// electric = thermal / COP(ambient, inlet).
HeatPumpOutput heat_pump_step(const HeatPumpSpec& spec, double inlet_temp_c, double ambient_temp_c,
                              double dt_min);

// What the controller sees once per period.
struct Observation {
    double midpoint_temp_c = 0.0;
    double flow_l = 0.0;
    double heater_energy_wh = 0.0;
    double ambient_temp_c = 0.0;
    std::int64_t timestamp_min = 0;
};

Observation observe(const VesselState& state, double flow_l, double heater_electric_wh,
                    double ambient_temp_c, double sensor_noise_std_c, std::uint64_t rng_seed);

// A contiguous parcel of water leaving the top outlet during one step,
// in the order it exits (hottest/topmost water first).
struct OutflowChunk {
    double volume_l = 0.0;
    double temp_c = 0.0;
};

// Per-step energy bookkeeping, all in Wh relative to 0 C.
struct EnergyAudit {
    double energy_before_wh = 0.0;
    double energy_after_wh = 0.0;
    double draw_export_wh = 0.0;
    double inlet_import_wh = 0.0;
    double heat_absorbed_wh = 0.0;  // heat input minus any over-temperature vent
    double ambient_loss_wh = 0.0;
    double vented_wh = 0.0;

    double residual_wh() const {
        return energy_after_wh - energy_before_wh -
               (heat_absorbed_wh + inlet_import_wh - draw_export_wh - ambient_loss_wh);
    }
};

struct StepResult {
    VesselState state;
    std::vector<OutflowChunk> outflow;
    EnergyAudit audit;
};

// One simulation step: plug-flow draw, ambient relaxation, buoyancy
// resolution, then heat injection into the bottom third (buoyancy-resolved
// again). Throws std::invalid_argument on unphysical inputs.
StepResult step_vessel(const TankParams& params, const VesselState& state, double draw_l,
                       double inlet_temp_c, double heat_input_wh, double ambient_temp_c,
                       double dt_min);

// Liters of stored water at or above the threshold temperature.
double hot_water_volume(const VesselState& state, double threshold_c);

// Time series of ambient (outdoor) temperature at a fixed period.
struct AmbientTrace {
    std::int64_t start_min = 0;
    int period_min = 15;
    std::vector<double> temps_c;

    std::int64_t end_min() const {
        return start_min + static_cast<std::int64_t>(temps_c.size()) * period_min;
    }
    bool covers(std::int64_t t_min) const { return t_min >= start_min && t_min < end_min(); }
    // Value of the sample whose period contains t_min.
    double at(std::int64_t t_min) const;
};

// The simulated house: vessel + heat pump + thermostat plumbing. The
// controller only ever sees Observations; this object is the ground truth
// it plays against.
class House {
public:
    House(TankParams tank, HeatPumpSpec pump, double initial_temp_c,
          std::int64_t start_min = 0);

    struct PeriodResult {
        std::vector<OutflowChunk> outflow;
        double electric_wh = 0.0;
        double thermal_wh = 0.0;
        bool target_reached = false;  // thermostat cut heating this period
        bool pump_clamped = false;
        EnergyAudit audit;  // summed over substeps
    };

    // Advances one control period of dt_min minutes. When heat_on is set the
    // pump runs at rated power in one-minute substeps until the true
    // mid-point temperature reaches target_c (hardware thermostat).
    PeriodResult step_period(double draw_l, double outdoor_c, bool heat_on, double target_c,
                             int dt_min);

    const VesselState& state() const { return state_; }
    const TankParams& tank() const { return tank_; }
    const HeatPumpSpec& pump() const { return pump_; }
    double midpoint_true() const { return state_.midpoint_temp(); }
    // Condenser-side water temperature: mean of the heated bottom layers.
    double condenser_inlet_c() const;

private:
    TankParams tank_;
    HeatPumpSpec pump_;
    VesselState state_;
};

}  // namespace dhw::sim
