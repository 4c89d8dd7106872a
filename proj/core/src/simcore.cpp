#include "dhw/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dhw::sim {

namespace {

bool finite_all(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Pool-adjacent-violators over equal-volume layers: any lower-hotter-than-
// upper inversion collapses to the group mean, repeated to fixpoint. Keeps
// group sums intact so total energy is preserved to rounding.
void resolve_buoyancy(std::vector<double>& temps) {
    const int n = static_cast<int>(temps.size());
    std::vector<double> sum(n);
    std::vector<int> count(n);
    int top = 0;
    for (int i = 0; i < n; ++i) {
        sum[top] = temps[i];
        count[top] = 1;
        ++top;
        while (top > 1 &&
               sum[top - 2] * count[top - 1] > sum[top - 1] * count[top - 2]) {
            sum[top - 2] += sum[top - 1];
            count[top - 2] += count[top - 1];
            --top;
        }
    }
    int k = 0;
    for (int g = 0; g < top; ++g) {
        const double mean = sum[g] / count[g];
        for (int c = 0; c < count[g]; ++c) temps[k++] = mean;
    }
}

double profile_energy_wh(const std::vector<double>& temps, double layer_vol_l) {
    double s = 0.0;
    for (double t : temps) s += t;
    return s * layer_vol_l * kWhPerLiterKelvin;
}

}  // namespace

double VesselState::energy_wh() const {
    return profile_energy_wh(layer_temps, layer_volume_l());
}

bool VesselState::valid() const {
    if (layer_temps.size() < 2 || volume_l <= 0.0) return false;
    if (!finite_all(layer_temps)) return false;
    for (double t : layer_temps)
        if (t < kColdInletC - 1e-9 || t > kTankMaxC + 1e-9) return false;
    return true;
}

VesselState make_uniform_state(const TankParams& params, double temp_c,
                               std::int64_t timestamp_min) {
    VesselState s;
    s.layer_temps.assign(params.n_layers, temp_c);
    s.volume_l = params.volume_l;
    s.timestamp_min = timestamp_min;
    return s;
}

double CopTable::lookup(double ambient_c, double water_c, bool* clamped) const {
    auto clamp_axis = [](double v, const std::vector<double>& breaks, bool* flag) {
        if (v < breaks.front()) {
            if (flag) *flag = true;
            return breaks.front();
        }
        if (v > breaks.back()) {
            if (flag) *flag = true;
            return breaks.back();
        }
        return v;
    };
    bool was_clamped = false;
    const double a = clamp_axis(ambient_c, ambient_breaks_c, &was_clamped);
    const double w = clamp_axis(water_c, water_breaks_c, &was_clamped);
    if (clamped) *clamped = was_clamped;

    auto segment = [](const std::vector<double>& breaks, double v) {
        size_t i = 1;
        while (i + 1 < breaks.size() && v > breaks[i]) ++i;
        return i - 1;
    };
    const size_t i = segment(ambient_breaks_c, a);
    const size_t j = segment(water_breaks_c, w);
    const double da = ambient_breaks_c[i + 1] - ambient_breaks_c[i];
    const double dw = water_breaks_c[j + 1] - water_breaks_c[j];
    const double fa = da > 0 ? (a - ambient_breaks_c[i]) / da : 0.0;
    const double fw = dw > 0 ? (w - water_breaks_c[j]) / dw : 0.0;
    const double c00 = cop[i][j], c10 = cop[i + 1][j];
    const double c01 = cop[i][j + 1], c11 = cop[i + 1][j + 1];
    return (1 - fa) * (1 - fw) * c00 + fa * (1 - fw) * c10 + (1 - fa) * fw * c01 + fa * fw * c11;
}

bool CopTable::valid() const {
    if (ambient_breaks_c.size() < 2 || water_breaks_c.size() < 2) return false;
    for (size_t i = 1; i < ambient_breaks_c.size(); ++i)
        if (ambient_breaks_c[i] <= ambient_breaks_c[i - 1]) return false;
    for (size_t j = 1; j < water_breaks_c.size(); ++j)
        if (water_breaks_c[j] <= water_breaks_c[j - 1]) return false;
    if (cop.size() != ambient_breaks_c.size()) return false;
    for (const auto& row : cop) {
        if (row.size() != water_breaks_c.size()) return false;
        for (double v : row)
            if (!(v >= 1.0) || !std::isfinite(v)) return false;
    }
    return true;
}

CopTable default_cop_table() {
    // Air-source unit, mildly optimistic in warm weather, derated for hot
    // condenser water. Values generated from an affine surface, clamped to
    // physically sane bounds.
    CopTable t;
    t.ambient_breaks_c = {-10.0, 0.0, 7.0, 15.0, 25.0, 35.0};
    t.water_breaks_c = {10.0, 25.0, 35.0, 45.0, 55.0, 70.0};
    for (double a : t.ambient_breaks_c) {
        std::vector<double> row;
        for (double w : t.water_breaks_c) {
            double cop = 3.2 + 0.075 * (a - 7.0) - 0.045 * (w - 45.0);
            row.push_back(std::clamp(cop, 1.2, 6.5));
        }
        t.cop.push_back(std::move(row));
    }
    return t;
}

HeatPumpOutput heat_pump_step(const HeatPumpSpec& spec, double inlet_temp_c, double ambient_temp_c,
                              double dt_min) {
    if (dt_min <= 0.0) throw std::invalid_argument("heat_pump_step: dt must be positive");
    if (!std::isfinite(inlet_temp_c) || !std::isfinite(ambient_temp_c))
        throw std::invalid_argument("heat_pump_step: non-finite temperature");
    HeatPumpOutput out;
    out.thermal_wh = spec.rated_thermal_w * dt_min / 60.0;
    const double cop = spec.cop_table.lookup(ambient_temp_c, inlet_temp_c, &out.clamped);
    out.electric_wh = out.thermal_wh / cop;
    return out;
}

Observation observe(const VesselState& state, double flow_l, double heater_electric_wh,
                    double ambient_temp_c, double sensor_noise_std_c, std::uint64_t rng_seed) {
    if (!state.valid()) throw std::invalid_argument("observe: invalid vessel state");
    Observation o;
    double noise = 0.0;
    if (sensor_noise_std_c > 0.0) {
        Rng rng(rng_seed);
        noise = rng.normal(0.0, sensor_noise_std_c);
    }
    o.midpoint_temp_c = std::clamp(state.midpoint_temp() + noise, 0.0, 100.0);
    o.flow_l = flow_l;
    o.heater_energy_wh = heater_electric_wh;
    o.ambient_temp_c = ambient_temp_c;
    o.timestamp_min = state.timestamp_min;
    return o;
}

StepResult step_vessel(const TankParams& params, const VesselState& state, double draw_l,
                       double inlet_temp_c, double heat_input_wh, double ambient_temp_c,
                       double dt_min) {
    if (!(dt_min > 0.0)) throw std::invalid_argument("step_vessel: dt must be positive");
    if (draw_l < 0.0) throw std::invalid_argument("step_vessel: negative draw");
    if (draw_l > state.volume_l + 1e-9)
        throw std::invalid_argument("step_vessel: draw of " + std::to_string(draw_l) +
                                    " L exceeds tank volume in one step");
    if (heat_input_wh < 0.0) throw std::invalid_argument("step_vessel: negative heat input");
    if (!finite_all(state.layer_temps) || !std::isfinite(inlet_temp_c) ||
        !std::isfinite(ambient_temp_c) || !std::isfinite(draw_l))
        throw std::invalid_argument("step_vessel: non-finite input");
    if (state.layer_temps.size() < 2) throw std::invalid_argument("step_vessel: need >= 2 layers");

    const int n = state.n_layers();
    const double layer_vol = state.layer_volume_l();

    StepResult res;
    res.state = state;
    res.audit.energy_before_wh = state.energy_wh();
    auto& temps = res.state.layer_temps;

    // (a) Plug-flow draw: draw_l liters exit at the top, inlet water enters at
    // the bottom, the profile shifts up by draw_l liters. New layer contents
    // are the volume-weighted overlap of the shifted old profile.
    if (draw_l > 0.0) {
        const std::vector<double> old = temps;
        const double volume = state.volume_l;
        // Water that exits: old positions [volume - draw_l, volume), topmost
        // parcels leave first.
        double export_wh = 0.0;
        {
            double hi = volume;
            const double lo_limit = volume - draw_l;
            int j = n - 1;
            while (hi > lo_limit + 1e-12 && j >= 0) {
                const double lo = std::max(lo_limit, j * layer_vol);
                const double vol = hi - lo;
                if (vol > 1e-12) {
                    res.outflow.push_back({vol, old[j]});
                    export_wh += vol * old[j] * kWhPerLiterKelvin;
                }
                hi = lo;
                --j;
            }
        }
        res.audit.draw_export_wh = export_wh;
        res.audit.inlet_import_wh = draw_l * inlet_temp_c * kWhPerLiterKelvin;

        for (int i = 0; i < n; ++i) {
            const double lo = i * layer_vol - draw_l;
            const double hi = (i + 1) * layer_vol - draw_l;
            double acc = 0.0;
            double pos = lo;
            // inlet-filled portion
            if (pos < 0.0) {
                const double seg = std::min(hi, 0.0) - pos;
                acc += seg * inlet_temp_c;
                pos = std::min(hi, 0.0);
            }
            while (pos < hi - 1e-12) {
                const int j = std::min(n - 1, static_cast<int>(pos / layer_vol));
                const double seg_end = std::min(hi, (j + 1) * layer_vol);
                acc += (seg_end - pos) * old[j];
                pos = seg_end;
            }
            temps[i] = acc / layer_vol;
        }
    }

    // (b) Standing loss: each layer relaxes toward ambient with the per-layer
    // conductance; exact exponential decay over the step.
    {
        const double u_layer = params.loss_w_per_k / n;
        const double cap_j = layer_vol * kJoulesPerLiterKelvin;
        const double alpha = std::exp(-u_layer * dt_min * 60.0 / cap_j);
        double loss_wh = 0.0;
        for (double& t : temps) {
            const double t_new = ambient_temp_c + (t - ambient_temp_c) * alpha;
            loss_wh += (t - t_new) * layer_vol * kWhPerLiterKelvin;
            t = t_new;
        }
        res.audit.ambient_loss_wh = loss_wh;
    }

    // (c) Buoyancy: merge inverted adjacent groups to their mean.
    resolve_buoyancy(temps);

    // (d) Heat injection into the bottom third, then buoyancy again.
    if (heat_input_wh > 0.0) {
        const int nb = std::max(1, n / 3);
        const double dt_per_layer = heat_input_wh / nb / (layer_vol * kWhPerLiterKelvin);
        double vented_wh = 0.0;
        for (int i = 0; i < nb; ++i) {
            temps[i] += dt_per_layer;
            if (temps[i] > kTankMaxC) {
                vented_wh += (temps[i] - kTankMaxC) * layer_vol * kWhPerLiterKelvin;
                temps[i] = kTankMaxC;
            }
        }
        res.audit.vented_wh = vented_wh;
        res.audit.heat_absorbed_wh = heat_input_wh - vented_wh;
        resolve_buoyancy(temps);
    }

    res.state.timestamp_min = state.timestamp_min + static_cast<std::int64_t>(std::llround(dt_min));
    res.audit.energy_after_wh = res.state.energy_wh();
    return res;
}

double hot_water_volume(const VesselState& state, double threshold_c) {
    const double layer_vol = state.layer_volume_l();
    double v = 0.0;
    for (double t : state.layer_temps)
        if (t >= threshold_c) v += layer_vol;
    return v;
}

double AmbientTrace::at(std::int64_t t_min) const {
    if (!covers(t_min))
        throw std::out_of_range("ambient trace does not cover timestamp " + std::to_string(t_min));
    const auto idx = (t_min - start_min) / period_min;
    return temps_c[static_cast<size_t>(idx)];
}

House::House(TankParams tank, HeatPumpSpec pump, double initial_temp_c, std::int64_t start_min)
    : tank_(std::move(tank)), pump_(std::move(pump)),
      state_(make_uniform_state(tank_, initial_temp_c, start_min)) {}

double House::condenser_inlet_c() const {
    const int nb = std::max(1, tank_.n_layers / 3);
    double s = 0.0;
    for (int i = 0; i < nb; ++i) s += state_.layer_temps[i];
    return s / nb;
}

House::PeriodResult House::step_period(double draw_l, double outdoor_c, bool heat_on,
                                       double target_c, int dt_min) {
    PeriodResult out;
    out.audit.energy_before_wh = state_.energy_wh();

    auto accumulate = [&](const StepResult& r) {
        out.audit.draw_export_wh += r.audit.draw_export_wh;
        out.audit.inlet_import_wh += r.audit.inlet_import_wh;
        out.audit.heat_absorbed_wh += r.audit.heat_absorbed_wh;
        out.audit.ambient_loss_wh += r.audit.ambient_loss_wh;
        out.audit.vented_wh += r.audit.vented_wh;
        for (const auto& c : r.outflow) {
            if (!out.outflow.empty() && std::abs(out.outflow.back().temp_c - c.temp_c) < 1e-12)
                out.outflow.back().volume_l += c.volume_l;
            else
                out.outflow.push_back(c);
        }
        state_ = r.state;
    };

    if (!heat_on) {
        accumulate(step_vessel(tank_, state_, draw_l, tank_.inlet_temp_c, 0.0,
                               tank_.indoor_temp_c, dt_min));
    } else {
        // One-minute substeps so the thermostat can cut the pump the moment
        // the sensor reaches the target, like the hardware does.
        const double draw_per_min = draw_l / dt_min;
        for (int k = 0; k < dt_min; ++k) {
            double heat_wh = 0.0;
            if (!out.target_reached && midpoint_true() < target_c) {
                const auto hp = heat_pump_step(pump_, condenser_inlet_c(), outdoor_c, 1.0);
                heat_wh = hp.thermal_wh;
                out.electric_wh += hp.electric_wh;
                out.thermal_wh += hp.thermal_wh;
                out.pump_clamped = out.pump_clamped || hp.clamped;
            }
            accumulate(step_vessel(tank_, state_, draw_per_min, tank_.inlet_temp_c, heat_wh,
                                   tank_.indoor_temp_c, 1.0));
            if (midpoint_true() >= target_c) out.target_reached = true;
        }
    }
    out.audit.energy_after_wh = state_.energy_wh();
    return out;
}

}  // namespace dhw::sim
