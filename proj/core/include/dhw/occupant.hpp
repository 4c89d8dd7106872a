#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dhw/timeutil.hpp"

namespace dhw::occupant {

struct DrawEvent {
    std::int64_t timestamp_min = 0;
    double volume_l = 0.0;
    double duration_min = 0.0;
};

// One diurnal usage peak: events cluster around center_hour.
struct PeakComponent {
    double weight = 0.0;       // share of the daily total
    double center_hour = 0.0;  // local time of day
    double spread_hour = 1.0;
    double event_volume_l = 10.0;  // typical single-event volume
};

enum class DemandClass { low, medium, high };

const char* demand_class_name(DemandClass c);
DemandClass demand_class_from_name(const std::string& name);

struct ProfileParams {
    double daily_mean_l = 120.0;
    double daily_std_frac = 0.15;
    double daily_min_frac = 0.5;
    double daily_max_frac = 1.6;
    double flow_rate_l_per_min = 6.0;
    std::vector<PeakComponent> weekday_peaks;
    std::vector<PeakComponent> weekend_peaks;

    static ProfileParams for_class(DemandClass c);
};

// All draw events for one day, deterministic in (seed, day_index). The day
// starts at day_start_min; weekday/weekend is derived from it.
std::vector<DrawEvent> sample_day(const ProfileParams& params, int day_index, std::uint64_t seed,
                                  std::int64_t day_start_min);

// Buckets events into control periods relative to day_start_min.
std::vector<double> liters_per_period(const std::vector<DrawEvent>& events,
                                      std::int64_t day_start_min, int period_min, int n_periods);

// Observed per-period draw history at a fixed period, contiguous from start_min.
struct DrawHistory {
    std::int64_t start_min = 0;
    int period_min = 15;
    std::vector<double> draws_l;

    void append(double liters) { draws_l.push_back(liters); }
    std::int64_t end_min() const {
        return start_min + static_cast<std::int64_t>(draws_l.size()) * period_min;
    }
    int periods_per_day() const { return kMinutesPerDay / period_min; }
    bool has_full_day() const {
        return static_cast<int>(draws_l.size()) >= periods_per_day();
    }
};

struct DrawForecast {
    std::vector<double> expected_l;
    std::vector<double> std_l;
    bool fallback = false;  // insufficient history, uniform prior used
};

// Empirical per time-of-day forecast with separate weekday/weekend bins.
// std is the population standard deviation of the bin. With less than one
// full day of history, falls back to a flat prior built from
// fallback_daily_total_l and sets the flag.
DrawForecast predict_draws(const DrawHistory& history, int horizon_periods,
                           double fallback_daily_total_l = 120.0);

// CSV import/export (columns: timestamp, liters).
void write_draw_history(const std::string& path, const DrawHistory& history);
DrawHistory load_draw_history(const std::string& path);

}  // namespace dhw::occupant
