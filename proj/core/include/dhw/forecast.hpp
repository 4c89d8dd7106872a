#pragma once

#include <cstdint>
#include <string>

#include "dhw/simcore.hpp"

namespace dhw::forecast {

struct AmbientForecast {
    std::vector<double> temps_c;
    std::int64_t issued_at_min = 0;
};

// Ambient forecast provider backed by a trace, with a configurable AR(1)
// forecast error so planning sees realistic, imperfect weather. error_std_c
// is the stationary (marginal) error standard deviation; zero gives exact
// pass-through. Errors are deterministic in (seed, issue time).
class AmbientSource {
public:
    AmbientSource(sim::AmbientTrace trace, double error_std_c = 0.0, double ar1_rho = 0.8,
                  std::uint64_t seed = 0);

    // Forecast for [now, now + horizon) at the trace period. Throws
    // std::out_of_range naming the first missing timestamp on a gap.
    AmbientForecast forecast(std::int64_t now_min, int horizon_periods) const;

    const sim::AmbientTrace& trace() const { return trace_; }

private:
    sim::AmbientTrace trace_;
    double error_std_c_;
    double rho_;
    std::uint64_t seed_;
};

struct SyntheticAmbientParams {
    double mean_c = 10.0;
    double daily_amplitude_c = 5.0;
    double daily_peak_hour = 15.0;
    double seasonal_amplitude_c = 3.0;
    double seasonal_period_days = 365.0;
    // slow AR(1) weather wander on top of the cycles; 0 disables
    double weather_noise_std_c = 1.0;
    double weather_noise_rho = 0.97;
};

sim::AmbientTrace synthetic_trace(const SyntheticAmbientParams& params, std::int64_t start_min,
                                  int n_days, int period_min, std::uint64_t seed);

// Two-column CSV (ISO-8601 timestamp, temperature in C) with a header row.
void write_trace(const std::string& path, const sim::AmbientTrace& trace);

// Validates monotone timestamps and a constant period; errors carry the
// offending row number.
sim::AmbientTrace load_trace(const std::string& path);

}  // namespace dhw::forecast
