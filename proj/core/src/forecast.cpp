#include "dhw/forecast.hpp"

#include <cmath>
#include <stdexcept>

#include "dhw/csv.hpp"
#include "dhw/rng.hpp"
#include "dhw/timeutil.hpp"

namespace dhw::forecast {

AmbientSource::AmbientSource(sim::AmbientTrace trace, double error_std_c, double ar1_rho,
                             std::uint64_t seed)
    : trace_(std::move(trace)), error_std_c_(error_std_c), rho_(ar1_rho), seed_(seed) {
    if (error_std_c_ < 0.0) throw std::invalid_argument("forecast error std must be >= 0");
    if (rho_ < 0.0 || rho_ >= 1.0) throw std::invalid_argument("AR(1) rho must be in [0, 1)");
}

AmbientForecast AmbientSource::forecast(std::int64_t now_min, int horizon_periods) const {
    AmbientForecast fc;
    fc.issued_at_min = now_min;
    fc.temps_c.reserve(horizon_periods);

    const std::int64_t last = now_min + static_cast<std::int64_t>(horizon_periods - 1) *
                                            trace_.period_min;
    if (horizon_periods > 0 && !trace_.covers(now_min))
        throw std::out_of_range("ambient trace gap at " + format_iso8601(now_min));
    if (horizon_periods > 0 && !trace_.covers(last))
        throw std::out_of_range("ambient trace gap at " +
                                format_iso8601(std::max(trace_.end_min(), now_min)));

    Rng rng(derive_seed(seed_, static_cast<std::uint64_t>(now_min), 0xA17B));
    double err = 0.0;
    const double innov_std = error_std_c_ * std::sqrt(std::max(0.0, 1.0 - rho_ * rho_));
    for (int k = 0; k < horizon_periods; ++k) {
        if (error_std_c_ > 0.0) {
            if (k == 0)
                err = rng.normal(0.0, error_std_c_);
            else
                err = rho_ * err + rng.normal(0.0, innov_std);
        }
        fc.temps_c.push_back(trace_.at(now_min + static_cast<std::int64_t>(k) * trace_.period_min) +
                             err);
    }
    return fc;
}

sim::AmbientTrace synthetic_trace(const SyntheticAmbientParams& params, std::int64_t start_min,
                                  int n_days, int period_min, std::uint64_t seed) {
    sim::AmbientTrace t;
    t.start_min = start_min;
    t.period_min = period_min;
    const int n = n_days * kMinutesPerDay / period_min;
    t.temps_c.reserve(n);
    Rng rng(derive_seed(seed, 0x5EA50));
    double wander = 0.0;
    const double innov = params.weather_noise_std_c *
                         std::sqrt(std::max(0.0, 1.0 - params.weather_noise_rho * params.weather_noise_rho));
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (int i = 0; i < n; ++i) {
        const std::int64_t ts = start_min + static_cast<std::int64_t>(i) * period_min;
        const double hour = static_cast<double>(ts % kMinutesPerDay) / 60.0;
        const double day = static_cast<double>(ts) / kMinutesPerDay;
        double v = params.mean_c;
        v += params.daily_amplitude_c * std::cos(two_pi * (hour - params.daily_peak_hour) / 24.0);
        if (params.seasonal_period_days > 0.0)
            v += params.seasonal_amplitude_c * std::sin(two_pi * day / params.seasonal_period_days);
        if (params.weather_noise_std_c > 0.0) {
            wander = params.weather_noise_rho * wander + rng.normal(0.0, innov);
            v += wander;
        }
        t.temps_c.push_back(v);
    }
    return t;
}

void write_trace(const std::string& path, const sim::AmbientTrace& trace) {
    CsvWriter w(path, {"timestamp", "ambient_c"});
    for (size_t i = 0; i < trace.temps_c.size(); ++i) {
        const std::int64_t ts = trace.start_min + static_cast<std::int64_t>(i) * trace.period_min;
        w.write_row({format_iso8601(ts), CsvWriter::num(trace.temps_c[i])});
    }
}

sim::AmbientTrace load_trace(const std::string& path) {
    const CsvTable t = read_csv(path);
    if (t.header.size() != 2)
        throw std::runtime_error(path + ": expected two columns (timestamp, temperature)");
    if (t.rows.size() < 2) throw std::runtime_error(path + ": need at least two samples");
    sim::AmbientTrace tr;
    std::int64_t prev = 0;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        std::int64_t ts;
        double temp;
        try {
            ts = parse_iso8601_minutes(t.rows[i][0]);
            temp = std::stod(t.rows[i][1]);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ": row " + std::to_string(i + 2) + ": " + e.what());
        }
        if (!std::isfinite(temp) || temp < -60.0 || temp > 60.0)
            throw std::runtime_error(path + ": row " + std::to_string(i + 2) +
                                     ": implausible temperature");
        if (i == 0) {
            tr.start_min = ts;
        } else if (i == 1) {
            if (ts <= prev)
                throw std::runtime_error(path + ": row " + std::to_string(i + 2) +
                                         ": timestamps must be strictly increasing");
            tr.period_min = static_cast<int>(ts - prev);
        } else if (ts - prev != tr.period_min) {
            throw std::runtime_error(path + ": row " + std::to_string(i + 2) +
                                     ": irregular period (expected " +
                                     std::to_string(tr.period_min) + " min)");
        }
        tr.temps_c.push_back(temp);
        prev = ts;
    }
    return tr;
}

}  // namespace dhw::forecast
