#include "dhw/occupant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "dhw/csv.hpp"
#include "dhw/rng.hpp"

namespace dhw::occupant {

const char* demand_class_name(DemandClass c) {
    switch (c) {
        case DemandClass::low: return "low";
        case DemandClass::medium: return "medium";
        case DemandClass::high: return "high";
    }
    return "medium";
}

DemandClass demand_class_from_name(const std::string& name) {
    if (name == "low") return DemandClass::low;
    if (name == "medium") return DemandClass::medium;
    if (name == "high") return DemandClass::high;
    throw std::invalid_argument("unknown demand class: '" + name + "'");
}

ProfileParams ProfileParams::for_class(DemandClass c) {
    ProfileParams p;
    switch (c) {
        case DemandClass::low: p.daily_mean_l = 80.0; break;
        case DemandClass::medium: p.daily_mean_l = 120.0; break;
        case DemandClass::high: p.daily_mean_l = 200.0; break;
    }
    p.weekday_peaks = {
        {0.40, 7.3, 0.6, 35.0},   // morning showers
        {0.15, 13.0, 2.5, 6.0},   // daytime taps
        {0.45, 19.5, 1.2, 25.0},  // evening cooking/bathing
    };
    p.weekend_peaks = {
        {0.35, 9.2, 1.0, 35.0},
        {0.25, 13.5, 2.5, 8.0},
        {0.40, 19.0, 1.5, 25.0},
    };
    return p;
}

std::vector<DrawEvent> sample_day(const ProfileParams& params, int day_index, std::uint64_t seed,
                                  std::int64_t day_start_min) {
    std::vector<DrawEvent> events;
    if (params.daily_mean_l <= 0.0) return events;

    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(day_index), 0xD4A3));
    const double mean = params.daily_mean_l;
    double total = rng.normal(mean, params.daily_std_frac * mean);
    total = std::clamp(total, params.daily_min_frac * mean, params.daily_max_frac * mean);

    const auto& peaks = is_weekend(day_start_min) ? params.weekend_peaks : params.weekday_peaks;
    double weight_sum = 0.0;
    for (const auto& p : peaks) weight_sum += p.weight;
    if (weight_sum <= 0.0) return events;

    for (const auto& comp : peaks) {
        const double comp_total = total * comp.weight / weight_sum;
        if (comp_total < 0.5) continue;
        const int n = std::max(1, static_cast<int>(std::llround(comp_total / comp.event_volume_l)));
        std::vector<double> sizes(n);
        double size_sum = 0.0;
        for (auto& s : sizes) {
            s = std::exp(rng.normal(0.0, 0.35));
            size_sum += s;
        }
        for (int i = 0; i < n; ++i) {
            const double vol = comp_total * sizes[i] / size_sum;
            double hour = comp.center_hour + comp.spread_hour * rng.normal();
            hour = std::clamp(hour, 0.0, 23.95);
            DrawEvent e;
            e.timestamp_min = day_start_min + static_cast<std::int64_t>(std::llround(hour * 60.0));
            e.volume_l = vol;
            e.duration_min = vol / params.flow_rate_l_per_min;
            events.push_back(e);
        }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const DrawEvent& a, const DrawEvent& b) {
                         return a.timestamp_min < b.timestamp_min;
                     });
    return events;
}

std::vector<double> liters_per_period(const std::vector<DrawEvent>& events,
                                      std::int64_t day_start_min, int period_min, int n_periods) {
    std::vector<double> out(n_periods, 0.0);
    for (const auto& e : events) {
        const std::int64_t rel = e.timestamp_min - day_start_min;
        if (rel < 0) continue;
        const auto idx = rel / period_min;
        if (idx < n_periods) out[static_cast<size_t>(idx)] += e.volume_l;
    }
    return out;
}

DrawForecast predict_draws(const DrawHistory& history, int horizon_periods,
                           double fallback_daily_total_l) {
    DrawForecast fc;
    fc.expected_l.resize(horizon_periods, 0.0);
    fc.std_l.resize(horizon_periods, 0.0);
    const int ppd = history.periods_per_day();
    const double uniform = fallback_daily_total_l / ppd;

    if (!history.has_full_day()) {
        std::fill(fc.expected_l.begin(), fc.expected_l.end(), uniform);
        std::fill(fc.std_l.begin(), fc.std_l.end(), uniform);
        fc.fallback = true;
        return fc;
    }

    // bin[weekend][period-of-day] -> (n, sum, sum of squares)
    struct Bin {
        int n = 0;
        double sum = 0.0;
        double sumsq = 0.0;
    };
    std::vector<std::array<Bin, 2>> bins(ppd);
    for (size_t i = 0; i < history.draws_l.size(); ++i) {
        const std::int64_t ts = history.start_min + static_cast<std::int64_t>(i) * history.period_min;
        const int pod = period_of_day(ts, history.period_min);
        Bin& b = bins[pod][is_weekend(ts) ? 1 : 0];
        b.n += 1;
        b.sum += history.draws_l[i];
        b.sumsq += history.draws_l[i] * history.draws_l[i];
    }

    for (int k = 0; k < horizon_periods; ++k) {
        const std::int64_t ts = history.end_min() + static_cast<std::int64_t>(k) * history.period_min;
        const int pod = period_of_day(ts, history.period_min);
        const int wk = is_weekend(ts) ? 1 : 0;
        const Bin* b = &bins[pod][wk];
        if (b->n == 0) b = &bins[pod][1 - wk];  // other day class as stand-in
        if (b->n == 0) {
            fc.expected_l[k] = uniform;
            fc.std_l[k] = uniform;
            continue;
        }
        const double m = b->sum / b->n;
        const double var = std::max(0.0, b->sumsq / b->n - m * m);
        fc.expected_l[k] = m;
        fc.std_l[k] = std::sqrt(var);
    }
    return fc;
}

void write_draw_history(const std::string& path, const DrawHistory& history) {
    CsvWriter w(path, {"timestamp", "liters"});
    for (size_t i = 0; i < history.draws_l.size(); ++i) {
        const std::int64_t ts = history.start_min + static_cast<std::int64_t>(i) * history.period_min;
        w.write_row({format_iso8601(ts), CsvWriter::num(history.draws_l[i])});
    }
}

DrawHistory load_draw_history(const std::string& path) {
    const CsvTable t = read_csv(path);
    if (t.header.size() != 2)
        throw std::runtime_error(path + ": expected two columns (timestamp, liters)");
    DrawHistory h;
    std::int64_t prev = 0;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        std::int64_t ts;
        double liters;
        try {
            ts = parse_iso8601_minutes(t.rows[i][0]);
            liters = std::stod(t.rows[i][1]);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ": row " + std::to_string(i + 2) + ": " + e.what());
        }
        if (i == 0) {
            h.start_min = ts;
        } else if (i == 1) {
            if (ts <= prev)
                throw std::runtime_error(path + ": row " + std::to_string(i + 2) +
                                         ": timestamps must increase");
            h.period_min = static_cast<int>(ts - prev);
        } else if (ts - prev != h.period_min) {
            throw std::runtime_error(path + ": row " + std::to_string(i + 2) +
                                     ": irregular period");
        }
        if (liters < 0.0)
            throw std::runtime_error(path + ": row " + std::to_string(i + 2) + ": negative draw");
        h.draws_l.push_back(liters);
        prev = ts;
    }
    return h;
}

}  // namespace dhw::occupant
