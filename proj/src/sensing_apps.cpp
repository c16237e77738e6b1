#include "pvtag/sensing_apps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "pvtag/errors.hpp"

namespace pvtag {

std::string_view to_string(Orientation o) {
    switch (o) {
        case Orientation::x_up:
            return "x_up";
        case Orientation::x_down:
            return "x_down";
        case Orientation::y_up:
            return "y_up";
        case Orientation::y_down:
            return "y_down";
        case Orientation::z_up:
            return "z_up";
        case Orientation::z_down:
            return "z_down";
        case Orientation::indeterminate:
            return "indeterminate";
    }
    return "indeterminate";
}

OrientationReading decode_orientation(const std::array<double, 3>& accel,
                                      const OrientationParams& params) {
    OrientationReading out;
    out.accel = accel;
    out.magnitude = std::hypot(accel[0], accel[1], accel[2]);
    if (!std::isfinite(out.magnitude) ||
        std::abs(out.magnitude - kGravity) > params.g_tolerance) {
        out.reason = IndeterminateReason::non_stationary;
        return out;
    }

    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(accel[a]) > std::abs(accel[b]); });
    const double top = std::abs(accel[order[0]]);
    const double second = std::abs(accel[order[1]]);
    if (!(top > params.axis_dominance * second) || top == second) {
        out.reason = IndeterminateReason::ambiguous_axis;
        return out;
    }

    static constexpr std::array<Orientation, 6> kLabels{
        Orientation::x_up, Orientation::x_down, Orientation::y_up,
        Orientation::y_down, Orientation::z_up, Orientation::z_down};
    const int axis = order[0];
    out.decoded = kLabels[2 * axis + (accel[axis] < 0.0 ? 1 : 0)];
    return out;
}

void DetectorParams::validate() const {
    if (calib_window < 2) throw ValidationError("calibration window must be >= 2 samples");
    if (!(k_sigma > 0.0)) throw ValidationError("k_sigma must be > 0");
    if (min_run < 1) throw ValidationError("min_run must be >= 1");
    if (!(sigma_floor_db > 0.0)) throw ValidationError("sigma floor must be > 0 dB");
}

namespace {

std::map<std::uint64_t, double> successful_reads(const RssiTrace& trace, const char* role) {
    std::map<std::uint64_t, double> reads;
    std::set<std::string_view> ids;
    for (const auto& s : trace.samples) {
        ids.insert(s.tag_id);
        if (!s.read_success || !s.rssi_dbm) continue;
        if (!reads.emplace(s.time_index, *s.rssi_dbm).second) {
            throw ValidationError(std::string(role) + " trace repeats time index " +
                                  std::to_string(s.time_index));
        }
    }
    if (ids.size() > 1) {
        throw ValidationError(std::string(role) + " trace mixes " + std::to_string(ids.size()) +
                              " tags; select one tag per trace");
    }
    return reads;
}

}  // namespace

DetectionResult detect_activity(const RssiTrace& activity, const RssiTrace& reference,
                                const DetectorParams& params) {
    params.validate();
    const auto act = successful_reads(activity, "activity");
    const auto ref = successful_reads(reference, "reference");

    DetectionResult result;
    result.alignment.activity_reads = act.size();
    result.alignment.reference_reads = ref.size();

    std::vector<std::uint64_t> index;
    std::vector<double> delta;
    for (const auto& [t, rssi] : act) {
        auto it = ref.find(t);
        if (it == ref.end()) continue;
        index.push_back(t);
        delta.push_back(rssi - it->second);
    }
    result.alignment.aligned = delta.size();
    if (delta.empty()) return result;
    if (params.calib_window > delta.size()) {
        throw ValidationError("calibration window " + std::to_string(params.calib_window) +
                              " exceeds the " + std::to_string(delta.size()) +
                              " aligned samples");
    }

    double mean = 0.0;
    for (std::size_t i = 0; i < params.calib_window; ++i) mean += delta[i];
    mean /= static_cast<double>(params.calib_window);
    double ss = 0.0;
    for (std::size_t i = 0; i < params.calib_window; ++i) ss += (delta[i] - mean) * (delta[i] - mean);
    const double sigma = std::sqrt(ss / static_cast<double>(params.calib_window - 1));
    result.baseline_mean_db = mean;
    result.baseline_sigma_db = sigma;

    const double threshold = params.k_sigma * std::max(sigma, params.sigma_floor_db);
    std::size_t i = 0;
    while (i < delta.size()) {
        if (std::abs(delta[i] - mean) <= threshold) {
            ++i;
            continue;
        }
        std::size_t j = i;
        double peak = 0.0;
        while (j < delta.size() && std::abs(delta[j] - mean) > threshold) {
            peak = std::max(peak, std::abs(delta[j] - mean));
            ++j;
        }
        if (j - i >= params.min_run) result.events.push_back({index[i], index[j - 1], peak});
        i = j;
    }
    return result;
}

std::vector<TelemetryReading> simulate_telemetry(const Scenario& scenario,
                                                 std::string_view tag_id,
                                                 const std::vector<double>& true_temperature_c,
                                                 double quantization_c) {
    const TagPlacement& tag = scenario.require_tag(tag_id);
    if (!tag.loads.find(kTemperatureLoad)) {
        throw ValidationError("tag '" + tag.id + "' declares no temperature load");
    }
    if (!(quantization_c >= 0.0)) throw ValidationError("quantization step must be >= 0 C");

    Scenario run = scenario;
    run.rounds = true_temperature_c.size();
    const InventoryResult inventory = run_inventory(run);
    const bool sensing = tag_state(run, tag).runs(kTemperatureLoad);

    std::vector<TelemetryReading> readings;
    readings.reserve(true_temperature_c.size());
    for (std::uint64_t t = 0; t < true_temperature_c.size(); ++t) {
        readings.push_back({t, std::nullopt});
    }
    if (!sensing) return readings;
    for (const auto& s : inventory.trace.samples) {
        if (s.tag_id != tag.id || !s.read_success) continue;
        double value = true_temperature_c[s.time_index];
        if (quantization_c > 0.0) value = std::round(value / quantization_c) * quantization_c;
        readings[s.time_index].temperature_c = value;
    }
    return readings;
}

}  // namespace pvtag
