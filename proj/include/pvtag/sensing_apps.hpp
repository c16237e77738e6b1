#pragma once

// Application pipelines on top of the simulator: stationary orientation
// decoding, two-tag differential RSSI activity detection, and PV-gated
// temperature telemetry.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pvtag/inventory_sim.hpp"

namespace pvtag {

inline constexpr double kGravity = 9.81;

enum class Orientation { x_up, x_down, y_up, y_down, z_up, z_down, indeterminate };

std::string_view to_string(Orientation o);

enum class IndeterminateReason { none, non_stationary, ambiguous_axis };

struct OrientationReading {
    std::array<double, 3> accel{};
    Orientation decoded = Orientation::indeterminate;
    IndeterminateReason reason = IndeterminateReason::none;
    double magnitude = 0.0;  // |accel|, m/s^2
};

struct OrientationParams {
    double g_tolerance = 0.5;     // m/s^2 around 9.81 that counts as stationary
    double axis_dominance = 1.5;  // winner must exceed this multiple of the runner-up
};

OrientationReading decode_orientation(const std::array<double, 3>& accel,
                                      const OrientationParams& params = {});

struct DetectorParams {
    std::size_t calib_window = 30;
    double k_sigma = 3.0;
    std::size_t min_run = 3;
    double sigma_floor_db = 0.1;

    void validate() const;
};

struct ActivityEvent {
    std::uint64_t start_index = 0;
    std::uint64_t end_index = 0;
    double peak_deviation_db = 0.0;  // largest |delta - baseline| inside the event

    bool operator==(const ActivityEvent&) const = default;
};

struct AlignmentReport {
    std::size_t activity_reads = 0;
    std::size_t reference_reads = 0;
    std::size_t aligned = 0;
};

struct DetectionResult {
    std::vector<ActivityEvent> events;
    double baseline_mean_db = 0.0;
    double baseline_sigma_db = 0.0;
    AlignmentReport alignment;
};

/// Flags windows where the activity tag's RSSI departs from the reference tag.
///
/// Only time indices where both tags were read are used. The differential
/// delta = activity - reference is calibrated on the first `calib_window`
/// aligned samples (mean, sample standard deviation). An event is a maximal
/// run of at least `min_run` consecutive aligned samples whose |delta - mean|
/// exceeds k_sigma * max(sigma, sigma_floor). Each trace must hold one tag.
DetectionResult detect_activity(const RssiTrace& activity, const RssiTrace& reference,
                                const DetectorParams& params = {});

struct TelemetryReading {
    std::uint64_t time_index = 0;
    std::optional<double> temperature_c;
};

/// Runs one inventory round per series entry. A reading appears where the tag
/// was read while its PV supply carried the temperature load; values are
/// quantized to `quantization_c` (0 disables).
std::vector<TelemetryReading> simulate_telemetry(const Scenario& scenario,
                                                 std::string_view tag_id,
                                                 const std::vector<double>& true_temperature_c,
                                                 double quantization_c = 0.25);

}  // namespace pvtag
