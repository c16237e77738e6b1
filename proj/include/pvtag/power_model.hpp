#pragma once

// Instantaneous power balance of a PV-assisted tag. No storage element:
// a tag runs only what its present RF and PV input can carry.

#include <string>
#include <string_view>
#include <vector>

#include "pvtag/harvester.hpp"
#include "pvtag/rf_link.hpp"

namespace pvtag {

inline constexpr double kMinLoadDrawW = 1e-6;
inline constexpr double kMaxLoadDrawW = 10e-3;
inline constexpr std::string_view kTemperatureLoad = "temperature";
inline constexpr std::string_view kOrientationLoad = "orientation";

struct Load {
    std::string name;
    double draw_w = 0.0;
    double min_voltage_v = 0.0;
};

/// Loads are listed in priority order.
struct LoadProfile {
    double ic_idle_w = 10e-6;
    std::vector<Load> loads;

    const Load* find(std::string_view name) const;
    void validate() const;
};

/// On-chip temperature sensor, 15 uW.
Load temperature_load();
/// Accelerometer + microcontroller suite, 350 uW at >= 3 V.
Load orientation_load();

enum class TagMode { off = 0, passive = 1, assisted = 2, sensor_active = 3 };

std::string_view to_string(TagMode m);
TagMode parse_tag_mode(std::string_view name);

struct TagPowerState {
    TagMode mode = TagMode::off;
    std::vector<std::string> active_loads;
    double margin_w = 0.0;

    bool powered() const { return mode >= TagMode::passive; }
    bool runs(std::string_view load) const;
};

/// Decide the operating mode from RF input at the IC and PV output.
///
/// Assisted operation needs pv.power >= ic_idle and rf_in >= assisted
/// sensitivity; otherwise RF alone at or above the passive sensitivity gives
/// passive mode. In assisted mode, loads whose min_voltage exceeds pv.vmpp are
/// skipped and the remaining loads are taken in priority order until the first
/// one the surplus cannot carry. Any selected load promotes to sensor_active.
TagPowerState evaluate_state(double rf_in_w, const PvOutput& pv, const TagRfProfile& rf,
                             const LoadProfile& loads);

enum class WakeTarget { passive, assisted };

double effective_sensitivity(WakeTarget target, const TagRfProfile& rf);

}  // namespace pvtag
