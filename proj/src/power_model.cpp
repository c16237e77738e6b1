#include "pvtag/power_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "pvtag/errors.hpp"

namespace pvtag {

const Load* LoadProfile::find(std::string_view name) const {
    auto it = std::find_if(loads.begin(), loads.end(),
                           [&](const Load& l) { return l.name == name; });
    return it == loads.end() ? nullptr : &*it;
}

void LoadProfile::validate() const {
    auto in_envelope = [](double w) { return w >= kMinLoadDrawW && w <= kMaxLoadDrawW; };
    if (!in_envelope(ic_idle_w)) {
        throw ValidationError("IC idle draw " + std::to_string(ic_idle_w * 1e6) +
                              " uW outside the [1 uW, 10 mW] envelope");
    }
    std::set<std::string_view> seen;
    for (const auto& l : loads) {
        if (l.name.empty()) throw ValidationError("load name must not be empty");
        if (!seen.insert(l.name).second) {
            throw ValidationError("duplicate load '" + l.name + "'");
        }
        if (!in_envelope(l.draw_w)) {
            throw ValidationError("load '" + l.name + "' draw " + std::to_string(l.draw_w * 1e6) +
                                  " uW outside the [1 uW, 10 mW] envelope");
        }
        if (!(l.min_voltage_v > 0.0)) {
            throw ValidationError("load '" + l.name + "' min voltage must be > 0 V");
        }
    }
}

// The temperature IC has no stated voltage floor; 0.5 V keeps a single
// 0.88 V cell eligible.
Load temperature_load() { return {std::string(kTemperatureLoad), 15e-6, 0.5}; }

Load orientation_load() { return {std::string(kOrientationLoad), 350e-6, 3.0}; }

std::string_view to_string(TagMode m) {
    switch (m) {
        case TagMode::off:
            return "off";
        case TagMode::passive:
            return "passive";
        case TagMode::assisted:
            return "assisted";
        case TagMode::sensor_active:
            return "sensor_active";
    }
    return "unknown";
}

TagMode parse_tag_mode(std::string_view name) {
    for (auto m : {TagMode::off, TagMode::passive, TagMode::assisted, TagMode::sensor_active}) {
        if (to_string(m) == name) return m;
    }
    throw ValidationError("unknown tag mode '" + std::string(name) + "'");
}

bool TagPowerState::runs(std::string_view load) const {
    return std::find(active_loads.begin(), active_loads.end(), load) != active_loads.end();
}

TagPowerState evaluate_state(double rf_in_w, const PvOutput& pv, const TagRfProfile& rf,
                             const LoadProfile& loads) {
    if (!(rf_in_w >= 0.0) || !(pv.power_w >= 0.0)) {
        throw DomainError("RF and PV input power must be >= 0 W");
    }
    TagPowerState state;
    state.margin_w = pv.power_w;

    const bool pv_runs_ic = pv.power_w >= loads.ic_idle_w;
    if (pv_runs_ic && rf_in_w >= rf.assisted_sensitivity_w) {
        state.mode = TagMode::assisted;
        double surplus = pv.power_w - loads.ic_idle_w;
        for (const auto& load : loads.loads) {
            if (load.min_voltage_v > pv.vmpp_v) continue;
            if (load.draw_w > surplus) break;
            surplus -= load.draw_w;
            state.active_loads.push_back(load.name);
        }
        state.margin_w = surplus;
        if (!state.active_loads.empty()) state.mode = TagMode::sensor_active;
    } else if (rf_in_w >= rf.passive_sensitivity_w) {
        state.mode = TagMode::passive;
    }
    return state;
}

double effective_sensitivity(WakeTarget target, const TagRfProfile& rf) {
    return target == WakeTarget::passive ? rf.passive_sensitivity_w : rf.assisted_sensitivity_w;
}

}  // namespace pvtag
