#include "pvtag/harvester.hpp"

#include <cmath>
#include <string>

#include "pvtag/errors.hpp"

namespace pvtag {

void PvCellSpec::validate() const {
    if (!(efficiency > 0.0 && efficiency < kMaxPlausibleEfficiency)) {
        throw ValidationError("cell efficiency " + std::to_string(efficiency) +
                              " outside (0, 0.35)");
    }
    if (!(vmpp_v > 0.0) || !std::isfinite(vmpp_v)) {
        throw ValidationError("cell Vmpp must be > 0 V");
    }
    if (!(active_area_cm2 > 0.0) || !std::isfinite(active_area_cm2)) {
        throw ValidationError("cell active area must be > 0 cm2");
    }
}

void PvModuleSpec::validate() const {
    cell.validate();
    if (series_count < 1 || parallel_count < 1) {
        throw ValidationError("module series and parallel counts must be >= 1");
    }
    if (bend_radius_mm && !(*bend_radius_mm >= kMinTestedBendRadiusMm)) {
        throw ValidationError("module bend radius " + std::to_string(*bend_radius_mm) +
                              " mm below the 5 mm tested limit");
    }
}

std::string_view to_string(EnvClass c) {
    switch (c) {
        case EnvClass::outdoor_sun:
            return "outdoor_sun";
        case EnvClass::indoor_lit:
            return "indoor_lit";
    }
    return "unknown";
}

EnvClass parse_env_class(std::string_view name) {
    if (name == "outdoor_sun" || name == "outdoor") return EnvClass::outdoor_sun;
    if (name == "indoor_lit" || name == "indoor") return EnvClass::indoor_lit;
    throw ValidationError("unknown environment class '" + std::string(name) +
                          "' (expected outdoor_sun or indoor_lit)");
}

double default_irradiance_w_cm2(EnvClass c) {
    return c == EnvClass::outdoor_sun ? 100e-3 : 100e-6;
}

void IlluminationEnv::validate() const {
    if (!(irradiance_w_cm2 > 0.0) || !std::isfinite(irradiance_w_cm2)) {
        throw ValidationError("irradiance must be > 0 W/cm2");
    }
    if (indoor_efficiency &&
        !(*indoor_efficiency > 0.0 && *indoor_efficiency < kMaxPlausibleEfficiency)) {
        throw ValidationError("indoor efficiency override outside (0, 0.35)");
    }
}

double bending_factor(BendRadius radius_mm) {
    if (!radius_mm) return 1.0;
    const double r = *radius_mm;
    if (std::isnan(r) || r < kMinTestedBendRadiusMm) {
        throw DomainError("bend radius " + std::to_string(r) +
                          " mm is below the 5 mm tested domain");
    }
    if (r >= kLosslessBendRadiusMm) return 1.0;
    return 0.8 + 0.2 * std::log2(r / kMinTestedBendRadiusMm) /
                     std::log2(kLosslessBendRadiusMm / kMinTestedBendRadiusMm);
}

double effective_efficiency(const PvCellSpec& cell, const IlluminationEnv& env) {
    if (env.env_class == EnvClass::indoor_lit && env.indoor_efficiency) {
        return *env.indoor_efficiency;
    }
    return cell.efficiency;
}

PvOutput module_power(const PvModuleSpec& module, const IlluminationEnv& env) {
    module.validate();
    env.validate();
    return {effective_efficiency(module.cell, env) * env.irradiance_w_cm2 *
                module.total_area_cm2() * bending_factor(module.bend_radius_mm),
            module.vmpp_v()};
}

double required_area_cm2(double load_w, const PvCellSpec& cell, const IlluminationEnv& env,
                         BendRadius bend_mm) {
    if (!(load_w > 0.0) || !std::isfinite(load_w)) {
        throw DomainError("load power must be > 0 W");
    }
    cell.validate();
    env.validate();
    return load_w /
           (effective_efficiency(cell, env) * env.irradiance_w_cm2 * bending_factor(bend_mm));
}

}  // namespace pvtag
