#pragma once

// Flexible perovskite PV harvester: constant-efficiency cell model,
// series/parallel mini-modules, bending loss and area sizing.

#include <optional>
#include <string_view>

namespace pvtag {

inline constexpr double kMinTestedBendRadiusMm = 5.0;
inline constexpr double kLosslessBendRadiusMm = 20.0;
inline constexpr double kMaxPlausibleEfficiency = 0.35;

/// Bend radius in millimeters; nullopt means the cell lies flat.
using BendRadius = std::optional<double>;
inline constexpr BendRadius kFlat = std::nullopt;

struct PvCellSpec {
    double efficiency = 0.13;
    double vmpp_v = 0.88;
    double active_area_cm2 = 1.0;

    void validate() const;
};

struct PvModuleSpec {
    PvCellSpec cell;
    int series_count = 1;
    int parallel_count = 1;
    BendRadius bend_radius_mm = kFlat;

    double vmpp_v() const { return series_count * cell.vmpp_v; }
    double total_area_cm2() const { return series_count * parallel_count * cell.active_area_cm2; }
    void validate() const;
};

enum class EnvClass { outdoor_sun, indoor_lit };

std::string_view to_string(EnvClass c);
/// Throws ValidationError on an unknown name.
EnvClass parse_env_class(std::string_view name);
double default_irradiance_w_cm2(EnvClass c);

struct IlluminationEnv {
    EnvClass env_class = EnvClass::indoor_lit;
    double irradiance_w_cm2 = 100e-6;
    /// Replaces the cell efficiency under indoor light when set.
    std::optional<double> indoor_efficiency;

    static IlluminationEnv outdoor() { return {EnvClass::outdoor_sun, 0.1, std::nullopt}; }
    static IlluminationEnv indoor() { return {EnvClass::indoor_lit, 100e-6, std::nullopt}; }

    void validate() const;
};

struct PvOutput {
    double power_w = 0.0;
    double vmpp_v = 0.0;
};

/// Relative efficiency retained at a bend radius: 1.0 flat or at >= 20 mm,
/// 0.8 at 5 mm, log-linear in between. Radii below 5 mm throw DomainError.
double bending_factor(BendRadius radius_mm);

double effective_efficiency(const PvCellSpec& cell, const IlluminationEnv& env);

PvOutput module_power(const PvModuleSpec& module, const IlluminationEnv& env);

/// Smallest active area whose output meets `load_w`.
double required_area_cm2(double load_w, const PvCellSpec& cell, const IlluminationEnv& env,
                         BendRadius bend_mm);

}  // namespace pvtag
