#pragma once

// Subcommand bodies for the `pvtag` tool. Each writes its report to `out` and
// throws pvtag errors; `guarded` turns those into exit codes.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "pvtag/errors.hpp"
#include "pvtag/sensing_apps.hpp"

namespace pvtag::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,
    kExitIo = 3,
    kExitDomain = 4,
};

inline constexpr const char* kSeedEnvVar = "PVTAG_SEED";

/// Runs `body`, printing any error to `err`. Returns the exit code.
int guarded(std::ostream& err, const std::function<void()>& body);

struct RangeArgs {
    std::filesystem::path scenario;
    std::string tag_id;
    bool dump_normalized = false;
};
void cmd_range(const RangeArgs& args, std::ostream& out);

struct PvSizeArgs {
    double load_uw = 0.0;
    double efficiency = 0.13;
    std::string env = "outdoor_sun";
    std::string bend_mm = "flat";
    std::optional<double> irradiance_uw_cm2;
};
void cmd_pv_size(const PvSizeArgs& args, std::ostream& out);

struct SimulateArgs {
    std::filesystem::path scenario;
    std::filesystem::path out_csv;
    bool dump_normalized = false;
};
/// Honors PVTAG_SEED over the scenario's sim.seed.
void cmd_simulate(const SimulateArgs& args, std::ostream& out);

struct DetectArgs {
    std::filesystem::path activity_csv;
    std::filesystem::path reference_csv;
    std::optional<std::string> activity_tag;
    std::optional<std::string> reference_tag;
    std::optional<std::filesystem::path> scenario;  // source of detector.* defaults
    std::optional<std::size_t> calib_window;
    std::optional<double> k_sigma;
    std::optional<std::size_t> min_run;
    std::optional<double> sigma_floor_db;
};
void cmd_detect(const DetectArgs& args, std::ostream& out);

struct OrientArgs {
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
    OrientationParams params;
};
void cmd_orient(const OrientArgs& args, std::ostream& out);

}  // namespace pvtag::cli
