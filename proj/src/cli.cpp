#include "pvtag/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

#include "pvtag/errors.hpp"
#include "pvtag/harvester.hpp"
#include "pvtag/scenario_file.hpp"
#include "pvtag/text_util.hpp"
#include "pvtag/trace_csv.hpp"

namespace pvtag::cli {

namespace {

std::string fixed(double v, int decimals = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string range_text(const std::optional<double>& r) { return r ? fixed(*r) : "unreachable"; }

}  // namespace

int guarded(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}

void cmd_range(const RangeArgs& args, std::ostream& out) {
    const ScenarioConfig cfg = load_scenario_file(args.scenario);
    if (args.dump_normalized) {
        out << dump_normalized(cfg);
        return;
    }
    const Scenario& sc = cfg.scenario;
    const TagPlacement& tag = sc.require_tag(args.tag_id);

    const double passive_w = effective_sensitivity(WakeTarget::passive, tag.rf);
    const double assisted_w = effective_sensitivity(WakeTarget::assisted, tag.rf);
    const auto passive = max_read_range(sc.reader, tag.rf, passive_w);
    const auto assisted = max_read_range(sc.reader, tag.rf, assisted_w);

    out << "tag: " << tag.id << '\n'
        << "passive_sensitivity_dbm: " << fixed(watts_to_dbm(passive_w)) << '\n'
        << "assisted_sensitivity_dbm: " << fixed(watts_to_dbm(assisted_w)) << '\n'
        << "passive_range_m: " << range_text(passive) << '\n'
        << "assisted_range_m: " << range_text(assisted) << '\n'
        << "ratio: " << (passive && assisted ? fixed(*assisted / *passive) : "n/a") << '\n'
        << "distance_m: " << fixed(tag.distance_m()) << '\n'
        << "mode_at_position: " << to_string(tag_state(sc, tag).mode) << '\n';
}

void cmd_pv_size(const PvSizeArgs& args, std::ostream& out) {
    IlluminationEnv env;
    env.env_class = parse_env_class(args.env);
    env.irradiance_w_cm2 = args.irradiance_uw_cm2 ? *args.irradiance_uw_cm2 * 1e-6
                                                  : default_irradiance_w_cm2(env.env_class);
    BendRadius bend = kFlat;
    if (args.bend_mm != "flat") {
        const auto r = parse_double(args.bend_mm);
        if (!r) throw ValidationError("--bend-mm (mm): expected a radius or 'flat', got '" + args.bend_mm + "'");
        bend = *r;
    }
    PvCellSpec cell;
    cell.efficiency = args.efficiency;

    const double area_cm2 = required_area_cm2(args.load_uw * 1e-6, cell, env, bend);
    out << "load_uw: " << fixed(args.load_uw) << '\n'
        << "efficiency: " << fixed(args.efficiency) << '\n'
        << "environment: " << to_string(env.env_class) << '\n'
        << "irradiance_uw_cm2: " << fixed(env.irradiance_w_cm2 * 1e6) << '\n'
        << "bend_mm: " << (bend ? fixed(*bend) : "flat") << '\n'
        << "bending_factor: " << fixed(bending_factor(bend)) << '\n'
        << "area_cm2: " << fixed(area_cm2, 6) << '\n'
        << "area_mm2: " << fixed(area_cm2 * 100.0, 4) << '\n';
}

void cmd_simulate(const SimulateArgs& args, std::ostream& out) {
    ScenarioConfig cfg = load_scenario_file(args.scenario);
    if (const char* env_seed = std::getenv(kSeedEnvVar); env_seed && *env_seed) {
        const auto seed = parse_uint(env_seed);
        if (!seed) {
            throw ValidationError(std::string(kSeedEnvVar) + ": expected a non-negative integer, got '" +
                                  env_seed + "'");
        }
        cfg.scenario.seed = *seed;
    }
    if (args.dump_normalized) {
        out << dump_normalized(cfg);
        return;
    }
    const InventoryResult result = run_inventory(cfg.scenario);
    save_trace_csv(args.out_csv, result.trace);

    out << "rows: " << result.trace.samples.size() << '\n'
        << "seed: " << cfg.scenario.seed << '\n';
    for (const auto& [id, reads] : result.read_counts) {
        out << "reads[" << id << "]: " << reads << '\n';
    }
}

void cmd_detect(const DetectArgs& args, std::ostream& out) {
    DetectorParams params;
    if (args.scenario) params = load_scenario_file(*args.scenario).detector;
    if (args.calib_window) params.calib_window = *args.calib_window;
    if (args.k_sigma) params.k_sigma = *args.k_sigma;
    if (args.min_run) params.min_run = *args.min_run;
    if (args.sigma_floor_db) params.sigma_floor_db = *args.sigma_floor_db;

    RssiTrace activity = load_trace_csv(args.activity_csv);
    RssiTrace reference = load_trace_csv(args.reference_csv);
    if (args.activity_tag) activity = activity.for_tag(*args.activity_tag);
    if (args.reference_tag) reference = reference.for_tag(*args.reference_tag);

    const DetectionResult r = detect_activity(activity, reference, params);
    out << "alignment: activity_reads=" << r.alignment.activity_reads
        << " reference_reads=" << r.alignment.reference_reads
        << " aligned=" << r.alignment.aligned << '\n';
    if (r.alignment.aligned == 0) {
        throw ValidationError("traces share no successfully read time index (" +
                              std::to_string(r.alignment.activity_reads) + " activity reads, " +
                              std::to_string(r.alignment.reference_reads) + " reference reads)");
    }
    out << "baseline_mean_db: " << fixed(r.baseline_mean_db) << '\n'
        << "baseline_sigma_db: " << fixed(r.baseline_sigma_db) << '\n'
        << "threshold_db: "
        << fixed(params.k_sigma * std::max(r.baseline_sigma_db, params.sigma_floor_db)) << '\n'
        << "events: " << r.events.size() << '\n';
    for (const auto& e : r.events) {
        out << "event: " << e.start_index << ',' << e.end_index << ','
            << fixed(e.peak_deviation_db) << '\n';
    }
}

void cmd_orient(const OrientArgs& args, std::ostream& out) {
    if (!std::isfinite(args.ax) || !std::isfinite(args.ay) || !std::isfinite(args.az)) {
        throw ValidationError("acceleration components must be finite numbers");
    }
    const OrientationReading r = decode_orientation({args.ax, args.ay, args.az}, args.params);
    switch (r.reason) {
        case IndeterminateReason::none:
            out << to_string(r.decoded) << '\n';
            break;
        case IndeterminateReason::non_stationary:
            out << "indeterminate (non-stationary: |a| = " << fixed(r.magnitude)
                << " m/s^2, outside " << fixed(kGravity, 2) << " +/- "
                << fixed(args.params.g_tolerance) << ")\n";
            break;
        case IndeterminateReason::ambiguous_axis:
            out << "indeterminate (no dominant axis at ratio " << fixed(args.params.axis_dominance)
                << ")\n";
            break;
    }
}

}  // namespace pvtag::cli
