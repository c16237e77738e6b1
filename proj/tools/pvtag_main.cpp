#include <iostream>

#include <CLI11.hpp>

#include "pvtag/cli.hpp"

using namespace pvtag::cli;

int main(int argc, char** argv) {
    CLI::App app{"PV-assisted backscatter RFID tag simulator"};
    app.require_subcommand(1);

    RangeArgs range;
    auto* range_cmd = app.add_subcommand("range", "Passive vs PV-assisted read range for one tag");
    range_cmd->add_option("scenario", range.scenario, "Scenario file")->required();
    range_cmd->add_option("tag-id", range.tag_id, "Tag id");
    range_cmd->add_flag("--dump-normalized", range.dump_normalized,
                        "Print the validated scenario in canonical form and exit");

    PvSizeArgs pv;
    auto* pv_cmd = app.add_subcommand("pv-size", "PV active area needed for a load");
    pv_cmd->add_option("--load-uw", pv.load_uw, "Load power (uW)")->required();
    pv_cmd->add_option("--efficiency", pv.efficiency, "Cell efficiency (fraction)")->capture_default_str();
    pv_cmd->add_option("--env", pv.env, "outdoor_sun or indoor_lit")->capture_default_str();
    pv_cmd->add_option("--bend-mm", pv.bend_mm, "Bend radius (mm) or 'flat'")->capture_default_str();
    pv_cmd->add_option("--irradiance-uw-cm2", pv.irradiance_uw_cm2,
                       "Irradiance override (uW/cm2)");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run inventory rounds and write a TraceCsv");
    sim_cmd->add_option("scenario", sim.scenario, "Scenario file")->required();
    sim_cmd->add_option("out-csv", sim.out_csv, "Output trace path");
    sim_cmd->add_flag("--dump-normalized", sim.dump_normalized,
                      "Print the validated scenario in canonical form and exit");

    DetectArgs det;
    auto* det_cmd = app.add_subcommand("detect", "Differential-RSSI activity detection");
    det_cmd->add_option("activity-csv", det.activity_csv, "Activity tag trace")->required();
    det_cmd->add_option("reference-csv", det.reference_csv, "Reference tag trace")->required();
    det_cmd->add_option("--activity-tag", det.activity_tag, "Tag id to take from the activity CSV");
    det_cmd->add_option("--reference-tag", det.reference_tag, "Tag id to take from the reference CSV");
    det_cmd->add_option("--scenario", det.scenario, "Read detector.* parameters from a scenario");
    det_cmd->add_option("--calib-window", det.calib_window, "Calibration samples");
    det_cmd->add_option("--k-sigma", det.k_sigma, "Threshold in baseline sigmas");
    det_cmd->add_option("--min-run", det.min_run, "Minimum consecutive samples per event");
    det_cmd->add_option("--sigma-floor-db", det.sigma_floor_db, "Lower bound on baseline sigma (dB)");

    OrientArgs ori;
    auto* ori_cmd = app.add_subcommand("orient", "Decode orientation from a stationary accelerometer reading");
    ori_cmd->add_option("ax", ori.ax, "m/s^2")->required();
    ori_cmd->add_option("ay", ori.ay, "m/s^2")->required();
    ori_cmd->add_option("az", ori.az, "m/s^2")->required();
    ori_cmd->add_option("--g-tolerance", ori.params.g_tolerance, "Stationarity tolerance (m/s^2)")->capture_default_str();
    ori_cmd->add_option("--axis-dominance", ori.params.axis_dominance, "Winning axis ratio")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
        return kExitValidation;
    }

    return guarded(std::cerr, [&] {
        if (*range_cmd) {
            if (range.tag_id.empty() && !range.dump_normalized) {
                throw pvtag::ValidationError("range: missing tag id");
            }
            cmd_range(range, std::cout);
        } else if (*pv_cmd) {
            cmd_pv_size(pv, std::cout);
        } else if (*sim_cmd) {
            if (sim.out_csv.empty() && !sim.dump_normalized) {
                throw pvtag::ValidationError("simulate: missing output CSV path");
            }
            cmd_simulate(sim, std::cout);
        } else if (*det_cmd) {
            cmd_detect(det, std::cout);
        } else if (*ori_cmd) {
            cmd_orient(ori, std::cout);
        }
    });
}
