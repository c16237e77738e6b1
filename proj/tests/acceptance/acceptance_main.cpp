// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pvtag/cli.hpp"
#include "pvtag/harvester.hpp"
#include "pvtag/inventory_sim.hpp"
#include "pvtag/power_model.hpp"
#include "pvtag/rf_link.hpp"
#include "pvtag/scenario_file.hpp"
#include "pvtag/sensing_apps.hpp"
#include "test_support.hpp"

using namespace pvtag;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = PVTAG_SCENARIO_DIR;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome range_ratio() {
    const auto reader = ReaderProfile::make(1.0, 8.5, 915e6);
    const auto tag = TagRfProfile::make(2.15, 1.0, -9.0, -23.0);
    const double passive = *max_read_range(reader, tag, effective_sensitivity(WakeTarget::passive, tag));
    const double assisted = *max_read_range(reader, tag, effective_sensitivity(WakeTarget::assisted, tag));
    const double ratio = assisted / passive;
    return {std::abs(ratio - 5.01) <= 0.01, fmt("ratio %.4f (target 5.01 +/- 0.01)", ratio)};
}

Outcome theoretical_range() {
    const auto reader = ReaderProfile::make(1.0, 8.5, 915e6);
    const auto tag = TagRfProfile::make(2.15, 1.0, -9.0, -23.0);
    const double got = *max_read_range(reader, tag, dbm_to_watts(-23.0));
    const double hand = oracle::range_m(30.0, 8.5, 2.15, 1.0, -23.0, 915e6);
    const bool ok = std::abs(got - 39.69) <= 0.05 && std::abs(got - hand) <= 0.05;
    return {ok, fmt("range %.4f m, dB hand calc %.4f m (target 39.69 +/- 0.05)", got, hand)};
}

double transition(const std::vector<SweepPoint>& pts) {
    double last = 0.0;
    for (const auto& p : pts) {
        if (p.read_probability >= 0.5) last = p.distance_m;
    }
    return last;
}

Outcome measured_range() {
    const auto config = load_scenario_file(kScenarios / "range_calibrated.scn");
    const double step = 0.1;
    std::vector<double> grid;
    for (int i = 1; i <= 80; ++i) grid.push_back(i * step);
    const double passive = transition(range_sweep(config.scenario, "passive", grid));
    const double assisted = transition(range_sweep(config.scenario, "perovskite", grid));
    const bool ok = std::abs(passive - 1.0) <= step + 1e-9 && std::abs(assisted - 5.0) <= step + 1e-9;
    return {ok, fmt("passive %.1f m, assisted %.1f m (targets 1.0 / 5.0 +/- %.1f)", passive, assisted, step)};
}

Outcome pv_sizing() {
    const double outdoor_mm2 =
        required_area_cm2(15e-6, PvCellSpec{}, IlluminationEnv::outdoor(), kFlat) * 100.0;
    const double indoor_cm2 = required_area_cm2(350e-6, PvCellSpec{}, IlluminationEnv::indoor(), kFlat);
    const bool ok = std::abs(outdoor_mm2 - 0.1154) <= 1e-4 && std::abs(indoor_cm2 - 26.92) <= 0.01 &&
                    outdoor_mm2 < 1.0;
    return {ok, fmt("outdoor %.6f mm2, indoor %.4f cm2 (targets 0.1154, 26.92)", outdoor_mm2, indoor_cm2)};
}

Outcome module_voltage() {
    const auto tag = TagRfProfile::make();
    LoadProfile loads;
    loads.loads = {orientation_load()};
    const auto env = IlluminationEnv::outdoor();
    const PvModuleSpec six{PvCellSpec{}, 6, 1, kFlat};
    const PvModuleSpec three{PvCellSpec{}, 3, 1, kFlat};
    const auto six_state = evaluate_state(dbm_to_watts(-20.0), module_power(six, env), tag, loads);
    const auto three_state = evaluate_state(dbm_to_watts(-20.0), module_power(three, env), tag, loads);
    const bool ok = std::abs(six.vmpp_v() - 5.28) <= 1e-12 && std::abs(three.vmpp_v() - 2.64) <= 1e-12 &&
                    six_state.runs(kOrientationLoad) && !three_state.runs(kOrientationLoad);
    return {ok, fmt("6s %.2f V runs orientation: %.0f, 3s %.2f V blocked", six.vmpp_v(),
                    six_state.runs(kOrientationLoad) ? 1.0 : 0.0, three.vmpp_v())};
}

Outcome bending() {
    bool ok = bending_factor(5.0) == 0.80 && bending_factor(20.0) == 1.0 && bending_factor(35.0) == 1.0 &&
              bending_factor(kFlat) == 1.0;
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> r(5.0, 20.0);
    std::vector<double> radii(1000);
    for (auto& x : radii) x = r(gen);
    std::sort(radii.begin(), radii.end());
    int violations = 0;
    for (std::size_t i = 1; i < radii.size(); ++i) {
        if (bending_factor(radii[i]) < bending_factor(radii[i - 1])) ++violations;
    }
    ok = ok && violations == 0;
    return {ok, fmt("bf(5)=%.4f bf(20)=%.4f, %.0f monotonicity violations over 1000 radii",
                    bending_factor(5.0), bending_factor(20.0), violations)};
}

Outcome aloha() {
    Scenario s = testing_support::make_scenario(10'000, 4, 2024);
    s.q_adjust_c = 0.0;
    for (int i = 0; i < 16; ++i) s.tags.push_back(testing_support::make_tag("t" + std::to_string(100 + i), 0.5));
    const auto r = run_inventory(s);
    const double expected = oracle::aloha_singleton_probability(16, 16);
    const double got = r.slots.success_fraction();
    return {std::abs(got - expected) <= 0.02, fmt("success fraction %.4f vs closed form %.4f", got, expected)};
}

Outcome detector() {
    constexpr std::uint64_t kStart = 50, kEnd = 59;
    int true_pos = 0, false_pos = 0, missed = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto s = testing_support::door_pair(seed, 0.5, 120, {{kStart, kEnd, -6.0}});
        const auto trace = run_inventory(s).trace;
        const auto res = detect_activity(trace.for_tag("activity"), trace.for_tag("reference"), {});
        bool hit = false;
        for (const auto& e : res.events) {
            if (e.start_index <= kEnd && e.end_index >= kStart) {
                hit = true;
                ++true_pos;
            } else {
                ++false_pos;
            }
        }
        if (!hit) ++missed;
    }
    const double precision = true_pos + false_pos == 0 ? 0.0 : double(true_pos) / (true_pos + false_pos);
    const double recall = (100.0 - missed) / 100.0;

    int clean = 0;
    DetectorParams strict;
    strict.k_sigma = 4.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto trace = run_inventory(testing_support::door_pair(1000 + seed, 0.5, 200, {})).trace;
        if (detect_activity(trace.for_tag("activity"), trace.for_tag("reference"), strict).events.empty()) ++clean;
    }
    const bool ok = precision == 1.0 && recall == 1.0 && clean >= 99;
    return {ok, fmt("precision %.2f recall %.2f, clean noise seeds %.0f/100", precision, recall, clean)};
}

Outcome orientation() {
    const std::array<std::pair<std::array<double, 3>, Orientation>, 6> cases{{
        {{kGravity, 0, 0}, Orientation::x_up},
        {{-kGravity, 0, 0}, Orientation::x_down},
        {{0, kGravity, 0}, Orientation::y_up},
        {{0, -kGravity, 0}, Orientation::y_down},
        {{0, 0, kGravity}, Orientation::z_up},
        {{0, 0, -kGravity}, Orientation::z_down},
    }};
    int correct = 0;
    for (const auto& [accel, want] : cases) correct += decode_orientation(accel).decoded == want;
    const bool cube = decode_orientation({5, 5, 5}).decoded == Orientation::indeterminate;
    const bool zero = decode_orientation({0, 0, 0}).decoded == Orientation::indeterminate;
    return {correct == 6 && cube && zero,
            fmt("%.0f/6 canonical, (5,5,5) indeterminate %.0f, zero indeterminate %.0f", correct, cube, zero)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    const fs::path dir = fs::temp_directory_path() / "pvtag_acceptance";
    fs::create_directories(dir);
    std::ostringstream sink;
    std::string first, second;
    int rc = 0;
    for (auto* dst : {&first, &second}) {
        const fs::path out = dir / (dst == &first ? "a.csv" : "b.csv");
        rc |= cli::guarded(sink, [&] { cli::cmd_simulate({kScenarios / "door_activity.scn", out}, sink); });
        *dst = slurp(out);
    }
    fs::remove_all(dir);
    const bool ok = rc == 0 && !first.empty() && first == second;
    return {ok, fmt("seed 42, %.0f bytes per run, identical %.0f", double(first.size()), first == second)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"range ratio", range_ratio},
        {"theoretical range", theoretical_range},
        {"calibrated range sweep", measured_range},
        {"PV sizing", pv_sizing},
        {"module voltage gate", module_voltage},
        {"bending factor", bending},
        {"slotted-ALOHA oracle", aloha},
        {"activity detector", detector},
        {"orientation decoding", orientation},
        {"simulation determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("[%s] %zu: %s - %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
