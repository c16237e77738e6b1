#pragma once

// Slot-level EPC Gen 2 style inventory over a static scenario. One inventory
// round (a frame of 2^Q slots) per time index.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pvtag/harvester.hpp"
#include "pvtag/power_model.hpp"
#include "pvtag/rf_link.hpp"

namespace pvtag {

inline constexpr int kMaxQ = 15;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
};

/// Extra reader-side RSSI offset applied to one tag over [start, end].
struct RssiOffsetWindow {
    std::uint64_t start_index = 0;
    std::uint64_t end_index = 0;
    double offset_db = 0.0;
};

struct TagPlacement {
    std::string id;
    Vec3 position_m;  // reader antenna sits at the origin
    TagRfProfile rf = TagRfProfile::make();
    std::optional<PvModuleSpec> pv;
    LoadProfile loads;
    double backscatter_gain = 1.0;
    std::vector<RssiOffsetWindow> rssi_offsets;

    double distance_m() const { return position_m.norm(); }
    double rssi_offset_db(std::uint64_t time_index) const;
};

struct Scenario {
    ReaderProfile reader = ReaderProfile::make(1.0, 8.5, 915e6);
    std::vector<TagPlacement> tags;
    IlluminationEnv env = IlluminationEnv::indoor();
    std::uint64_t rounds = 100;
    int q_init = 4;
    /// Q-algorithm step per empty/collided slot; 0 holds Q fixed.
    double q_adjust_c = 0.2;
    double rssi_noise_sigma_db = 0.0;
    std::uint64_t seed = 1;

    const TagPlacement* find_tag(std::string_view id) const;
    /// Like find_tag, but throws ValidationError listing the known ids.
    const TagPlacement& require_tag(std::string_view id) const;
    void validate() const;
};

struct RssiSample {
    std::uint64_t time_index = 0;
    std::string tag_id;
    std::optional<double> rssi_dbm;  // present iff read_success
    bool read_success = false;
    TagMode mode = TagMode::off;

    bool operator==(const RssiSample&) const = default;
};

struct RssiTrace {
    std::vector<RssiSample> samples;

    RssiTrace for_tag(std::string_view id) const;
    bool operator==(const RssiTrace&) const = default;
};

struct SlotStats {
    std::uint64_t slots = 0;
    std::uint64_t singletons = 0;
    std::uint64_t collisions = 0;
    std::uint64_t empties = 0;

    double success_fraction() const {
        return slots == 0 ? 0.0 : static_cast<double>(singletons) / static_cast<double>(slots);
    }
};

struct InventoryResult {
    std::map<std::string, std::uint64_t> read_counts;  // every tag, powered or not
    RssiTrace trace;  // powered tags only, ordered by (time, tag id)
    SlotStats slots;
};

/// Power state of a tag at its scenario position under the scenario light.
TagPowerState tag_state(const Scenario& scenario, const TagPlacement& tag);

InventoryResult run_inventory(const Scenario& scenario);

struct SweepPoint {
    double distance_m = 0.0;
    TagMode mode = TagMode::off;
    double read_probability = 0.0;
};

/// Moves `tag_id` along its bearing to each distance and measures the read
/// success rate over the scenario's rounds (at least one).
std::vector<SweepPoint> range_sweep(const Scenario& scenario, std::string_view tag_id,
                                    const std::vector<double>& distances_m);

/// Portable seeded generator: identical draws on every standard library.
class SimRng {
public:
    explicit SimRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Uniform double in (0, 1].
    double unit();
    double gaussian();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

}  // namespace pvtag
