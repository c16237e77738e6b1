#include "pvtag/inventory_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "pvtag/errors.hpp"

namespace pvtag {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double TagPlacement::rssi_offset_db(std::uint64_t time_index) const {
    double total = 0.0;
    for (const auto& w : rssi_offsets) {
        if (time_index >= w.start_index && time_index <= w.end_index) total += w.offset_db;
    }
    return total;
}

const TagPlacement* Scenario::find_tag(std::string_view id) const {
    auto it = std::find_if(tags.begin(), tags.end(), [&](const auto& t) { return t.id == id; });
    return it == tags.end() ? nullptr : &*it;
}

const TagPlacement& Scenario::require_tag(std::string_view id) const {
    if (const auto* tag = find_tag(id)) return *tag;
    std::string known;
    for (const auto& t : tags) known += (known.empty() ? "" : ", ") + t.id;
    throw ValidationError("unknown tag id '" + std::string(id) + "' (valid ids: " +
                          (known.empty() ? "none" : known) + ")");
}

void Scenario::validate() const {
    reader.validate();
    env.validate();
    if (q_init < 0 || q_init > kMaxQ) throw ValidationError("q_init must lie in [0, 15]");
    if (!(q_adjust_c >= 0.0 && q_adjust_c <= 1.0)) {
        throw ValidationError("Q adjustment step must lie in [0, 1]");
    }
    if (!(rssi_noise_sigma_db >= 0.0) || !std::isfinite(rssi_noise_sigma_db)) {
        throw ValidationError("RSSI noise sigma must be a finite value >= 0 dB");
    }
    std::set<std::string_view> ids;
    for (const auto& t : tags) {
        if (t.id.empty()) throw ValidationError("tag id must not be empty");
        if (!ids.insert(t.id).second) throw ValidationError("duplicate tag id '" + t.id + "'");
        const double d = t.distance_m();
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw ValidationError("tag '" + t.id + "' must sit at a positive distance from the reader");
        }
        t.rf.validate();
        if (t.pv) t.pv->validate();
        t.loads.validate();
        if (!(t.backscatter_gain > 0.0 && t.backscatter_gain <= 1.0)) {
            throw ValidationError("tag '" + t.id + "' backscatter gain must lie in (0, 1]");
        }
        for (const auto& w : t.rssi_offsets) {
            if (w.start_index > w.end_index || !std::isfinite(w.offset_db)) {
                throw ValidationError("tag '" + t.id + "' has a malformed RSSI offset window");
            }
        }
    }
}

RssiTrace RssiTrace::for_tag(std::string_view id) const {
    RssiTrace out;
    std::copy_if(samples.begin(), samples.end(), std::back_inserter(out.samples),
                 [&](const RssiSample& s) { return s.tag_id == id; });
    return out;
}

std::uint64_t SimRng::below(std::uint64_t n) {
    // 2^64 mod n; draws below it would bias the modulo.
    const std::uint64_t reject = (std::numeric_limits<std::uint64_t>::max() - n + 1) % n;
    std::uint64_t x = engine_();
    while (x < reject) x = engine_();
    return x % n;
}

double SimRng::unit() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double SimRng::gaussian() {
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    const double radius = std::sqrt(-2.0 * std::log(unit()));
    const double angle = 2.0 * std::numbers::pi * unit();
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

TagPowerState tag_state(const Scenario& scenario, const TagPlacement& tag) {
    const double rf_in = forward_link_power(scenario.reader, tag.rf, tag.distance_m()).received_power_w;
    const PvOutput pv = tag.pv ? module_power(*tag.pv, scenario.env) : PvOutput{};
    return evaluate_state(rf_in, pv, tag.rf, tag.loads);
}

namespace {

struct ActiveTag {
    const TagPlacement* tag;
    TagMode mode;
    double base_rssi_dbm;
    std::uint64_t slot = 0;
};

}  // namespace

InventoryResult run_inventory(const Scenario& scenario) {
    scenario.validate();
    InventoryResult result;

    std::vector<const TagPlacement*> ordered;
    for (const auto& t : scenario.tags) {
        ordered.push_back(&t);
        result.read_counts[t.id] = 0;
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return a->id < b->id; });

    std::vector<ActiveTag> active;
    for (const auto* t : ordered) {
        const TagPowerState state = tag_state(scenario, *t);
        if (!state.powered()) continue;
        active.push_back({t, state.mode,
                          reverse_link_rssi(scenario.reader, t->rf, t->distance_m(),
                                            t->backscatter_gain)});
    }
    if (active.empty()) return result;

    SimRng rng(scenario.seed);
    double q_float = scenario.q_init;
    std::vector<std::uint32_t> occupancy;

    for (std::uint64_t round = 0; round < scenario.rounds; ++round) {
        const int q = static_cast<int>(std::lround(q_float));
        const std::uint64_t frame = std::uint64_t{1} << q;
        occupancy.assign(frame, 0);
        for (auto& a : active) {
            a.slot = rng.below(frame);
            ++occupancy[a.slot];
        }

        for (const auto& a : active) {
            RssiSample s;
            s.time_index = round;
            s.tag_id = a.tag->id;
            s.mode = a.mode;
            s.read_success = occupancy[a.slot] == 1;
            if (s.read_success) {
                double rssi = a.base_rssi_dbm + a.tag->rssi_offset_db(round);
                if (scenario.rssi_noise_sigma_db > 0.0) {
                    rssi += scenario.rssi_noise_sigma_db * rng.gaussian();
                }
                s.rssi_dbm = rssi;
                ++result.read_counts[a.tag->id];
            }
            result.trace.samples.push_back(std::move(s));
        }

        for (const auto n : occupancy) {
            if (n == 0) {
                ++result.slots.empties;
                q_float = std::max(0.0, q_float - scenario.q_adjust_c);
            } else if (n == 1) {
                ++result.slots.singletons;
            } else {
                ++result.slots.collisions;
                q_float = std::min(static_cast<double>(kMaxQ), q_float + scenario.q_adjust_c);
            }
        }
        result.slots.slots += frame;
    }
    return result;
}

std::vector<SweepPoint> range_sweep(const Scenario& scenario, std::string_view tag_id,
                                    const std::vector<double>& distances_m) {
    const TagPlacement& original = scenario.require_tag(tag_id);
    std::vector<SweepPoint> points;
    if (distances_m.empty()) return points;

    Scenario probe = scenario;
    probe.rounds = std::max<std::uint64_t>(scenario.rounds, 1);
    auto& moved = *std::find_if(probe.tags.begin(), probe.tags.end(),
                                [&](const auto& t) { return t.id == tag_id; });
    const double r0 = original.distance_m();
    const Vec3 bearing{original.position_m.x / r0, original.position_m.y / r0,
                       original.position_m.z / r0};

    for (const double d : distances_m) {
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw DomainError("sweep distances must be positive");
        }
        moved.position_m = {bearing.x * d, bearing.y * d, bearing.z * d};
        const InventoryResult run = run_inventory(probe);
        points.push_back({d, tag_state(probe, moved).mode,
                          static_cast<double>(run.read_counts.at(moved.id)) /
                              static_cast<double>(probe.rounds)});
    }
    return points;
}

}  // namespace pvtag
