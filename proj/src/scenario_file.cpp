#include "pvtag/scenario_file.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <vector>

#include "pvtag/errors.hpp"
#include "pvtag/text_util.hpp"

namespace pvtag {

namespace {

struct Entry {
    std::string key;
    std::string value;
    std::size_t line = 0;
    bool used = false;
};

class KeyTable {
public:
    explicit KeyTable(std::string source) : source_(std::move(source)) {}

    void add(std::string key, std::string value, std::size_t line) {
        if (auto it = index_.find(key); it != index_.end()) {
            throw ValidationError(where(line) + "key '" + key + "' repeats line " +
                                  std::to_string(entries_[it->second].line));
        }
        index_.emplace(key, entries_.size());
        entries_.push_back({std::move(key), std::move(value), line, false});
    }

    const Entry* take(const std::string& key) {
        auto it = index_.find(key);
        if (it == index_.end()) return nullptr;
        entries_[it->second].used = true;
        return &entries_[it->second];
    }

    [[noreturn]] void fail(const Entry& e, std::string_view unit, const std::string& what) const {
        std::string msg = where(e.line) + e.key;
        if (!unit.empty()) msg += " (" + std::string(unit) + ")";
        throw ValidationError(msg + ": " + what);
    }

    std::optional<double> number_opt(const std::string& key, std::string_view unit) {
        const Entry* e = take(key);
        if (!e) return std::nullopt;
        const auto v = parse_double(e->value);
        if (!v || !std::isfinite(*v)) fail(*e, unit, "expected a number, got '" + e->value + "'");
        return v;
    }

    double number(const std::string& key, std::string_view unit, double fallback) {
        return number_opt(key, unit).value_or(fallback);
    }

    double required_number(const std::string& key, std::string_view unit) {
        if (const auto v = number_opt(key, unit)) return *v;
        throw ValidationError(source_ + ": missing required key '" + key + "' (" +
                              std::string(unit) + ")");
    }

    std::uint64_t count(const std::string& key, std::uint64_t fallback) {
        const Entry* e = take(key);
        if (!e) return fallback;
        const auto v = parse_uint(e->value);
        if (!v) fail(*e, "count", "expected a non-negative integer, got '" + e->value + "'");
        return *v;
    }

    bool flag(const std::string& key, bool fallback) {
        const Entry* e = take(key);
        if (!e) return fallback;
        if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
        if (e->value == "false" || e->value == "0" || e->value == "no") return false;
        fail(*e, "", "expected true or false, got '" + e->value + "'");
    }

    /// Exactly one of two unit spellings of the same quantity, scaled to base units.
    std::optional<double> either(const std::string& key_a, std::string_view unit_a, double scale_a,
                                 const std::string& key_b, std::string_view unit_b, double scale_b) {
        const auto a = number_opt(key_a, unit_a);
        const auto b = number_opt(key_b, unit_b);
        if (a && b) {
            throw ValidationError(source_ + ": set only one of '" + key_a + "' and '" + key_b + "'");
        }
        if (a) return *a * scale_a;
        if (b) return *b * scale_b;
        return std::nullopt;
    }

    /// Distinct second-level names under `prefix` (e.g. tag ids), in file order.
    std::vector<std::string> children(std::string_view prefix) const {
        std::vector<std::string> names;
        for (const auto& e : entries_) {
            if (e.key.rfind(prefix, 0) != 0) continue;
            const auto rest = std::string_view(e.key).substr(prefix.size());
            const auto dot = rest.find('.');
            if (dot == std::string_view::npos || dot == 0) continue;
            std::string name(rest.substr(0, dot));
            if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
        }
        return names;
    }

    bool any_with_prefix(std::string_view prefix) const {
        return std::any_of(entries_.begin(), entries_.end(),
                           [&](const Entry& e) { return e.key.rfind(prefix, 0) == 0; });
    }

    void reject_unused() const {
        for (const auto& e : entries_) {
            if (!e.used) throw ValidationError(where(e.line) + "unknown key '" + e.key + "'");
        }
    }

    const std::string& source() const { return source_; }

private:
    std::string where(std::size_t line) const { return source_ + ":" + std::to_string(line) + ": "; }

    std::string source_;
    std::vector<Entry> entries_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

bool valid_name(std::string_view id) {
    return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

template <typename Fn>
auto with_context(const std::string& context, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw ValidationError(context + ": " + e.what());
    }
}

Vec3 parse_position(KeyTable& keys, const std::string& key) {
    const Entry* e = keys.take(key);
    if (!e) throw ValidationError(keys.source() + ": missing required key '" + key + "' (m)");
    const auto parts = split(e->value, ',');
    std::vector<double> xyz;
    for (auto p : parts) {
        const auto v = parse_double(p);
        if (!v || !std::isfinite(*v)) break;
        xyz.push_back(*v);
    }
    if (xyz.size() != 3 || parts.size() != 3) {
        keys.fail(*e, "m", "expected 'x, y, z', got '" + e->value + "'");
    }
    return {xyz[0], xyz[1], xyz[2]};
}

std::vector<RssiOffsetWindow> parse_offsets(KeyTable& keys, const std::string& key) {
    std::vector<RssiOffsetWindow> windows;
    const Entry* e = keys.take(key);
    if (!e || trim(e->value).empty()) return windows;
    for (auto item : split(e->value, ',')) {
        const auto f = split(trim(item), ':');
        std::optional<std::uint64_t> start, end;
        std::optional<double> offset;
        if (f.size() == 3) {
            start = parse_uint(f[0]);
            end = parse_uint(f[1]);
            offset = parse_double(f[2]);
        }
        if (!start || !end || !offset) {
            keys.fail(*e, "dB", "expected 'start:end:offset' items, got '" + std::string(trim(item)) + "'");
        }
        windows.push_back({*start, *end, *offset});
    }
    return windows;
}

BendRadius parse_bend(KeyTable& keys, const std::string& key) {
    const Entry* e = keys.take(key);
    if (!e || e->value == "flat") return kFlat;
    const auto v = parse_double(e->value);
    if (!v) keys.fail(*e, "mm", "expected a radius or 'flat', got '" + e->value + "'");
    return *v;
}

TagPlacement parse_tag(KeyTable& keys, const std::string& id) {
    const std::string p = "tag." + id + ".";
    TagPlacement tag;
    tag.id = id;
    tag.position_m = parse_position(keys, p + "position_m");

    const double gain = keys.number(p + "gain_dbi", "dBi", 2.15);
    const double tau = keys.number(p + "tau", "linear", 1.0);
    const double passive = keys.number(p + "passive_sens_dbm", "dBm", -9.0);
    const double assisted = keys.number(p + "assisted_sens_dbm", "dBm", -23.0);
    tag.rf = with_context(p.substr(0, p.size() - 1),
                          [&] { return TagRfProfile::make(gain, tau, passive, assisted); });
    tag.backscatter_gain = keys.number(p + "backscatter_gain", "linear", 1.0);

    if (keys.any_with_prefix(p + "pv.")) {
        PvModuleSpec pv;
        pv.cell.efficiency = keys.number(p + "pv.efficiency", "fraction", 0.13);
        pv.cell.vmpp_v = keys.number(p + "pv.vmpp_v", "V", 0.88);
        pv.cell.active_area_cm2 = keys.number(p + "pv.cell_area_cm2", "cm2", 1.0);
        pv.series_count = static_cast<int>(keys.count(p + "pv.series", 1));
        pv.parallel_count = static_cast<int>(keys.count(p + "pv.parallel", 1));
        pv.bend_radius_mm = parse_bend(keys, p + "pv.bend_mm");
        tag.pv = pv;
    }

    tag.loads.ic_idle_w = keys.number(p + "ic_idle_uw", "uW", 10.0) * 1e-6;
    for (const auto& name : keys.children(p + "load.")) {
        if (!valid_name(name)) {
            throw ValidationError(keys.source() + ": invalid load name '" + name + "' on tag '" + id + "'");
        }
        const std::string lp = p + "load." + name + ".";
        tag.loads.loads.push_back({name, keys.required_number(lp + "draw_uw", "uW") * 1e-6,
                                   keys.required_number(lp + "min_voltage_v", "V")});
    }
    tag.rssi_offsets = parse_offsets(keys, p + "rssi_offsets_db");
    return tag;
}

std::string fmt(double v) { return format_exact(v); }

// Values that went through a unit conversion are printed at 15 significant
// digits so 100 uW/cm2 dumps as 100, not 99.99999999999997.
std::string fmt_converted(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
    return std::string(buf, ptr);
}

}  // namespace

ScenarioConfig parse_scenario(std::istream& in, std::string_view source) {
    KeyTable keys{std::string(source)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError(std::string(source) + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
        }
        keys.add(std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1))),
                 line_no);
    }

    ScenarioConfig cfg;
    Scenario& sc = cfg.scenario;

    const auto power_dbm = keys.number_opt("reader.power_dbm", "dBm");
    const auto power_w = keys.number_opt("reader.power_w", "W");
    if (power_dbm && power_w) {
        throw ValidationError(keys.source() + ": set only one of 'reader.power_dbm' and 'reader.power_w'");
    }
    const double transmit_w = power_w ? *power_w : dbm_to_watts(power_dbm.value_or(30.0));
    const double reader_gain = keys.number("reader.gain_dbi", "dBi", 8.5);
    const double freq_hz = keys.number("reader.frequency_mhz", "MHz", 915.0) * 1e6;
    const bool over_limit = keys.flag("reader.allow_over_limit", false);
    const bool out_of_band = keys.flag("reader.allow_out_of_band", false);
    sc.reader = with_context(keys.source() + ": reader", [&] {
        return ReaderProfile::make(transmit_w, reader_gain, freq_hz, over_limit, out_of_band);
    });

    if (const Entry* e = keys.take("env.class")) {
        sc.env.env_class = with_context(keys.source() + ": env.class",
                                        [&] { return parse_env_class(e->value); });
    }
    sc.env.irradiance_w_cm2 =
        keys.either("env.irradiance_uw_cm2", "uW/cm2", 1e-6, "env.irradiance_mw_cm2", "mW/cm2", 1e-3)
            .value_or(default_irradiance_w_cm2(sc.env.env_class));
    sc.env.indoor_efficiency = keys.number_opt("env.indoor_efficiency", "fraction");

    sc.rounds = keys.count("sim.rounds", 100);
    sc.q_init = static_cast<int>(std::min<std::uint64_t>(keys.count("sim.q_init", 4), 1000));
    sc.q_adjust_c = keys.number("sim.q_adjust_c", "slots", 0.2);
    sc.rssi_noise_sigma_db = keys.number("sim.rssi_noise_db", "dB", 0.0);
    sc.seed = keys.count("sim.seed", 1);

    cfg.detector.calib_window = keys.count("detector.calib_window", cfg.detector.calib_window);
    cfg.detector.k_sigma = keys.number("detector.k_sigma", "sigma", cfg.detector.k_sigma);
    cfg.detector.min_run = keys.count("detector.min_run", cfg.detector.min_run);
    cfg.detector.sigma_floor_db = keys.number("detector.sigma_floor_db", "dB", cfg.detector.sigma_floor_db);

    for (const auto& id : keys.children("tag.")) {
        if (!valid_name(id)) {
            throw ValidationError(keys.source() + ": invalid tag id '" + id +
                                  "' (letters, digits, '_' and '-' only)");
        }
        sc.tags.push_back(parse_tag(keys, id));
    }
    std::sort(sc.tags.begin(), sc.tags.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

    keys.reject_unused();
    with_context(keys.source(), [&] {
        sc.validate();
        cfg.detector.validate();
        return 0;
    });
    return cfg;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario '" + path.string() + "'");
    return parse_scenario(in, path.string());
}

std::string dump_normalized(const ScenarioConfig& cfg) {
    const Scenario& sc = cfg.scenario;
    std::ostringstream out;
    auto kv = [&](const std::string& key, const std::string& value) {
        out << key << " = " << value << '\n';
    };
    auto flag = [](bool b) { return std::string(b ? "true" : "false"); };

    kv("reader.power_w", fmt(sc.reader.transmit_power_w));
    kv("reader.gain_dbi", fmt(sc.reader.antenna_gain_dbi));
    kv("reader.frequency_mhz", fmt_converted(sc.reader.carrier_frequency_hz / 1e6));
    kv("reader.allow_over_limit", flag(sc.reader.allow_over_limit));
    kv("reader.allow_out_of_band", flag(sc.reader.allow_out_of_band));
    kv("env.class", std::string(to_string(sc.env.env_class)));
    kv("env.irradiance_uw_cm2", fmt_converted(sc.env.irradiance_w_cm2 * 1e6));
    if (sc.env.indoor_efficiency) kv("env.indoor_efficiency", fmt(*sc.env.indoor_efficiency));
    kv("sim.rounds", std::to_string(sc.rounds));
    kv("sim.q_init", std::to_string(sc.q_init));
    kv("sim.q_adjust_c", fmt(sc.q_adjust_c));
    kv("sim.rssi_noise_db", fmt(sc.rssi_noise_sigma_db));
    kv("sim.seed", std::to_string(sc.seed));
    kv("detector.calib_window", std::to_string(cfg.detector.calib_window));
    kv("detector.k_sigma", fmt(cfg.detector.k_sigma));
    kv("detector.min_run", std::to_string(cfg.detector.min_run));
    kv("detector.sigma_floor_db", fmt(cfg.detector.sigma_floor_db));

    std::vector<const TagPlacement*> tags;
    for (const auto& t : sc.tags) tags.push_back(&t);
    std::sort(tags.begin(), tags.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    for (const auto* t : tags) {
        const std::string p = "tag." + t->id + ".";
        kv(p + "position_m", fmt(t->position_m.x) + ", " + fmt(t->position_m.y) + ", " +
                                 fmt(t->position_m.z));
        kv(p + "gain_dbi", fmt(t->rf.antenna_gain_dbi));
        kv(p + "tau", fmt(t->rf.transmission_coefficient));
        kv(p + "passive_sens_dbm", fmt_converted(watts_to_dbm(t->rf.passive_sensitivity_w)));
        kv(p + "assisted_sens_dbm", fmt_converted(watts_to_dbm(t->rf.assisted_sensitivity_w)));
        kv(p + "backscatter_gain", fmt(t->backscatter_gain));
        kv(p + "ic_idle_uw", fmt_converted(t->loads.ic_idle_w * 1e6));
        if (t->pv) {
            kv(p + "pv.efficiency", fmt(t->pv->cell.efficiency));
            kv(p + "pv.vmpp_v", fmt(t->pv->cell.vmpp_v));
            kv(p + "pv.cell_area_cm2", fmt(t->pv->cell.active_area_cm2));
            kv(p + "pv.series", std::to_string(t->pv->series_count));
            kv(p + "pv.parallel", std::to_string(t->pv->parallel_count));
            kv(p + "pv.bend_mm", t->pv->bend_radius_mm ? fmt(*t->pv->bend_radius_mm) : "flat");
        }
        for (const auto& l : t->loads.loads) {
            kv(p + "load." + l.name + ".draw_uw", fmt_converted(l.draw_w * 1e6));
            kv(p + "load." + l.name + ".min_voltage_v", fmt(l.min_voltage_v));
        }
        if (!t->rssi_offsets.empty()) {
            std::string windows;
            for (const auto& w : t->rssi_offsets) {
                if (!windows.empty()) windows += ", ";
                windows += std::to_string(w.start_index) + ":" + std::to_string(w.end_index) + ":" +
                           fmt(w.offset_db);
            }
            kv(p + "rssi_offsets_db", windows);
        }
    }
    return out.str();
}

}  // namespace pvtag
