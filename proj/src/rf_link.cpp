#include "pvtag/rf_link.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pvtag/errors.hpp"

namespace pvtag {

namespace {

double path_gain(const ReaderProfile& reader, double distance_m) {
    const double ratio = reader.wavelength_m() / (4.0 * std::numbers::pi * distance_m);
    return ratio * ratio;
}

void require_distance(double distance_m) {
    if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
        throw DomainError("distance must be a positive finite number of meters, got " +
                          std::to_string(distance_m));
    }
}

}  // namespace

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double watts_to_dbm(double watts) {
    if (!(watts > 0.0)) {
        throw DomainError("cannot express non-positive power " + std::to_string(watts) +
                          " W in dBm");
    }
    return 10.0 * std::log10(watts / 1e-3);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double ratio) {
    if (!(ratio > 0.0)) {
        throw DomainError("cannot express non-positive ratio in dB");
    }
    return 10.0 * std::log10(ratio);
}

ReaderProfile ReaderProfile::make(double transmit_power_w, double antenna_gain_dbi,
                                  double carrier_frequency_hz, bool allow_over_limit,
                                  bool allow_out_of_band) {
    ReaderProfile r;
    r.transmit_power_w = transmit_power_w;
    r.antenna_gain_dbi = antenna_gain_dbi;
    r.antenna_gain = db_to_linear(antenna_gain_dbi);
    r.carrier_frequency_hz = carrier_frequency_hz;
    r.allow_over_limit = allow_over_limit;
    r.allow_out_of_band = allow_out_of_band;
    r.validate();
    return r;
}

void ReaderProfile::validate() const {
    if (!(transmit_power_w > 0.0) || !std::isfinite(transmit_power_w)) {
        throw ValidationError("reader transmit power must be > 0 W");
    }
    if (transmit_power_w > kRegulatoryPowerCapW && !allow_over_limit) {
        throw ValidationError("reader transmit power " + std::to_string(transmit_power_w) +
                              " W exceeds the 1 W regulatory cap (set allow_over_limit to override)");
    }
    if (!(antenna_gain > 0.0) || !std::isfinite(antenna_gain)) {
        throw ValidationError("reader antenna gain must be > 0 (linear)");
    }
    if (std::abs(linear_to_db(antenna_gain) - antenna_gain_dbi) > 1e-9) {
        throw ValidationError("reader antenna gain: linear and dBi forms disagree");
    }
    if (!(carrier_frequency_hz > 0.0) || !std::isfinite(carrier_frequency_hz)) {
        throw ValidationError("carrier frequency must be > 0 Hz");
    }
    if (!allow_out_of_band &&
        (carrier_frequency_hz < kBandLowHz || carrier_frequency_hz > kBandHighHz)) {
        throw ValidationError("carrier frequency " + std::to_string(carrier_frequency_hz / 1e6) +
                              " MHz outside the 860-960 MHz UHF RFID band");
    }
}

TagRfProfile TagRfProfile::make(double antenna_gain_dbi, double transmission_coefficient,
                                double passive_sensitivity_dbm,
                                double assisted_sensitivity_dbm) {
    TagRfProfile t;
    t.antenna_gain_dbi = antenna_gain_dbi;
    t.antenna_gain = db_to_linear(antenna_gain_dbi);
    t.transmission_coefficient = transmission_coefficient;
    t.passive_sensitivity_w = dbm_to_watts(passive_sensitivity_dbm);
    t.assisted_sensitivity_w = dbm_to_watts(assisted_sensitivity_dbm);
    t.validate();
    return t;
}

void TagRfProfile::validate() const {
    if (!(antenna_gain > 0.0) || !std::isfinite(antenna_gain)) {
        throw ValidationError("tag antenna gain must be > 0 (linear)");
    }
    if (std::abs(linear_to_db(antenna_gain) - antenna_gain_dbi) > 1e-9) {
        throw ValidationError("tag antenna gain: linear and dBi forms disagree");
    }
    if (!(transmission_coefficient >= 0.0 && transmission_coefficient <= 1.0)) {
        throw ValidationError("transmission coefficient must lie in [0, 1]");
    }
    if (!(passive_sensitivity_w > 0.0) || !(assisted_sensitivity_w > 0.0)) {
        throw ValidationError("IC sensitivities must be > 0 W");
    }
    if (assisted_sensitivity_w > passive_sensitivity_w) {
        throw ValidationError(
            "assisted sensitivity must not exceed passive sensitivity (external power never "
            "raises the wake threshold)");
    }
}

LinkResult forward_link_power(const ReaderProfile& reader, const TagRfProfile& tag,
                              double distance_m) {
    require_distance(distance_m);
    LinkResult out;
    out.distance_m = distance_m;
    out.received_power_w = reader.transmit_power_w * tag.antenna_gain * reader.antenna_gain *
                           tag.transmission_coefficient * path_gain(reader, distance_m);
    out.received_power_dbm = out.received_power_w > 0.0
                                 ? watts_to_dbm(out.received_power_w)
                                 : -std::numeric_limits<double>::infinity();
    return out;
}

std::optional<double> max_read_range(const ReaderProfile& reader, const TagRfProfile& tag,
                                     double min_ic_power_w) {
    if (!(min_ic_power_w > 0.0)) {
        throw DomainError("minimum IC power must be > 0 W");
    }
    const double coupled = reader.transmit_power_w * tag.antenna_gain * reader.antenna_gain *
                           tag.transmission_coefficient;
    if (!(coupled > 0.0)) {
        return std::nullopt;
    }
    return reader.wavelength_m() / (4.0 * std::numbers::pi) * std::sqrt(coupled / min_ic_power_w);
}

double transmission_for_range(const ReaderProfile& reader, const TagRfProfile& tag,
                              double min_ic_power_w, double range_m) {
    require_distance(range_m);
    if (!(min_ic_power_w > 0.0)) {
        throw DomainError("minimum IC power must be > 0 W");
    }
    const double tau = min_ic_power_w / (reader.transmit_power_w * tag.antenna_gain *
                                         reader.antenna_gain * path_gain(reader, range_m));
    if (tau > 1.0) {
        throw DomainError("range " + std::to_string(range_m) +
                          " m is unreachable even with a perfectly matched tag");
    }
    return tau;
}

double reverse_link_rssi(const ReaderProfile& reader, const TagRfProfile& tag,
                         double distance_m, double backscatter_gain) {
    require_distance(distance_m);
    if (!(backscatter_gain > 0.0 && backscatter_gain <= 1.0)) {
        throw DomainError("backscatter gain must lie in (0, 1]");
    }
    const double gains = reader.antenna_gain * tag.antenna_gain * tag.transmission_coefficient;
    const double path = path_gain(reader, distance_m);
    const double watts = reader.transmit_power_w * gains * gains * path * path * backscatter_gain;
    return watts > 0.0 ? watts_to_dbm(watts) : -std::numeric_limits<double>::infinity();
}

}  // namespace pvtag
