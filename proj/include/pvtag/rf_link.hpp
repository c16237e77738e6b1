#pragma once

// Forward/reverse UHF link budget for backscatter tags.

#include <optional>

namespace pvtag {

inline constexpr double kSpeedOfLight = 299'792'458.0;
inline constexpr double kRegulatoryPowerCapW = 1.0;
inline constexpr double kBandLowHz = 860e6;
inline constexpr double kBandHighHz = 960e6;

double dbm_to_watts(double dbm);
/// Throws DomainError for non-positive input.
double watts_to_dbm(double watts);
double db_to_linear(double db);
double linear_to_db(double ratio);

struct ReaderProfile {
    double transmit_power_w = 1.0;
    double antenna_gain = 1.0;      // linear
    double antenna_gain_dbi = 0.0;  // same gain, dBi
    double carrier_frequency_hz = 915e6;
    bool allow_over_limit = false;   // permits transmit power above 1 W
    bool allow_out_of_band = false;  // permits carriers outside 860-960 MHz

    static ReaderProfile make(double transmit_power_w, double antenna_gain_dbi,
                              double carrier_frequency_hz,
                              bool allow_over_limit = false,
                              bool allow_out_of_band = false);

    double wavelength_m() const { return kSpeedOfLight / carrier_frequency_hz; }
    void validate() const;
};

struct TagRfProfile {
    double antenna_gain = 1.0;  // linear
    double antenna_gain_dbi = 0.0;
    double transmission_coefficient = 1.0;
    double passive_sensitivity_w = 0.0;
    double assisted_sensitivity_w = 0.0;

    /// Defaults: half-wave dipole gain, perfect match, -9 dBm passive and
    /// -23 dBm assisted wake thresholds.
    static TagRfProfile make(double antenna_gain_dbi = 2.15,
                             double transmission_coefficient = 1.0,
                             double passive_sensitivity_dbm = -9.0,
                             double assisted_sensitivity_dbm = -23.0);

    void validate() const;
};

struct LinkResult {
    double received_power_w = 0.0;
    double received_power_dbm = 0.0;  // -inf when nothing couples
    double distance_m = 0.0;
};

/// Power delivered to the tag IC at `distance_m`:
///   P_T * G_tag * G_reader * tau * (lambda / (4 pi d))^2
LinkResult forward_link_power(const ReaderProfile& reader, const TagRfProfile& tag,
                              double distance_m);

/// Distance at which the forward link delivers exactly `min_ic_power_w`.
/// Returns nullopt when the tag cannot couple any power (tau == 0).
std::optional<double> max_read_range(const ReaderProfile& reader, const TagRfProfile& tag,
                                     double min_ic_power_w);

/// Transmission coefficient that places the wake threshold `min_ic_power_w`
/// exactly at `range_m`. Throws DomainError if that would need tau > 1.
double transmission_for_range(const ReaderProfile& reader, const TagRfProfile& tag,
                              double min_ic_power_w, double range_m);

/// Reader-side RSSI of the backscattered reply, symmetric-path radar model:
///   P_T * (G_reader * G_tag)^2 * tau^2 * (lambda / (4 pi d))^4 * backscatter_gain
double reverse_link_rssi(const ReaderProfile& reader, const TagRfProfile& tag,
                         double distance_m, double backscatter_gain);

}  // namespace pvtag
