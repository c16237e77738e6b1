#pragma once

// Reference computations for the test suites. Each one takes a different
// route from the library code it checks (dB-domain sums instead of linear
// products, enumeration instead of closed forms, plain scans instead of the
// run-length detector) and shares no code with src/.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline double fspl_db(double distance_m, double frequency_hz) {
    const double wavelength = 299'792'458.0 / frequency_hz;
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m / wavelength);
}

/// Forward link as a dB budget: EIRP + tag gain + tau - FSPL.
inline double forward_dbm(double tx_dbm, double reader_dbi, double tag_dbi, double tau,
                          double distance_m, double frequency_hz) {
    return tx_dbm + reader_dbi + tag_dbi + 10.0 * std::log10(tau) -
           fspl_db(distance_m, frequency_hz);
}

/// Range where the dB budget margin hits zero: FSPL(d) = budget - threshold.
inline double range_m(double tx_dbm, double reader_dbi, double tag_dbi, double tau,
                      double threshold_dbm, double frequency_hz) {
    const double allowed_fspl =
        tx_dbm + reader_dbi + tag_dbi + 10.0 * std::log10(tau) - threshold_dbm;
    const double wavelength = 299'792'458.0 / frequency_hz;
    return std::pow(10.0, allowed_fspl / 20.0) * wavelength / (4.0 * std::numbers::pi);
}

/// Round trip: forward budget, re-radiated through tag and reader gains,
/// second FSPL, then backscatter loss.
inline double reverse_dbm(double tx_dbm, double reader_dbi, double tag_dbi, double tau,
                          double distance_m, double frequency_hz, double backscatter_gain) {
    return forward_dbm(tx_dbm, reader_dbi, tag_dbi, tau, distance_m, frequency_hz) +
           tag_dbi + reader_dbi + 10.0 * std::log10(tau) - fspl_db(distance_m, frequency_hz) +
           10.0 * std::log10(backscatter_gain);
}

/// Probability that one given slot holds exactly one of n tags in a frame of
/// m slots, summed over which tag it is: n * (1/m) * (1 - 1/m)^(n-1).
inline double aloha_singleton_probability(int tags, int slots) {
    return tags * (1.0 / slots) * std::pow(1.0 - 1.0 / slots, tags - 1);
}

/// Monte Carlo estimate of the same quantity with an unrelated generator.
inline double aloha_singleton_monte_carlo(int tags, int slots, int frames, std::uint32_t seed) {
    std::minstd_rand gen(seed);
    std::uniform_int_distribution<int> pick(0, slots - 1);
    std::vector<int> occupancy(static_cast<std::size_t>(slots));
    long singletons = 0;
    for (int f = 0; f < frames; ++f) {
        std::fill(occupancy.begin(), occupancy.end(), 0);
        for (int t = 0; t < tags; ++t) ++occupancy[static_cast<std::size_t>(pick(gen))];
        for (int n : occupancy) singletons += (n == 1);
    }
    return static_cast<double>(singletons) / (static_cast<double>(frames) * slots);
}

/// Flags each sample above threshold, then reports every index that belongs
/// to a flagged stretch of at least `min_run` samples.
inline std::vector<bool> brute_force_event_mask(const std::vector<double>& delta,
                                                std::size_t calib, double k, std::size_t min_run,
                                                double floor_db) {
    double mean = 0.0;
    for (std::size_t i = 0; i < calib; ++i) mean += delta[i];
    mean /= static_cast<double>(calib);
    double var = 0.0;
    for (std::size_t i = 0; i < calib; ++i) var += (delta[i] - mean) * (delta[i] - mean);
    const double sigma = std::sqrt(var / static_cast<double>(calib - 1));
    const double thr = k * (sigma > floor_db ? sigma : floor_db);

    std::vector<bool> hot(delta.size());
    for (std::size_t i = 0; i < delta.size(); ++i) hot[i] = std::fabs(delta[i] - mean) > thr;
    std::vector<bool> mask(delta.size(), false);
    for (std::size_t i = 0; i < delta.size(); ++i) {
        std::size_t left = i, right = i;
        if (!hot[i]) continue;
        while (left > 0 && hot[left - 1]) --left;
        while (right + 1 < delta.size() && hot[right + 1]) ++right;
        mask[i] = (right - left + 1) >= min_run;
    }
    return mask;
}

}  // namespace oracle
