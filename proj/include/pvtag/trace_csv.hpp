#pragma once

// TraceCsv: `time_index,tag_id,rssi_dbm,read_success,mode`, one row per
// sample, RSSI with four decimals and left empty for failed reads.

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "pvtag/inventory_sim.hpp"

namespace pvtag {

inline constexpr std::string_view kTraceCsvHeader = "time_index,tag_id,rssi_dbm,read_success,mode";

void write_trace_csv(std::ostream& out, const RssiTrace& trace);

/// Throws ValidationError naming the source and line on malformed input.
RssiTrace read_trace_csv(std::istream& in, std::string_view source = "<trace>");

/// Throws IoError when the file cannot be opened.
RssiTrace load_trace_csv(const std::filesystem::path& path);
void save_trace_csv(const std::filesystem::path& path, const RssiTrace& trace);

}  // namespace pvtag
