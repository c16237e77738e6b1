#include "pvtag/trace_csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "pvtag/errors.hpp"
#include "pvtag/text_util.hpp"

namespace pvtag {

void write_trace_csv(std::ostream& out, const RssiTrace& trace) {
    out << kTraceCsvHeader << '\n';
    char rssi[64];
    for (const auto& s : trace.samples) {
        rssi[0] = '\0';
        if (s.rssi_dbm) std::snprintf(rssi, sizeof rssi, "%.4f", *s.rssi_dbm);
        out << s.time_index << ',' << s.tag_id << ',' << rssi << ','
            << (s.read_success ? '1' : '0') << ',' << to_string(s.mode) << '\n';
    }
}

RssiTrace read_trace_csv(std::istream& in, std::string_view source) {
    RssiTrace trace;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw ValidationError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != kTraceCsvHeader) {
                fail("expected header '" + std::string(kTraceCsvHeader) + "'");
            }
            continue;
        }
        if (trim(line).empty()) continue;

        const std::vector<std::string_view> f = split(line, ',');
        if (f.size() != 5) fail("expected 5 fields, got " + std::to_string(f.size()));

        RssiSample s;
        const auto t = parse_uint(f[0]);
        if (!t) fail("time_index: expected a non-negative integer, got '" + std::string(f[0]) + "'");
        s.time_index = *t;
        s.tag_id = std::string(f[1]);
        if (s.tag_id.empty()) fail("tag_id must not be empty");
        if (f[3] == "1") {
            s.read_success = true;
        } else if (f[3] != "0") {
            fail("read_success: expected 0 or 1");
        }
        if (!f[2].empty()) {
            const auto v = parse_double(f[2]);
            if (!v || !std::isfinite(*v)) fail("rssi_dbm (dBm): expected a finite number");
            s.rssi_dbm = *v;
        }
        if (s.read_success != s.rssi_dbm.has_value()) {
            fail("rssi_dbm must be present exactly when read_success is 1");
        }
        try {
            s.mode = parse_tag_mode(f[4]);
        } catch (const ValidationError& e) {
            fail(e.what());
        }
        trace.samples.push_back(std::move(s));
    }
    if (line_no == 0) fail("empty file (missing header)");
    return trace;
}

RssiTrace load_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace '" + path.string() + "'");
    return read_trace_csv(in, path.string());
}

void save_trace_csv(const std::filesystem::path& path, const RssiTrace& trace) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write trace '" + path.string() + "'");
    write_trace_csv(out, trace);
    out.flush();
    if (!out) throw IoError("failed writing trace '" + path.string() + "'");
}

}  // namespace pvtag
