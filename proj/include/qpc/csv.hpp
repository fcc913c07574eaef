#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "qpc/engine.hpp"

namespace qpc {

inline constexpr const char* kCsvHeader = "sweep_kind,setting,rate_per_min,rate_d2a,rate_d2b,shots,seed";

/// Writes a curve in the fixed schema with six-decimal formatting. Analytic
/// records carry shots = 0. The primary rate column honors the channel selection;
/// the breakdown columns always carry both channels.
inline void emit_csv(const Curve& curve, std::ostream& os, ChannelSelect sel = ChannelSelect::Both) {
    os << kCsvHeader << "\n";
    char buf[256];
    for (const CountsRecord& r : curve.points) {
        std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.6f,%.6f,%llu,%llu", to_string(curve.kind),
                      r.sweep_value, selected_rate(r, sel), r.rate_d2a, r.rate_d2b,
                      static_cast<unsigned long long>(r.shots),
                      static_cast<unsigned long long>(r.seed));
        os << buf << "\n";
    }
    if (!os) throw IoError("emit_csv: write failed");
}

inline void emit_csv_file(const Curve& curve, const std::string& path,
                          ChannelSelect sel = ChannelSelect::Both) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("emit_csv: cannot open '" + path + "' for writing");
    emit_csv(curve, f, sel);
    f.flush();
    if (!f) throw IoError("emit_csv: write to '" + path + "' failed");
}

} // namespace qpc
