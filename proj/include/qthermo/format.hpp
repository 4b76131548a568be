#pragma once

#include <cstdio>
#include <string>

namespace qthermo {

// Shortest round-trippable decimal form (>= 17 significant digits), used by
// every text artifact so reruns diff cleanly.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace qthermo
