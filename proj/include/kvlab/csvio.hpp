// Deterministic CSV formatting: 17 significant digits round-trips a double.
#pragma once

#include <cstdio>
#include <string>

namespace kvlab {

inline std::string fmt17(double v) {
    if (v == 0.0) v = 0.0;  // canonicalize the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace kvlab
