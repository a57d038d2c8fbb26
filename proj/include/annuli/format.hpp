#pragma once

#include <cstdio>
#include <string>

namespace annuli {

// 17 significant digits: enough for exact double round-trips in goldens.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace annuli
