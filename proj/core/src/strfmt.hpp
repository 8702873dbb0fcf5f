#pragma once

#include <cstdio>
#include <string>

namespace bzwave::detail {

/// snprintf into a std::string (no std::format on the target toolchain).
template <typename... Args>
std::string strfmt(const char* f, Args... args) {
    const int n = std::snprintf(nullptr, 0, f, args...);
    if (n <= 0) return {};
    std::string out(static_cast<std::size_t>(n) + 1, '\0');
    std::snprintf(out.data(), out.size(), f, args...);
    out.resize(static_cast<std::size_t>(n));
    return out;
}

}  // namespace bzwave::detail
