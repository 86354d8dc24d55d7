#pragma once

#include <charconv>
#include <string>

#include "szegolab/types.hpp"

namespace szegolab {

// Shortest round-trip decimal for a double; deterministic for a fixed build,
// which is what the byte-identical-output contract requires.
inline std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string fmt_complex(complexd z) {
    return fmt_double(z.real()) + "," + fmt_double(z.imag());
}

// Vector components joined with ';'.
inline std::string fmt_cvector(const cvector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ";";
        out += fmt_complex(v[i]);
    }
    return out;
}

} // namespace szegolab
