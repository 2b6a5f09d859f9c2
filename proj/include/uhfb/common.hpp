#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace uhfb {

using Complex = std::complex<double>;

/// Error type for domain violations (bad indices, size caps, malformed input).
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw error(msg);
}

} // namespace uhfb
