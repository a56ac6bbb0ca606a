#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace mstphase {

// Bad input data (malformed files, contract violations on values). CLI maps this to exit 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Constant return series inside a window; carries the offending tickers so the
// caller can drop them and retry.
struct ZeroVarianceError : DataError {
    std::vector<std::string> tickers;
    explicit ZeroVarianceError(std::vector<std::string> t)
        : DataError("zero-variance column: " + join(t)), tickers(std::move(t)) {}

  private:
    static std::string join(const std::vector<std::string>& t) {
        std::string s;
        for (const auto& x : t) {
            if (!s.empty()) s += ",";
            s += x;
        }
        return s;
    }
};

// 17 significant digits: round-trips any double.
inline std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline uint64_t fnv1a64(const void* data, size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline const char* version() { return "0.1.0"; }

}  // namespace mstphase
