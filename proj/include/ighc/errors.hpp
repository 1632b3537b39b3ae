#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace ighc {

/// Bad configuration / contract violation at the interface level.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Runtime numerical failure (NaN, overflow, non-convergence).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-fatal warnings (e.g. Riesz mean-removal threshold) are routed here.
/// Default handler writes to stderr; tests may capture.
void warn(const std::string& msg);
void set_warning_handler(std::function<void(const std::string&)> h);

}  // namespace ighc
