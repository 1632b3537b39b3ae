#include "ighc/errors.hpp"

#include <iostream>
#include <mutex>

namespace ighc {

namespace {
std::mutex handler_mutex;
std::function<void(const std::string&)> handler;
}  // namespace

void warn(const std::string& msg) {
    std::lock_guard<std::mutex> lock(handler_mutex);
    if (handler)
        handler(msg);
    else
        std::cerr << "[ighc warning] " << msg << "\n";
}

void set_warning_handler(std::function<void(const std::string&)> h) {
    std::lock_guard<std::mutex> lock(handler_mutex);
    handler = std::move(h);
}

}  // namespace ighc
