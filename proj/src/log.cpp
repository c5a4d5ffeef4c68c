#include "qndwt/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace qndwt {

LogLevel log_threshold() {
    static const LogLevel level = [] {
        const char* env = std::getenv("QNDWT_LOG");
        if (env == nullptr) return LogLevel::info;
        const std::string v(env);
        if (v == "error") return LogLevel::error;
        if (v == "debug") return LogLevel::debug;
        return LogLevel::info;
    }();
    return level;
}

void log_line(LogLevel level, std::string_view msg) {
    if (static_cast<int>(level) > static_cast<int>(log_threshold())) return;
    std::fprintf(stderr, "qndwt: %.*s\n", static_cast<int>(msg.size()), msg.data());
}

}  // namespace qndwt
