#pragma once

#include <string_view>

namespace qndwt {

enum class LogLevel { error = 0, info = 1, debug = 2 };

/// Threshold parsed once from QNDWT_LOG (error|info|debug); default info.
LogLevel log_threshold();

/// Writes "qndwt: <msg>" to stderr when level passes the threshold.
void log_line(LogLevel level, std::string_view msg);

}  // namespace qndwt
