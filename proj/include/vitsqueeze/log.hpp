// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace vitsq {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// Verbosity comes from VITSQUEEZE_LOG (error|warn|info|debug); default warn.
inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("VITSQUEEZE_LOG");
        if (env == nullptr) return LogLevel::warn;
        if (std::strcmp(env, "error") == 0) return LogLevel::error;
        if (std::strcmp(env, "warn") == 0) return LogLevel::warn;
        if (std::strcmp(env, "info") == 0) return LogLevel::info;
        if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

inline void vlog(LogLevel level, const char* tag, const char* fmt, std::va_list args) {
    if (level > log_level()) return;
    std::fprintf(stderr, "[%s] ", tag);
    std::vfprintf(stderr, fmt, args);
    std::fputc('\n', stderr);
}

#define VITSQ_DEFINE_LOG_FN(name, level, tag)                       \
    inline void name(const char* fmt, ...) {                       \
        std::va_list args;                                         \
        va_start(args, fmt);                                       \
        ::vitsq::vlog(::vitsq::LogLevel::level, tag, fmt, args);   \
        va_end(args);                                              \
    }

VITSQ_DEFINE_LOG_FN(log_error, error, "error")
VITSQ_DEFINE_LOG_FN(log_warn, warn, "warn")
VITSQ_DEFINE_LOG_FN(log_info, info, "info")
VITSQ_DEFINE_LOG_FN(log_debug, debug, "debug")

#undef VITSQ_DEFINE_LOG_FN

}  // namespace vitsq
