#pragma once

#include <iostream>
#include <mutex>
#include <string>

namespace taintchain {

enum class LogLevel { silent = 0, info = 1, debug = 2 };

/// Line-oriented logger shared by the engine threads.
class Logger {
public:
    explicit Logger(LogLevel level = LogLevel::silent, std::ostream* out = &std::cerr)
        : level_(level), out_(out) {}

    void info(const std::string& line) { emit(LogLevel::info, line); }
    void debug(const std::string& line) { emit(LogLevel::debug, line); }

    LogLevel level() const { return level_; }

private:
    void emit(LogLevel at, const std::string& line) {
        if (level_ < at) return;
        std::lock_guard lock(mu_);
        (*out_) << line << '\n';
    }

    LogLevel level_;
    std::ostream* out_;
    std::mutex mu_;
};

}  // namespace taintchain
