#pragma once

#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace scriptid {

// Base class for all structured errors raised by the library. The CLI turns
// any of these into a single diagnostic line and a nonzero exit code.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// File/stream level failures (missing file, bad magic, short read).
class io_error : public error {
public:
    explicit io_error(const std::string& msg) : error(msg) {}
};

// Malformed structured text (CSV rows, model containers). Messages carry the
// offending line or path.
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg) : error(msg) {}
};

// Model persistence problems: version mismatch, truncation, corruption.
class model_error : public error {
public:
    explicit model_error(const std::string& msg) : error(msg) {}
};

// Warnings go through a replaceable sink so tests can capture or mute them.
inline std::function<void(const std::string&)>& warning_sink() {
    static std::function<void(const std::string&)> sink =
        [](const std::string& msg) { std::cerr << "scriptid: warning: " << msg << "\n"; };
    return sink;
}

inline void warn(const std::string& msg) {
    if (warning_sink()) warning_sink()(msg);
}

}  // namespace scriptid
