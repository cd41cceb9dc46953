#pragma once

#include <stdexcept>
#include <string>

namespace octocloud {

// Error taxonomy shared by the library and the CLI. Each class maps to one
// documented process exit code (see exit_code()).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration: level out of range, missing output path, conflicting
// flags. Exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed input data; the message names the offending line when the
// source is a text stream. Exit code 3.
struct ParseError : Error {
    using Error::Error;
};

// Filesystem failure; the message carries the path. Exit code 4.
struct IoError : Error {
    using Error::Error;
};

// Internal consistency violation: mismatched tree/cloud, mixed levels,
// inconsistent tallies. Exit code 5.
struct IntegrityError : Error {
    using Error::Error;
};

inline int exit_code(const Error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const ParseError*>(&e)) return 3;
    if (dynamic_cast<const IoError*>(&e)) return 4;
    if (dynamic_cast<const IntegrityError*>(&e)) return 5;
    return 1;
}

}  // namespace octocloud
