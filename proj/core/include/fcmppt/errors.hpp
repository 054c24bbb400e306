#pragma once

#include <stdexcept>
#include <string>

namespace fcmppt {

// Configuration file / CLI usage problems (exit code 1 in the CLI).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operating point left the valid envelope (stack current at or past the
// limiting current, temperature or water content out of range).
class envelope_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The brute-force MPP search hit a non-unimodal power curve.
class oracle_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fuzzy inference produced an identically-zero aggregate (should be
// unreachable for partitions that cover their universe).
class inference_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Plant integration produced NaN/inf state.
class integration_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fcmppt
