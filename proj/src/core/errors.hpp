#pragma once

#include <stdexcept>
#include <string>

namespace aggrekin {

// Bad user input: unknown preset, malformed config, invalid field values.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Time step too large for the stability condition of the requested scheme.
class cfl_error : public std::runtime_error {
public:
    explicit cfl_error(const std::string& what) : std::runtime_error(what) {}
};

// A monitored runtime invariant failed (negative density, mass drift, ...).
class invariant_error : public std::runtime_error {
public:
    explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

// Caller violated a documented precondition (shape mismatch, mass mismatch).
class contract_error : public std::logic_error {
public:
    explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace aggrekin
