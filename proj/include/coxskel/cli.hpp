#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxskel/io.hpp"

namespace coxskel {

inline constexpr const char* kVersion = "coxskel 1.0.0";

struct CommandOptions {
    std::string command;  // theta gkz homs check-exceptional transform monad sharpen plot
    std::string sub;      // monad: validate restrict strand vanishing; plot: secondary-fan zonotope theta
    bool star = false;
    std::optional<Int> frobenius;
    std::optional<std::uint64_t> order_seed;
    unsigned long characteristic = 0;
    std::size_t nef_battery = 2;
    std::optional<ZVec> cls;
    std::optional<std::size_t> source, target, face, wall;
};

struct Report {
    Json doc;                          // command, version, input_digest, options, result, certificates
    std::vector<std::string> summary;  // human-readable lines
    std::string svg;                   // plot only
};

/** Runs one command on the text of an input document. Errors are CoxError with the usual kinds. */
Report run_command(const CommandOptions& opt, const std::string& input_text);

/** Stable serialization: sorted keys, two-space indent, trailing newline. */
std::string serialize(const Report& r);

/** Parses "a,b,c" into a class. */
ZVec parse_class(const std::string& s);

}  // namespace coxskel
