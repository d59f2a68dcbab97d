#pragma once

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "miucb/match.hpp"
#include "miucb/testbed.hpp"

namespace miucb::cli {

struct BanditCommand {
    testbed::TestbedConfig config;
    std::filesystem::path output;  // empty: summary only
};

struct MatchCommand {
    match::MatchConfig config;
};

/// Asked for --help; carries the help text.
struct HelpRequest {
    std::string text;
};

using Command = std::variant<BanditCommand, MatchCommand, HelpRequest>;

/// Bad flags, bad values or a missing subcommand. what() holds the message
/// and usage() the help text to print alongside it.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& message, std::string usage)
        : std::runtime_error(message), usage_(std::move(usage)) {}
    const std::string& usage() const { return usage_; }

private:
    std::string usage_;
};

enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kUsageError = 2 };

/// args[0] is the program name.
Command parse_cli(const std::vector<std::string>& args);

/// Parses and runs; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace miucb::cli
