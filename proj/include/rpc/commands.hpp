#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rpc/blowup.hpp"
#include "rpc/report.hpp"

namespace rpc {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailed = 1, // verify found a broken identity, or an unexpected error
    kExitParse = 2,
    kExitDomain = 3,
    kExitUncertified = 4,
};

enum class InputKind { field, map };

struct InputSpec {
    InputKind kind = InputKind::field;
    std::string text;
    int order = kDefaultOrder;
    int depth = kDefaultDepth;
    Chart chart = Chart::u1;
};

// Reads "field A, B" or "map f1, f2" from file contents; '#' starts a comment.
// Exactly one field or map per file.
InputSpec read_input_file(const std::string& contents);

const std::vector<std::string>& command_names();

struct CommandResult {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

// Runs one command. Errors are caught and mapped to the exit code contract.
CommandResult run_command(const std::string& cmd, const InputSpec& spec, bool json);

} // namespace rpc
