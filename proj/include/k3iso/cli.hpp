#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace k3iso::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;         // verification failed or counterexample found
inline constexpr int kInconclusive = 2;  // nothing found below the search bound
inline constexpr int kInvalid = 3;       // malformed arguments or invalid input

// Name of the environment variable overriding the default search bound.
inline constexpr const char* kBoundEnv = "K3ISO_DEFAULT_BOUND";

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace k3iso::cli
