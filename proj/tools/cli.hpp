#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace negdim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUnknownCommand = 64;
inline constexpr int kExitInvalidInput = 65;
inline constexpr int kExitNotImplemented = 69;

// argv excludes the program name. CSV or JSON goes to `out` unless --out is given;
// diagnostics go to `err`.
int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace negdim::cli
