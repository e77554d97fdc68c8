#pragma once

#include <iosfwd>

namespace thetaforge::cli {

// Frozen exit-code map.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitCertificate = 4;
inline constexpr int kExitReproduction = 5;

/// Entry point behind `theta_forge`; streams are injectable for tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thetaforge::cli
