#pragma once

#include <iosfwd>
#include <string>

namespace klat::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 1;
inline constexpr int kResourceLimit = 2;

int run_analyze(const std::string& path, int max_k, double tol, bool json,
                long long budget, std::ostream& out, std::ostream& err);

int run_xi(int n, int k, const std::string& mode, bool json, std::ostream& out,
           std::ostream& err);

int run_scan(const std::string& path, int k, double tol, bool json,
             long long budget, std::ostream& out, std::ostream& err);

int run_demo(const std::string& name, unsigned long long seed, bool json,
             std::ostream& out, std::ostream& err);

}  // namespace klat::cli
