#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mvl::cli {

// Exit codes shared by every command.
inline constexpr int kPositive = 0;  // Proved, Holds, Sound, Valid
inline constexpr int kNegative = 1;  // Refuted, Fails, Unsound, Counterexample
inline constexpr int kUsage = 2;     // usage or input error
inline constexpr int kBudget = 3;    // search budget exhausted

// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Splits a comma-separated formula list at top-level commas; "" is empty.
std::vector<std::string> split_formulas(const std::string& text);

}  // namespace mvl::cli
