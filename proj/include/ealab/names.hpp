#pragma once

#include <string>
#include <string_view>

#include "ealab/ea.hpp"

namespace ealab {

std::string to_string(Problem p);
std::string to_string(Algorithm a);
std::string to_string(MutationKind m);
std::string to_string(CrossoverKind x);
std::string to_string(Strategy s);
std::string to_string(TiePolicy t);

// All parsers are case-insensitive and throw InvalidConfig on unknown names.
Problem parse_problem(std::string_view name);
Algorithm parse_algorithm(std::string_view name);
MutationKind parse_mutation(std::string_view name);
CrossoverKind parse_crossover(std::string_view name);
Strategy parse_strategy(std::string_view name);
TiePolicy parse_tie_policy(std::string_view name);

}  // namespace ealab
