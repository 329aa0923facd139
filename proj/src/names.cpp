#include "ealab/names.hpp"

#include <algorithm>

#include "ealab/errors.hpp"

namespace ealab {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

[[noreturn]] void unknown(const char* what, std::string_view name) {
    throw InvalidConfig(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

}  // namespace

std::string to_string(Problem p) { return p == Problem::LeadingOnes ? "leadingones" : "onemax"; }

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::OnePlusOne: return "1p1";
        case Algorithm::OnePlusOneStrict: return "1p1s";
        case Algorithm::TwoColonTwo: return "2c2";
        case Algorithm::TwoPlusTwo: return "2p2";
    }
    return "?";
}

std::string to_string(MutationKind m) { return m == MutationKind::OneBit ? "onebit" : "bitwise"; }

std::string to_string(CrossoverKind x) {
    switch (x) {
        case CrossoverKind::OnePoint: return "onepoint";
        case CrossoverKind::Uniform: return "uniform";
        case CrossoverKind::OneBitX: return "onebit";
        case CrossoverKind::OneDiffBit: return "onediffbit";
        case CrossoverKind::FirstDiffBit: return "firstdiffbit";
        case CrossoverKind::FirstDiffPoint: return "firstdiffpoint";
    }
    return "?";
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::MR1a: return "mr1a";
        case Strategy::MR1b: return "mr1b";
        case Strategy::MR1: return "mr1";
        case Strategy::MR2: return "mr2";
        case Strategy::MR3: return "mr3";
    }
    return "?";
}

std::string to_string(TiePolicy t) { return t == TiePolicy::KeepParent ? "keepparent" : "preferoffspring"; }

Problem parse_problem(std::string_view name) {
    const std::string s = lower(name);
    if (s == "leadingones" || s == "lo") return Problem::LeadingOnes;
    if (s == "onemax" || s == "om") return Problem::OneMax;
    unknown("problem", name);
}

Algorithm parse_algorithm(std::string_view name) {
    const std::string s = lower(name);
    if (s == "1p1" || s == "1+1") return Algorithm::OnePlusOne;
    if (s == "1p1s" || s == "1+1s" || s == "1+1>") return Algorithm::OnePlusOneStrict;
    if (s == "2c2" || s == "2:2") return Algorithm::TwoColonTwo;
    if (s == "2p2" || s == "2+2") return Algorithm::TwoPlusTwo;
    unknown("algorithm", name);
}

MutationKind parse_mutation(std::string_view name) {
    const std::string s = lower(name);
    if (s == "onebit") return MutationKind::OneBit;
    if (s == "bitwise") return MutationKind::Bitwise;
    unknown("mutation", name);
}

CrossoverKind parse_crossover(std::string_view name) {
    const std::string s = lower(name);
    if (s == "onepoint") return CrossoverKind::OnePoint;
    if (s == "uniform") return CrossoverKind::Uniform;
    if (s == "onebit") return CrossoverKind::OneBitX;
    if (s == "onediffbit") return CrossoverKind::OneDiffBit;
    if (s == "firstdiffbit") return CrossoverKind::FirstDiffBit;
    if (s == "firstdiffpoint") return CrossoverKind::FirstDiffPoint;
    unknown("crossover", name);
}

Strategy parse_strategy(std::string_view name) {
    const std::string s = lower(name);
    if (s == "mr1a") return Strategy::MR1a;
    if (s == "mr1b") return Strategy::MR1b;
    if (s == "mr1") return Strategy::MR1;
    if (s == "mr2") return Strategy::MR2;
    if (s == "mr3") return Strategy::MR3;
    unknown("strategy", name);
}

TiePolicy parse_tie_policy(std::string_view name) {
    const std::string s = lower(name);
    if (s == "keepparent" || s == "keep") return TiePolicy::KeepParent;
    if (s == "preferoffspring" || s == "offspring") return TiePolicy::PreferOffspring;
    unknown("tie policy", name);
}

}  // namespace ealab
