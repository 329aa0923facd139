#pragma once

#include <stdexcept>
#include <string>

namespace ealab {

struct InvalidConfig : std::runtime_error {
    explicit InvalidConfig(const std::string& what) : std::runtime_error("invalid config: " + what) {}
};

struct SizeLimit : std::runtime_error {
    explicit SizeLimit(const std::string& what) : std::runtime_error("size limit: " + what) {}
};

struct IdenticalParents : std::runtime_error {
    IdenticalParents() : std::runtime_error("crossover kind requires two distinct parents") {}
};

struct NotAbsorbing : std::runtime_error {
    explicit NotAbsorbing(const std::string& what) : std::runtime_error("chain cannot reach the optimum: " + what) {}
};

struct MappingInvalid : std::runtime_error {
    explicit MappingInvalid(const std::string& what) : std::runtime_error("state mapping invalid: " + what) {}
};

}  // namespace ealab
