#pragma once

#include <stdexcept>
#include <string>

namespace decmatch {

// Violated precondition or broken internal contract (caller bug).
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

// A configured resource cap (enumeration count, memory) was exceeded.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver hit its iteration cap before reaching its target.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input (file, stream, CLI argument).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace decmatch
