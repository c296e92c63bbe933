#pragma once

#include <stdexcept>
#include <string>

namespace hotm {

// Thrown when a state touches the singular locus of an element set or an
// equation of motion divides by a vanishing quantity.
class SingularityError : public std::runtime_error {
public:
    explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on structural misuse: mismatched DA contexts, bad dimensions,
// out-of-range indices, domain violations of elementary functions.
class DaError : public std::invalid_argument {
public:
    explicit DaError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when numerical integration cannot proceed (step underflow,
// step budget exhausted, event not found).
class IntegrationError : public std::runtime_error {
public:
    explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when map iteration leaves the hard safety region around the
// expansion point.
class MappingAbort : public std::runtime_error {
public:
    MappingAbort(const std::string& what, int revolution, int variable)
        : std::runtime_error(what), revolution(revolution), variable(variable) {}
    int revolution;
    int variable;
};

// Bad run configuration (unknown test case, invalid set for a case, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hotm
