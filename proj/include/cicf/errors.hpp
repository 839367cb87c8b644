#pragma once

#include <stdexcept>
#include <string>

namespace cicf {

// Error taxonomy shared by all modules. Everything derives from
// std::runtime_error so callers can catch broadly or by kind.

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Principal curvatures left the admissible cone Gamma_k. Carries the node
// index when raised from a per-node field computation (-1 otherwise).
struct ConeViolation : std::runtime_error {
    int node;
    explicit ConeViolation(const std::string& msg, int node_index = -1)
        : std::runtime_error(msg), node(node_index) {}
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MeanConvexityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cicf
