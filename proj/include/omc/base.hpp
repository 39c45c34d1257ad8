#pragma once

// Shared error types, resource budgets and small utilities.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>

namespace omc {

// Input violates a structural schema (dangling ids, wrong dimensions, ...).
struct schema_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation was called outside its stated precondition.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A search or materialization exceeded its budget; the result is
// "inconclusive", never silently wrong.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Global resource limits. Env vars override the defaults so the CLI and the
// suites stay configurable without threading knobs through every call.
struct Budget {
    std::size_t cells_per_dim = 10000;   // materialization width per dimension
    std::size_t cylinders    = 50000;    // cylinder enumeration total
    std::size_t search_nodes = 2000000;  // backtracking node limit
    std::size_t bfs_nodes    = 200000;   // rewriting-equality BFS node limit

    static std::size_t env_or(const char* name, std::size_t dflt) {
        if (const char* v = std::getenv(name)) {
            char* end = nullptr;
            unsigned long long x = std::strtoull(v, &end, 10);
            if (end && *end == '\0' && x > 0) return static_cast<std::size_t>(x);
        }
        return dflt;
    }

    static const Budget& current() {
        static const Budget b = [] {
            Budget r;
            r.cells_per_dim = env_or("OMC_BUDGET_CELLS", r.cells_per_dim);
            r.cylinders     = env_or("OMC_BUDGET_CYLINDERS", r.cylinders);
            r.search_nodes  = env_or("OMC_BUDGET_NODES", r.search_nodes);
            r.bfs_nodes     = env_or("OMC_BUDGET_BFS", r.bfs_nodes);
            return r;
        }();
        return b;
    }
};

inline std::uint64_t pack_pair(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline void hash_mix(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
}

} // namespace omc
