#pragma once

#include <stdexcept>
#include <string>

namespace flagstab {

// Error taxonomy mirrored by the CLI exit codes: input_error -> 2,
// failed checks -> 1, internal_error -> 3.

// Malformed or inconsistent caller-supplied data (bad JSON, dimension
// mismatch, non-RREF basis, unknown names).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid data that violates an operation's precondition
// (non-solvable algebra where solvability is required, non-isotropic flag
// handed to an isotropic-only formula, ...).
class precondition_error : public std::runtime_error {
public:
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// The computation cannot be completed over the rationals even though the
// input is legal (no rational eigenvalue, anisotropic plane, ...).
class computation_error : public std::runtime_error {
public:
    explicit computation_error(const std::string& what) : std::runtime_error(what) {}
};

// A library invariant failed; always a bug, never a caller problem.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void require_internal(bool ok, const std::string& what) {
    if (!ok) throw internal_error(what);
}

}  // namespace flagstab
