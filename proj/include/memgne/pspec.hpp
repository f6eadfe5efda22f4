#pragma once

#include "memgne/engine.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace memgne::pspec {

/// Syntax or semantic error in a `.pspec` document. Line and column are
/// 1-based; 0 means the error is not tied to a position.
class PSpecError : public std::runtime_error {
public:
    PSpecError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

enum class DiagnosticKind {
    unknown_label,
    not_a_child,
    no_consumption,
    undeclared_symbol,
    arity_mismatch,
    duplicate_rule,
    unknown_priority_rule,
    cyclic_priority,
};

const char* to_string(DiagnosticKind k) noexcept;

struct Diagnostic {
    DiagnosticKind kind;
    std::string message;
    /// Rule the diagnostic refers to, if any.
    std::string rule_id;
};

/// Checks the structural invariants of a P system; empty iff all hold.
std::vector<Diagnostic> validate(const PSystem& sys);

/// Parses a document. Throws PSpecError on the first syntax error or, after
/// a complete parse, on the first semantic diagnostic.
PSystem parse(std::string_view text);

/// Canonical text: alphabet sorted by base, membranes in pre-order, rules in
/// declaration order, priorities sorted.
std::string serialize(const PSystem& sys);

/// `membranes { ... }` and `environment { ... }` blocks only.
std::string serialize_configuration(const Configuration& cfg);
Configuration parse_configuration(std::string_view text);

/// One `format_step_line` per step. With `snapshots`, each configuration is
/// written before the step that leaves it, introduced by `@snapshot t`.
void write_trace(std::ostream& os, const Trace& trace, bool snapshots = false);

} // namespace memgne::pspec
