#pragma once

#include "memgne/psystem.hpp"

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace memgne {

/// `count` applications of rule `rule_id` at membrane `label` in one step.
struct Application {
    std::string rule_id;
    std::string label;
    Count count = 0;

    friend bool operator==(const Application&, const Application&) = default;
};

struct StepRecord {
    std::vector<Application> applications;

    bool empty() const noexcept { return applications.empty(); }
    Count applications_of(std::string_view rule_id) const;

    friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// Two priority-incomparable rules that were both applicable in a step and
/// could not both be applied maximally because they consume the same object
/// from the same region.
struct AmbiguityDiagnostic {
    std::string region;
    std::string symbol;
    std::string first_rule;
    std::string second_rule;
};

class AmbiguityError : public std::runtime_error {
public:
    explicit AmbiguityError(std::vector<AmbiguityDiagnostic> diagnostics);
    const std::vector<AmbiguityDiagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<AmbiguityDiagnostic> diagnostics_;
};

struct EngineOptions {
    /// Report competing incomparable rules as AmbiguityError instead of
    /// resolving them by declaration order.
    bool strict = false;
};

enum class HaltReason { quiescent, step_budget };

const char* to_string(HaltReason r) noexcept;

/// snapshots.size() == steps.size() + 1; snapshots[t+1] follows from
/// snapshots[t] by steps[t].
struct Trace {
    std::vector<Configuration> snapshots;
    std::vector<StepRecord> steps;
};

struct RunResult {
    Configuration final_config;
    std::size_t steps = 0;
    HaltReason reason = HaltReason::quiescent;
    /// Filled only when the run was asked to keep a trace.
    Trace trace;
};

/// Called after every executed step with its 1-based index, the resulting
/// configuration and the step record.
using StepObserver = std::function<void(std::size_t, const Configuration&, const StepRecord&)>;

/// Executes a P system under maximal parallelism with priorities.
///
/// Selection is greedy over a fixed total order extending the priority
/// relation (declaration order breaks ties): each rule is applied as many
/// times as the not-yet-consumed pre-step objects allow, so a lower-priority
/// rule only sees what every higher-priority rule left behind. Objects
/// produced in a step become visible in the next one. Charge changes are
/// staged and committed after all object rewriting; each membrane accepts at
/// most one charge-changing application per step.
class Engine {
public:
    explicit Engine(PSystem sys, EngineOptions options = {});
    ~Engine();
    Engine(Engine&&) noexcept;
    Engine& operator=(Engine&&) noexcept;

    const PSystem& system() const noexcept;

    /// Pre-step applicability of rule `rule_index` (charges and objects).
    bool applicable(std::size_t rule_index, const Configuration& cfg) const;

    std::pair<Configuration, StepRecord> step(const Configuration& cfg) const;

    /// Steps from the initial configuration until nothing applies or
    /// `max_steps` steps were executed.
    RunResult run(std::size_t max_steps, bool keep_trace = false, const StepObserver& observer = {}) const;
    RunResult run_from(Configuration cfg, std::size_t max_steps, bool keep_trace = false,
                       const StepObserver& observer = {}) const;

    /// Re-applies a recorded step to its pre-configuration. Throws
    /// std::invalid_argument when the record does not fit the configuration.
    Configuration replay(const Configuration& cfg, const StepRecord& record) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// True iff `rule` can fire at membrane `membrane` of `cfg`. Throws
/// StructuralError for an unknown membrane label.
bool rule_applicable(const RuleSpec& rule, const Configuration& cfg, std::string_view membrane);

std::pair<Configuration, StepRecord> maximal_step(const Configuration& cfg, const PSystem& sys,
                                                  EngineOptions options = {});

RunResult run(const PSystem& sys, std::size_t max_steps, bool trace_mode = false, EngineOptions options = {});

/// Filtered copy of one region (kEnvironment addresses the outside of the skin).
Multiset read_region(const Configuration& cfg, std::string_view label, std::string_view base_filter = {});

/// `t rule@label×count ...` with entries sorted lexicographically.
std::string format_step_line(std::size_t step, const StepRecord& record);

} // namespace memgne
