/// @file scenario.hpp
/// @brief Scripted scenarios with their traces, plus a seeded generator.

#pragma once

#include <logtrust/simulator.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace logtrust {

struct CreateDoc {
    PeerId peer;
    std::string doc_id;
};

struct EditDoc {
    PeerId peer;
    std::string doc_id;
    Verb verb;
    bool ignore_obligations = false;
};

/// Several edits stamped with one tick; may open with create.
struct BatchEdit {
    PeerId peer;
    std::string doc_id;
    std::vector<Verb> verbs;
};

struct ShareDoc {
    PeerId from;
    PeerId to;
    std::string doc_id;
    std::vector<ObligationAtom> obligations;
};

struct DeliverDoc {
    PeerId to;
    std::string doc_id;
    PeerId from;
};

struct AuditDoc {
    PeerId peer;
    std::string doc_id;
};

using ScenarioCommand = std::variant<CreateDoc, EditDoc, BatchEdit, ShareDoc, DeliverDoc, AuditDoc>;

struct Scenario {
    std::vector<PeerId> peers;
    std::vector<ScenarioCommand> commands;
};

struct LogSnapshot {
    PeerId peer;
    std::string doc_id;
    Workspace workspace;

    bool operator==(const LogSnapshot&) const = default;
};

struct TraceStep {
    std::size_t command_index;
    std::vector<LogSnapshot> logs;  ///< every peer's workspaces after the command
    std::optional<Message> sent;    ///< set for share commands
    std::optional<AuditReport> report;

    bool operator==(const TraceStep&) const = default;
};

struct ScenarioTrace {
    std::vector<TraceStep> steps;

    [[nodiscard]] std::vector<AuditReport> reports() const;
    bool operator==(const ScenarioTrace&) const = default;
};

/// Checks peer ids are unique and every command names a declared peer.
/// Throws ScenarioError carrying the offending command index.
void validate_scenario(const Scenario& scenario);

/// Runs the commands in order on a fresh Simulator. Any command failure is
/// rethrown as ScenarioError with the command index attached.
ScenarioTrace run_scenario(const Scenario& scenario,
                           std::shared_ptr<const TrustModel> model = default_trust_model(),
                           SimulatorOptions options = {});

/// Like run_scenario, but also returns the final simulator state.
std::pair<ScenarioTrace, Simulator> run_scenario_with_state(
    const Scenario& scenario, std::shared_ptr<const TrustModel> model = default_trust_model(),
    SimulatorOptions options = {});

struct GeneratorOptions {
    std::size_t max_peers = 4;
    std::size_t max_commands = 12;
    std::string doc_id = "d";
};

/// Random valid scenario over one document: 2..max_peers peers and at most
/// max_commands commands, ending with an audit. Identical seeds give
/// identical scenarios on every platform.
Scenario generate_scenario(std::uint64_t seed, const GeneratorOptions& options = {});

}  // namespace logtrust
