/// @file serialize.hpp
/// @brief JSON encoding of logs, audit reports, scenarios and traces.
///
/// Keys are emitted in a fixed order so output is byte-stable across runs.

#pragma once

#include <logtrust/scenario.hpp>

#include <json.hpp>

#include <optional>
#include <string>

namespace logtrust {

using Json = nlohmann::ordered_json;

Json to_json(const Event& e);
Event event_from_json(const Json& j);

/// A bare JSON array of events.
Json to_json(const Log& log);

/// Parses a bare event array. The role is inferred from the entries when not
/// given; an empty array defaults to `fallback`.
Log log_from_json(const Json& j, std::optional<LogRole> role = std::nullopt,
                  LogRole fallback = LogRole::comm);

/// A log file: either a bare event array, or an envelope
/// {"doc_id", "role", "peer", "entries": [...]} carrying metadata.
struct LogFile {
    std::optional<std::string> doc_id;
    std::optional<PeerId> peer;
    Log log;
};

Json to_json(const LogFile& file);
LogFile log_file_from_json(const Json& j, std::optional<LogRole> expected = std::nullopt);

Json to_json(const Violation& v);
Json to_json(const AuditReport& report);
Json to_json(const TrustTable& table);
Json to_json(const Workspace& ws);
Json to_json(const Message& m);
Json to_json(const TraceStep& step);
Json to_json(const ScenarioTrace& trace);

Json to_json(const ScenarioCommand& cmd);
Json to_json(const Scenario& scenario);
/// Throws ScenarioError naming the command index for malformed commands and
/// Error(ParseError) for a malformed top level.
Scenario scenario_from_json(const Json& j);

/// Parses JSON text; syntax errors become Error(ParseError) with line:column.
Json parse_json_text(const std::string& text, const std::string& source_name);
Json read_json_file(const std::string& path);

/// 1-based line on which element `index` of the top-level "commands" array
/// starts in `text`, if it can be located.
std::optional<std::size_t> command_line(std::string_view text, std::size_t index);

}  // namespace logtrust
