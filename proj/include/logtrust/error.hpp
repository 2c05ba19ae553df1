#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace logtrust {

enum class ErrorCode {
    duplicate_event,
    order_violation,
    mixed_roles,
    unordered_log,
    internally_conflicting_set,
    invalid_obligation,
    empty_input,
    unknown_creator,
    creator_mismatch,
    missing_obligation,
    document_not_held,
    document_exists,
    self_share,
    no_pending_message,
    unknown_peer,
    mixed_documents,
    invalid_argument,
    parse_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure surfaced by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// A scenario command failed; carries the zero-based index of the command.
class ScenarioError : public Error {
public:
    ScenarioError(std::size_t index, const Error& cause)
        : Error(cause.code(), "command " + std::to_string(index) + ": " + cause.what()),
          index_(index) {}

    [[nodiscard]] std::size_t command_index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace logtrust
