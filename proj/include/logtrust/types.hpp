/// @file types.hpp
/// @brief Core value types and the log event variants.

#pragma once

#include <logtrust/error.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace logtrust {

/// Opaque, non-empty peer identifier.
class PeerId {
public:
    explicit PeerId(std::string id) : id_(std::move(id)) {
        if (id_.empty()) {
            throw Error(ErrorCode::invalid_argument, "peer id must be non-empty");
        }
    }

    [[nodiscard]] const std::string& str() const noexcept { return id_; }

    auto operator<=>(const PeerId&) const = default;

private:
    std::string id_;
};

/// Per-peer Lamport-style tick. Always >= 1.
class Clock {
public:
    explicit constexpr Clock(std::uint64_t value) : value_(value) {
        if (value_ == 0) {
            throw Error(ErrorCode::invalid_argument, "clock values start at 1");
        }
    }

    [[nodiscard]] constexpr std::uint64_t value() const noexcept { return value_; }

    auto operator<=>(const Clock&) const = default;

private:
    std::uint64_t value_;
};

/// Counter a peer draws its event clocks from. Starts at 0; the first tick is 1.
class LogicalClock {
public:
    LogicalClock() = default;
    explicit LogicalClock(std::uint64_t counter) : counter_(counter) {}

    /// Increments the counter and returns the new value.
    Clock next() { return Clock(++counter_); }

    [[nodiscard]] std::uint64_t current() const noexcept { return counter_; }

private:
    std::uint64_t counter_ = 0;
};

enum class Verb : std::uint8_t {
    create,
    read,
    comment,
    delete_comment,
    share,
};

std::string_view to_string(Verb verb) noexcept;
std::optional<Verb> parse_verb(std::string_view text) noexcept;

/// Identity of an obligation that survives receipt-time clock remapping.
struct OriginKey {
    PeerId grantor;
    PeerId grantee;
    Clock share_clock;  ///< grantor-side clock of the enclosing share event

    auto operator<=>(const OriginKey&) const = default;
};

/// A local action on the document (create, read, comment, delete comment).
struct PerformedEdit {
    Clock clock;
    Verb verb;
    PeerId by;

    auto operator<=>(const PerformedEdit&) const = default;
};

/// A share action from `by` to `to`.
struct PerformedShare {
    Clock clock;
    PeerId by;
    PeerId to;

    auto operator<=>(const PerformedShare&) const = default;
};

/// A usage obligation granted by `by` to `to`. `allow == false` is the
/// negated form ("not comment").
struct Obligation {
    Clock clock;
    Verb verb;
    bool allow;
    PeerId by;
    PeerId to;
    OriginKey origin;

    auto operator<=>(const Obligation&) const = default;
};

/// Alternative index doubles as the tie-break rank in the log order.
using Event = std::variant<Obligation, PerformedShare, PerformedEdit>;

enum class EventKind : std::uint8_t { obligation = 0, share = 1, edit = 2 };

std::string_view to_string(EventKind kind) noexcept;

[[nodiscard]] Clock clock_of(const Event& e) noexcept;
[[nodiscard]] const PeerId& actor_of(const Event& e) noexcept;
[[nodiscard]] EventKind kind_of(const Event& e) noexcept;
/// Verb of the action or obligation; PerformedShare reports Verb::share.
[[nodiscard]] Verb verb_of(const Event& e) noexcept;
[[nodiscard]] inline bool is_performed(const Event& e) noexcept {
    return !std::holds_alternative<Obligation>(e);
}
[[nodiscard]] Event with_clock(Event e, Clock c);

/// Strict total order used to keep logs sorted: clock, then actor, then
/// variant rank, then the remaining fields.
[[nodiscard]] bool event_less(const Event& a, const Event& b) noexcept;

/// Identity used to deduplicate entries across log copies.
/// Obligations are keyed by origin plus atom; their clock is not part of the key.
struct DedupKey {
    EventKind kind;
    PeerId by;
    std::optional<PeerId> to;
    std::optional<Clock> clock;
    Verb verb;
    bool allow;
    std::optional<OriginKey> origin;

    auto operator<=>(const DedupKey&) const = default;
};

[[nodiscard]] DedupKey dedup_key(const Event& e);

}  // namespace logtrust
