/// @file log.hpp
/// @brief Sorted, deduplicated edit and communication logs.

#pragma once

#include <logtrust/types.hpp>

#include <span>
#include <string_view>
#include <vector>

namespace logtrust {

enum class LogRole : std::uint8_t { edit, comm };

std::string_view to_string(LogRole role) noexcept;

/// Whether an event variant may live in a log of the given role.
/// Edit logs hold PerformedEdit only; comm logs hold shares and obligations.
[[nodiscard]] bool belongs_to(const Event& e, LogRole role) noexcept;

/// Time-ordered event sequence for one document and one role.
///
/// Entries are kept sorted by event_less and carry distinct dedup keys.
/// A Log is a value: every mutating operation below returns a new Log.
class Log {
public:
    explicit Log(LogRole role) : role_(role) {}

    /// Builds a log from entries that must already be in log order.
    /// Throws MixedRoles, UnorderedLog or DuplicateEvent.
    static Log from_entries(LogRole role, std::vector<Event> entries);

    [[nodiscard]] LogRole role() const noexcept { return role_; }
    [[nodiscard]] std::span<const Event> entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

    [[nodiscard]] const Event* find(const DedupKey& key) const;
    [[nodiscard]] bool contains(const DedupKey& key) const { return find(key) != nullptr; }

    bool operator==(const Log&) const = default;

private:
    friend Log append_events(const Log&, std::span<const Event>);
    friend Log merge_logs(const Log&, const Log&);
    friend Log remap_obligations_on_receipt(const Log&, const PeerId&, Clock, const Log*);

    LogRole role_;
    std::vector<Event> entries_;
};

/// Appends one locally generated event. Throws DuplicateEvent if its dedup
/// key is present, OrderViolation if its actor already has an entry at the
/// same or a later generation clock.
Log append_event(const Log& log, const Event& event);

/// Appends a group of events generated by one peer at one tick (a share and
/// its obligations, or a batch of edits). All events must carry the same
/// actor and clock; the clock must exceed the actor's latest in the log.
Log append_events(const Log& log, std::span<const Event> group);

/// Deduplicated union of two copies of the same log, in log order.
///
/// Copies of one obligation may carry different clocks. The copy stamped by
/// the grantee on receipt (clock != origin.share_clock) is kept; among
/// equally-stamped copies the smaller clock wins. Throws MixedRoles.
Log merge_logs(const Log& local, const Log& received);

/// Restamps obligations addressed to `receiver` with `receiver_clock`.
/// When `already_held` is given, obligations whose dedup key it contains are
/// left alone: they arrived in an earlier receipt.
Log remap_obligations_on_receipt(const Log& received, const PeerId& receiver,
                                 Clock receiver_clock, const Log* already_held = nullptr);

/// Clock at which the actor generated the event. For obligations this is the
/// grantor-side share clock, not the possibly remapped log clock.
[[nodiscard]] Clock generation_clock(const Event& e) noexcept;

}  // namespace logtrust
