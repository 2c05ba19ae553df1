#include <logtrust/types.hpp>

#include <type_traits>

namespace logtrust {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::duplicate_event:            return "DuplicateEvent";
        case ErrorCode::order_violation:            return "OrderViolation";
        case ErrorCode::mixed_roles:                return "MixedRoles";
        case ErrorCode::unordered_log:              return "UnorderedLog";
        case ErrorCode::internally_conflicting_set: return "InternallyConflictingSet";
        case ErrorCode::invalid_obligation:         return "InvalidObligation";
        case ErrorCode::empty_input:                return "EmptyInput";
        case ErrorCode::unknown_creator:            return "UnknownCreator";
        case ErrorCode::creator_mismatch:           return "CreatorMismatch";
        case ErrorCode::missing_obligation:         return "MissingObligation";
        case ErrorCode::document_not_held:          return "DocumentNotHeld";
        case ErrorCode::document_exists:            return "DocumentExists";
        case ErrorCode::self_share:                 return "SelfShare";
        case ErrorCode::no_pending_message:         return "NoPendingMessage";
        case ErrorCode::unknown_peer:               return "UnknownPeer";
        case ErrorCode::mixed_documents:            return "MixedDocuments";
        case ErrorCode::invalid_argument:           return "InvalidArgument";
        case ErrorCode::parse_error:                return "ParseError";
    }
    return "Unknown";
}

std::string_view to_string(Verb verb) noexcept {
    switch (verb) {
        case Verb::create:         return "create";
        case Verb::read:           return "read";
        case Verb::comment:        return "comment";
        case Verb::delete_comment: return "delete_comment";
        case Verb::share:          return "share";
    }
    return "unknown";
}

std::optional<Verb> parse_verb(std::string_view text) noexcept {
    for (auto v : {Verb::create, Verb::read, Verb::comment, Verb::delete_comment, Verb::share}) {
        if (to_string(v) == text) {
            return v;
        }
    }
    return std::nullopt;
}

std::string_view to_string(EventKind kind) noexcept {
    switch (kind) {
        case EventKind::obligation: return "obligation";
        case EventKind::share:      return "share";
        case EventKind::edit:       return "edit";
    }
    return "unknown";
}

Clock clock_of(const Event& e) noexcept {
    return std::visit([](const auto& ev) { return ev.clock; }, e);
}

const PeerId& actor_of(const Event& e) noexcept {
    return std::visit([](const auto& ev) -> const PeerId& { return ev.by; }, e);
}

EventKind kind_of(const Event& e) noexcept {
    return static_cast<EventKind>(e.index());
}

Verb verb_of(const Event& e) noexcept {
    if (std::holds_alternative<PerformedShare>(e)) {
        return Verb::share;
    }
    if (const auto* o = std::get_if<Obligation>(&e)) {
        return o->verb;
    }
    return std::get<PerformedEdit>(e).verb;
}

Event with_clock(Event e, Clock c) {
    std::visit([c](auto& ev) { ev.clock = c; }, e);
    return e;
}

bool event_less(const Event& a, const Event& b) noexcept {
    const auto ca = clock_of(a);
    const auto cb = clock_of(b);
    if (ca != cb) {
        return ca < cb;
    }
    if (actor_of(a) != actor_of(b)) {
        return actor_of(a) < actor_of(b);
    }
    if (a.index() != b.index()) {
        return a.index() < b.index();
    }
    // Same variant: the defaulted member-wise ordering settles the rest.
    return std::visit(
        [&b](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            return lhs < std::get<T>(b);
        },
        a);
}

DedupKey dedup_key(const Event& e) {
    return std::visit(
        [](const auto& ev) -> DedupKey {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, PerformedEdit>) {
                return {EventKind::edit, ev.by, std::nullopt, ev.clock, ev.verb, true, std::nullopt};
            } else if constexpr (std::is_same_v<T, PerformedShare>) {
                return {EventKind::share, ev.by, ev.to, ev.clock, Verb::share, true, std::nullopt};
            } else {
                return {EventKind::obligation, ev.by, ev.to, std::nullopt, ev.verb, ev.allow, ev.origin};
            }
        },
        e);
}

}  // namespace logtrust
