// Test-only helpers: a brute-force compliance oracle that shares no code path
// with the auditor, and random log generators for property tests.
#pragma once

#include <logtrust/serialize.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>
#include <vector>

namespace logtrust::test {

inline PeerId P(const char* s) { return PeerId(s); }
inline Clock C(std::uint64_t v) { return Clock(v); }

inline Event edit(std::uint64_t c, Verb v, const char* by) {
    return PerformedEdit{C(c), v, P(by)};
}
inline Event share(std::uint64_t c, const char* by, const char* to) {
    return PerformedShare{C(c), P(by), P(to)};
}
inline Event oblig(std::uint64_t c, Verb v, bool allow, const char* by, const char* to,
                   std::uint64_t share_clock) {
    return Obligation{C(c), v, allow, P(by), P(to), OriginKey{P(by), P(to), C(share_clock)}};
}

/// Sorts then builds, so tests can list entries in any order.
inline Log make_log(LogRole role, std::vector<Event> entries) {
    std::sort(entries.begin(), entries.end(), event_less);
    return Log::from_entries(role, std::move(entries));
}

/// Flattened violation identity used for set comparisons.
using ViolationKey = std::tuple<std::string, Verb, std::uint64_t, std::uint64_t, std::string,
                                std::string, std::string, std::uint64_t>;

inline ViolationKey key_of(const Violation& v) {
    return {v.offender.str(),
            v.verb,
            v.action_clock.value(),
            v.governing.clock.value(),
            v.grantor.str(),
            v.governing.origin.grantor.str(),
            v.governing.origin.grantee.str(),
            v.governing.origin.share_clock.value()};
}

inline std::set<ViolationKey> key_set(const std::vector<Violation>& vs) {
    std::set<ViolationKey> out;
    for (const auto& v : vs) {
        out.insert(key_of(v));
    }
    return out;
}

/// Exhaustive compliance check. For each performed event by a non-creator,
/// scans every obligation in the comm log (in storage order, no sorting
/// assumptions) and applies "latest obligation strictly before the action
/// governs; deny wins a tie". With `any_forbid` set it instead flags the
/// action when any forbid precedes it.
inline std::set<ViolationKey> oracle_violations(const std::vector<Event>& edit_entries,
                                                const std::vector<Event>& comm_entries,
                                                const std::string& creator,
                                                bool any_forbid = false) {
    std::set<ViolationKey> out;
    std::vector<Event> performed;
    for (const auto* src : {&edit_entries, &comm_entries}) {
        for (const auto& e : *src) {
            if (!std::holds_alternative<Obligation>(e)) {
                performed.push_back(e);
            }
        }
    }
    for (const auto& e : performed) {
        std::string who;
        Verb verb{};
        std::uint64_t at = 0;
        if (const auto* ed = std::get_if<PerformedEdit>(&e)) {
            who = ed->by.str();
            verb = ed->verb;
            at = ed->clock.value();
        } else {
            const auto& s = std::get<PerformedShare>(e);
            who = s.by.str();
            verb = Verb::share;
            at = s.clock.value();
        }
        if (who == creator) {
            continue;
        }
        std::uint64_t best_clock = 0;
        std::uint64_t best_deny_clock = 0;
        for (const auto& x : comm_entries) {
            const auto* o = std::get_if<Obligation>(&x);
            if (o == nullptr || o->to.str() != who || o->verb != verb || o->clock.value() >= at) {
                continue;
            }
            best_clock = std::max(best_clock, o->clock.value());
            if (!o->allow) {
                best_deny_clock = std::max(best_deny_clock, o->clock.value());
            }
        }
        const std::uint64_t target = any_forbid ? best_deny_clock : best_clock;
        if (target == 0 || best_deny_clock != target) {
            continue;
        }
        // Among denies at the governing clock pick the smallest (grantor, origin).
        std::optional<ViolationKey> pick;
        for (const auto& x : comm_entries) {
            const auto* o = std::get_if<Obligation>(&x);
            if (o == nullptr || o->to.str() != who || o->verb != verb || o->allow ||
                o->clock.value() != target) {
                continue;
            }
            ViolationKey k{who,
                           verb,
                           at,
                           target,
                           o->origin.grantor.str(),
                           o->origin.grantor.str(),
                           o->origin.grantee.str(),
                           o->origin.share_clock.value()};
            if (!pick || k < *pick) {
                pick = k;
            }
        }
        out.insert(*pick);
    }
    return out;
}

inline std::vector<Event> entries_of(const Log& log) {
    return {log.entries().begin(), log.entries().end()};
}

/// Random comm/edit log pair over peers P1..P4 with P1 as creator.
/// Clocks are drawn from a small range so ties and overrides are common.
struct RandomLogs {
    Log edit{LogRole::edit};
    Log comm{LogRole::comm};
};

inline RandomLogs random_logs(std::mt19937_64& rng, std::size_t max_events = 12) {
    static const char* peers[] = {"P1", "P2", "P3", "P4"};
    static constexpr Verb verbs[] = {Verb::read, Verb::comment, Verb::delete_comment, Verb::share};
    auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    std::vector<Event> edits{edit(1, Verb::create, "P1")};
    std::vector<Event> comms;
    std::set<DedupKey> keys{dedup_key(edits.front())};
    const std::size_t n = 1 + pick(max_events);
    for (std::size_t i = 0; i < n; ++i) {
        const auto clock = 1 + pick(6);
        const char* by = peers[pick(4)];
        const char* to = peers[pick(4)];
        Event e = edit(clock, verbs[pick(3)], by);
        switch (pick(3)) {
            case 0:
                break;
            case 1:
                if (by == to) {
                    continue;
                }
                e = share(clock, by, to);
                break;
            default:
                if (by == to) {
                    continue;
                }
                e = oblig(clock, verbs[pick(4)], pick(2) == 0, by, to, 1 + pick(6));
                break;
        }
        if (!keys.insert(dedup_key(e)).second) {
            continue;
        }
        (std::holds_alternative<PerformedEdit>(e) ? edits : comms).push_back(e);
    }
    return {make_log(LogRole::edit, edits), make_log(LogRole::comm, comms)};
}

}  // namespace logtrust::test
