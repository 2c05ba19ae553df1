#include <logtrust/log.hpp>

#include <algorithm>
#include <map>
#include <string>

namespace logtrust {

namespace {

void check_shape(const Event& e, LogRole role) {
    if (!belongs_to(e, role)) {
        throw Error(ErrorCode::mixed_roles, std::string(to_string(kind_of(e))) +
                                                " event cannot enter a " +
                                                std::string(to_string(role)) + " log");
    }
    if (const auto* s = std::get_if<PerformedShare>(&e); s && s->by == s->to) {
        throw Error(ErrorCode::invalid_argument, "share by " + s->by.str() + " to itself");
    }
    if (const auto* o = std::get_if<Obligation>(&e)) {
        if (o->by == o->to) {
            throw Error(ErrorCode::invalid_argument,
                        "obligation granted by " + o->by.str() + " to itself");
        }
        if (o->origin.grantor != o->by || o->origin.grantee != o->to) {
            throw Error(ErrorCode::invalid_argument, "obligation origin does not match by/to");
        }
        if (o->verb == Verb::create) {
            throw Error(ErrorCode::invalid_obligation, "create cannot be the subject of an obligation");
        }
    }
    if (const auto* ed = std::get_if<PerformedEdit>(&e); ed && ed->verb == Verb::share) {
        throw Error(ErrorCode::invalid_argument, "share must be logged as a share event");
    }
}

// True if `candidate` should replace `held` as the surviving copy of one
// obligation. Both carry the same dedup key.
bool preferred_copy(const Event& candidate, const Event& held) {
    const auto* c = std::get_if<Obligation>(&candidate);
    const auto* h = std::get_if<Obligation>(&held);
    if (c == nullptr || h == nullptr) {
        return false;
    }
    const bool c_stamped = c->clock != c->origin.share_clock;
    const bool h_stamped = h->clock != h->origin.share_clock;
    if (c_stamped != h_stamped) {
        return c_stamped;
    }
    return c->clock < h->clock;
}

void sort_entries(std::vector<Event>& entries) {
    std::sort(entries.begin(), entries.end(), event_less);
}

}  // namespace

std::string_view to_string(LogRole role) noexcept {
    return role == LogRole::edit ? "edit" : "comm";
}

bool belongs_to(const Event& e, LogRole role) noexcept {
    const bool edit = std::holds_alternative<PerformedEdit>(e);
    return role == LogRole::edit ? edit : !edit;
}

Clock generation_clock(const Event& e) noexcept {
    if (const auto* o = std::get_if<Obligation>(&e)) {
        return o->origin.share_clock;
    }
    return clock_of(e);
}

Log Log::from_entries(LogRole role, std::vector<Event> entries) {
    std::map<DedupKey, std::size_t> seen;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        check_shape(entries[i], role);
        if (i > 0 && !event_less(entries[i - 1], entries[i])) {
            throw Error(ErrorCode::unordered_log,
                        "entry " + std::to_string(i) + " is out of log order");
        }
        if (auto [it, fresh] = seen.emplace(dedup_key(entries[i]), i); !fresh) {
            throw Error(ErrorCode::duplicate_event, "entry " + std::to_string(i) +
                                                        " duplicates entry " +
                                                        std::to_string(it->second));
        }
    }
    Log log(role);
    log.entries_ = std::move(entries);
    return log;
}

const Event* Log::find(const DedupKey& key) const {
    for (const auto& e : entries_) {
        if (dedup_key(e) == key) {
            return &e;
        }
    }
    return nullptr;
}

Log append_event(const Log& log, const Event& event) {
    return append_events(log, std::span<const Event>(&event, 1));
}

Log append_events(const Log& log, std::span<const Event> group) {
    if (group.empty()) {
        throw Error(ErrorCode::empty_input, "nothing to append");
    }
    const PeerId& actor = actor_of(group.front());
    const Clock tick = generation_clock(group.front());
    std::map<DedupKey, bool> incoming;
    for (const auto& e : group) {
        check_shape(e, log.role());
        if (actor_of(e) != actor || generation_clock(e) != tick) {
            throw Error(ErrorCode::invalid_argument,
                        "an appended group must share one actor and one clock");
        }
        auto key = dedup_key(e);
        if (log.contains(key) || !incoming.emplace(std::move(key), true).second) {
            throw Error(ErrorCode::duplicate_event,
                        std::string(to_string(kind_of(e))) + " event by " + actor.str() +
                            " at clock " + std::to_string(clock_of(e).value()) +
                            " is already logged");
        }
    }
    for (const auto& e : log.entries()) {
        if (actor_of(e) == actor && generation_clock(e) >= tick) {
            throw Error(ErrorCode::order_violation,
                        actor.str() + " already logged clock " +
                            std::to_string(generation_clock(e).value()) + ", cannot append " +
                            std::to_string(tick.value()));
        }
    }

    Log out = log;
    out.entries_.insert(out.entries_.end(), group.begin(), group.end());
    sort_entries(out.entries_);
    return out;
}

Log merge_logs(const Log& local, const Log& received) {
    if (local.role() != received.role()) {
        throw Error(ErrorCode::mixed_roles, "cannot merge an edit log with a comm log");
    }
    std::map<DedupKey, Event> by_key;
    for (const auto* source : {&local, &received}) {
        for (const auto& e : source->entries()) {
            check_shape(e, local.role());
            auto [it, fresh] = by_key.try_emplace(dedup_key(e), e);
            if (!fresh && preferred_copy(e, it->second)) {
                it->second = e;
            }
        }
    }
    Log out(local.role());
    out.entries_.reserve(by_key.size());
    for (auto& [key, e] : by_key) {
        out.entries_.push_back(std::move(e));
    }
    sort_entries(out.entries_);
    return out;
}

Log remap_obligations_on_receipt(const Log& received, const PeerId& receiver,
                                 Clock receiver_clock, const Log* already_held) {
    Log out = received;
    bool touched = false;
    for (auto& e : out.entries_) {
        auto* o = std::get_if<Obligation>(&e);
        if (o == nullptr || o->to != receiver) {
            continue;
        }
        if (already_held != nullptr && already_held->contains(dedup_key(e))) {
            continue;
        }
        o->clock = receiver_clock;
        touched = true;
    }
    if (touched) {
        sort_entries(out.entries_);
    }
    return out;
}

}  // namespace logtrust
