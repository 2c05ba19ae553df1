#include <logtrust/obligation.hpp>

#include <algorithm>
#include <map>

namespace logtrust {

namespace {

// Position on the permit ladder; create is off the ladder.
std::optional<int> ladder_rank(Verb v) noexcept {
    switch (v) {
        case Verb::read:           return 1;
        case Verb::delete_comment: return 2;
        case Verb::comment:        return 3;
        case Verb::share:          return 4;
        case Verb::create:         return std::nullopt;
    }
    return std::nullopt;
}

std::map<Verb, bool> by_verb(std::span<const ObligationAtom> atoms) {
    std::map<Verb, bool> out;
    for (const auto& a : atoms) {
        out.emplace(a.verb, a.allow);
    }
    return out;
}

}  // namespace

std::string_view to_string(Ordering o) noexcept {
    switch (o) {
        case Ordering::greater:      return "greater";
        case Ordering::less:         return "less";
        case Ordering::equal:        return "equal";
        case Ordering::incomparable: return "incomparable";
    }
    return "unknown";
}

std::string_view to_string(ObligationStatus::Kind k) noexcept {
    switch (k) {
        case ObligationStatus::Kind::permit:      return "permit";
        case ObligationStatus::Kind::forbid:      return "forbid";
        case ObligationStatus::Kind::unspecified: return "unspecified";
    }
    return "unknown";
}

Ordering compare_atoms(const ObligationAtom& a, const ObligationAtom& b) noexcept {
    if (a == b) {
        return Ordering::equal;
    }
    if (a.verb == b.verb) {
        return a.allow ? Ordering::greater : Ordering::less;
    }
    const auto ra = ladder_rank(a.verb);
    const auto rb = ladder_rank(b.verb);
    if (!ra || !rb) {
        return Ordering::incomparable;
    }
    if (a.allow && b.allow) {
        return *ra > *rb ? Ordering::greater : Ordering::less;
    }
    if (a.allow != b.allow) {
        return a.allow ? Ordering::greater : Ordering::less;
    }
    return Ordering::incomparable;
}

void validate_atom_set(std::span<const ObligationAtom> atoms) {
    std::map<Verb, bool> seen;
    for (const auto& a : atoms) {
        auto [it, fresh] = seen.emplace(a.verb, a.allow);
        if (!fresh && it->second != a.allow) {
            throw Error(ErrorCode::internally_conflicting_set,
                        "both polarities of " + std::string(to_string(a.verb)));
        }
    }
}

Ordering compare_sets(std::span<const ObligationAtom> a, std::span<const ObligationAtom> b) {
    validate_atom_set(a);
    validate_atom_set(b);
    const auto ma = by_verb(a);
    const auto mb = by_verb(b);
    if (ma == mb) {
        return Ordering::equal;
    }
    bool a_wins = false;
    bool b_wins = false;
    for (const auto& [verb, allow] : ma) {
        auto it = mb.find(verb);
        if (it == mb.end() || it->second == allow) {
            continue;
        }
        (allow ? a_wins : b_wins) = true;
    }
    if (a_wins && !b_wins) {
        return Ordering::greater;
    }
    if (b_wins && !a_wins) {
        return Ordering::less;
    }
    return Ordering::incomparable;
}

std::vector<AtomConflict> detect_conflicts(std::span<const ObligationAtom> a,
                                           std::span<const ObligationAtom> b) {
    std::map<Verb, AtomConflict> found;
    for (const auto& x : a) {
        for (const auto& y : b) {
            if (x.verb == y.verb && x.allow != y.allow) {
                found.try_emplace(x.verb, AtomConflict{x.verb, x, y});
            }
        }
    }
    std::vector<AtomConflict> out;
    out.reserve(found.size());
    for (auto& [verb, c] : found) {
        out.push_back(c);
    }
    return out;
}

ObligationAtom resolve(std::span<const ObligationAtom> conflicting) {
    if (conflicting.empty()) {
        throw Error(ErrorCode::empty_input, "no obligations to resolve");
    }
    const auto deny = std::find_if(conflicting.begin(), conflicting.end(),
                                   [](const ObligationAtom& a) { return !a.allow; });
    return deny != conflicting.end() ? *deny : conflicting.front();
}

ObligationStatus effective_status(const Log& comm_log, const PeerId& peer, Verb verb, Clock at) {
    // Entries are clock-ordered, so the matches at the latest clock below
    // `at` are the last run of matches.
    std::vector<const Obligation*> latest;
    for (const auto& e : comm_log.entries()) {
        const auto* o = std::get_if<Obligation>(&e);
        if (o == nullptr || o->to != peer || o->verb != verb) {
            continue;
        }
        if (o->clock >= at) {
            break;
        }
        if (!latest.empty() && latest.front()->clock != o->clock) {
            latest.clear();
        }
        latest.push_back(o);
    }
    if (latest.empty()) {
        return ObligationStatus::unspecified();
    }
    std::vector<ObligationAtom> atoms;
    atoms.reserve(latest.size());
    for (const auto* o : latest) {
        atoms.push_back({o->verb, o->allow});
    }
    const auto winner = resolve(atoms);
    const auto* src = *std::find_if(latest.begin(), latest.end(), [&](const Obligation* o) {
        return o->allow == winner.allow;
    });
    ObligationSource source{src->origin, src->clock};
    return winner.allow ? ObligationStatus::permit(std::move(source))
                        : ObligationStatus::forbid(std::move(source));
}

}  // namespace logtrust
