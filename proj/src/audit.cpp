#include <logtrust/audit.hpp>

#include <algorithm>
#include <ranges>
#include <tuple>

namespace logtrust {

namespace {

// Backward scan over the comm log: the first forbid found for (peer, verb)
// before `at` marks the action, regardless of later permits.
std::optional<ObligationSource> literal_scan(const Log& comm_log, const PeerId& peer, Verb verb,
                                             Clock at) {
    for (const auto& e : std::views::reverse(comm_log.entries())) {
        const auto* o = std::get_if<Obligation>(&e);
        if (o != nullptr && o->to == peer && o->clock < at && o->verb == verb && !o->allow) {
            return ObligationSource{o->origin, o->clock};
        }
    }
    return std::nullopt;
}

void check_roles(const Log& edit_log, const Log& comm_log) {
    if (edit_log.role() != LogRole::edit || comm_log.role() != LogRole::comm) {
        throw Error(ErrorCode::mixed_roles, "audit expects an edit log and a comm log");
    }
}

}  // namespace

std::string_view to_string(AlgorithmMode mode) noexcept {
    return mode == AlgorithmMode::prose ? "prose" : "literal";
}

std::optional<AlgorithmMode> parse_mode(std::string_view text) noexcept {
    if (text == "prose") {
        return AlgorithmMode::prose;
    }
    if (text == "literal") {
        return AlgorithmMode::literal;
    }
    return std::nullopt;
}

PeerId creator_from_log(const Log& edit_log) {
    for (const auto& e : edit_log.entries()) {
        if (const auto* ed = std::get_if<PerformedEdit>(&e); ed && ed->verb == Verb::create) {
            return ed->by;
        }
    }
    throw Error(ErrorCode::unknown_creator, "edit log has no create event");
}

std::vector<Violation> detect_violations(const Log& edit_log, const Log& comm_log,
                                         const Document& doc, AlgorithmMode mode) {
    check_roles(edit_log, comm_log);
    if (!edit_log.empty()) {
        bool has_create = false;
        for (const auto& e : edit_log.entries()) {
            const auto& ed = std::get<PerformedEdit>(e);
            if (ed.verb != Verb::create) {
                continue;
            }
            has_create = true;
            if (ed.by != doc.creator) {
                throw Error(ErrorCode::creator_mismatch,
                            ed.by.str() + " logged create but the creator is " + doc.creator.str());
            }
        }
        if (!has_create) {
            throw Error(ErrorCode::unknown_creator, "edit log has no create event");
        }
    }

    std::vector<Violation> out;
    auto check = [&](const Event& e) {
        const PeerId& actor = actor_of(e);
        if (actor == doc.creator) {
            return;
        }
        const Verb verb = verb_of(e);
        const Clock at = clock_of(e);
        std::optional<ObligationSource> governing;
        if (mode == AlgorithmMode::prose) {
            auto status = effective_status(comm_log, actor, verb, at);
            if (status.is_forbid()) {
                governing = *status.source();
            }
        } else {
            governing = literal_scan(comm_log, actor, verb, at);
        }
        if (governing) {
            PeerId grantor = governing->origin.grantor;
            out.push_back(Violation{actor, verb, at, std::move(*governing), std::move(grantor)});
        }
    };
    for (const auto* log : {&edit_log, &comm_log}) {
        for (const auto& e : log->entries()) {
            if (is_performed(e)) {
                check(e);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.offender, a.action_clock, a.verb, a.governing) <
               std::tie(b.offender, b.action_clock, b.verb, b.governing);
    });
    return out;
}

AuditReport local_trust_assessment(const Log& edit_log, const Log& comm_log, const Document& doc,
                                   const PeerId& assessor, const TrustModel& model,
                                   const AuditOptions& options) {
    auto violations = detect_violations(edit_log, comm_log, doc, options.mode);

    TrustTable seed = options.prior.value_or(TrustTable{});
    for (const auto* log : {&edit_log, &comm_log}) {
        for (const auto& e : log->entries()) {
            seed.try_emplace(actor_of(e), model.max_value());
            if (const auto* s = std::get_if<PerformedShare>(&e)) {
                seed.try_emplace(s->to, model.max_value());
            } else if (const auto* o = std::get_if<Obligation>(&e)) {
                seed.try_emplace(o->to, model.max_value());
            }
        }
    }
    auto trust = apply_violations(std::move(seed), violations, model);
    return AuditReport{assessor, doc.doc_id, std::move(violations), std::move(trust)};
}

}  // namespace logtrust
