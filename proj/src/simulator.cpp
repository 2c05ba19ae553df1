#include <logtrust/simulator.hpp>

#include <algorithm>

namespace logtrust {

std::string make_comment_id(const PeerId& author, Clock clock, unsigned seq) {
    auto id = author.str() + "@" + std::to_string(clock.value());
    if (seq > 0) {
        id += "#" + std::to_string(seq);
    }
    return id;
}

Log outgoing_comm_log(const Log& comm_log, const PeerId& sender, const PeerId& to) {
    std::vector<Event> kept;
    for (const auto& e : comm_log.entries()) {
        const PeerId* addressee = nullptr;
        if (const auto* s = std::get_if<PerformedShare>(&e)) {
            addressee = &s->to;
        } else if (const auto* o = std::get_if<Obligation>(&e)) {
            addressee = &o->to;
        }
        if (actor_of(e) == sender && addressee != nullptr && *addressee != to) {
            continue;
        }
        kept.push_back(e);
    }
    return Log::from_entries(LogRole::comm, std::move(kept));
}

Simulator::Simulator(std::span<const PeerId> peers, std::shared_ptr<const TrustModel> model,
                     SimulatorOptions options)
    : model_(std::move(model)), options_(std::move(options)) {
    if (!model_) {
        throw Error(ErrorCode::invalid_argument, "simulator needs a trust model");
    }
    for (const auto& id : peers) {
        if (!peers_.try_emplace(id, PeerState{id, LogicalClock{}, {}, {}}).second) {
            throw Error(ErrorCode::invalid_argument, "duplicate peer " + id.str());
        }
        order_.push_back(id);
    }
}

const PeerState& Simulator::peer(const PeerId& id) const {
    auto it = peers_.find(id);
    if (it == peers_.end()) {
        throw Error(ErrorCode::unknown_peer, id.str());
    }
    return it->second;
}

PeerState& Simulator::state(const PeerId& id) {
    return const_cast<PeerState&>(std::as_const(*this).peer(id));
}

Workspace& Simulator::held(PeerState& p, const std::string& doc_id) {
    auto it = p.workspace.find(doc_id);
    if (it == p.workspace.end()) {
        throw Error(ErrorCode::document_not_held, p.id.str() + " does not hold " + doc_id);
    }
    return it->second;
}

std::size_t Simulator::pending(const PeerId& from, const PeerId& to,
                               const std::string& doc_id) const {
    auto it = queues_.find(Route{from, to, doc_id});
    return it == queues_.end() ? 0 : it->second.size();
}

void Simulator::apply_edit_effect(PeerState& p, Workspace& ws, Verb verb, Clock tick,
                                  unsigned seq) {
    auto& comments = ws.doc.comments;
    if (verb == Verb::comment) {
        comments.insert(Comment{p.id, tick, make_comment_id(p.id, tick, seq)});
    } else if (verb == Verb::delete_comment) {
        // Most recent own comment; the set orders by (author, clock, id).
        const Comment* latest = nullptr;
        for (const auto& c : comments) {
            if (c.author == p.id) {
                latest = &c;
            }
        }
        if (latest != nullptr) {
            comments.erase(*latest);
        }
    }
}

void Simulator::create_document(const PeerId& peer, const std::string& doc_id) {
    const Verb create = Verb::create;
    exec_batch(peer, doc_id, std::span<const Verb>(&create, 1));
}

void Simulator::exec_edit(const PeerId& peer, const std::string& doc_id, Verb verb,
                          bool /*ignore_obligations*/) {
    if (verb == Verb::create || verb == Verb::share) {
        throw Error(ErrorCode::invalid_argument,
                    "edit verb must be read, comment or delete_comment");
    }
    exec_batch(peer, doc_id, std::span<const Verb>(&verb, 1));
}

void Simulator::exec_batch(const PeerId& peer, const std::string& doc_id,
                           std::span<const Verb> verbs) {
    if (verbs.empty()) {
        throw Error(ErrorCode::empty_input, "empty batch");
    }
    for (std::size_t i = 0; i < verbs.size(); ++i) {
        if (verbs[i] == Verb::share || (verbs[i] == Verb::create && i != 0)) {
            throw Error(ErrorCode::invalid_argument,
                        "a batch may only open with create and may not contain share");
        }
    }
    PeerState& p = state(peer);
    const bool creating = verbs.front() == Verb::create;
    if (creating && p.workspace.contains(doc_id)) {
        throw Error(ErrorCode::document_exists, p.id.str() + " already holds " + doc_id);
    }
    if (!creating) {
        held(p, doc_id);
    }

    const Clock tick = p.clock.next();
    if (creating) {
        p.workspace.emplace(doc_id, Workspace{Document{doc_id, p.id, {}}});
    }
    Workspace& ws = held(p, doc_id);
    std::vector<Event> group;
    group.reserve(verbs.size());
    unsigned comments = 0;
    for (Verb v : verbs) {
        group.emplace_back(PerformedEdit{tick, v, p.id});
        apply_edit_effect(p, ws, v, tick, v == Verb::comment ? comments++ : 0);
    }
    ws.edit_log = append_events(ws.edit_log, group);
}

const Message& Simulator::exec_share(const PeerId& from, const PeerId& to,
                                     const std::string& doc_id,
                                     std::span<const ObligationAtom> obligations) {
    if (from == to) {
        throw Error(ErrorCode::self_share, from.str() + " cannot share with itself");
    }
    PeerState& sender = state(from);
    state(to);
    Workspace& ws = held(sender, doc_id);

    validate_atom_set(obligations);
    std::set<ObligationAtom> atoms(obligations.begin(), obligations.end());
    for (const auto& a : atoms) {
        if (a.verb == Verb::create) {
            throw Error(ErrorCode::invalid_obligation, "create cannot be granted or denied");
        }
    }
    if (atoms.empty() && !shared_.contains(Route{to, from, doc_id})) {
        throw Error(ErrorCode::missing_obligation,
                    "sharing " + doc_id + " with " + to.str() + " needs at least one obligation");
    }

    const Clock tick = sender.clock.next();
    std::vector<Event> group;
    group.emplace_back(PerformedShare{tick, from, to});
    for (const auto& a : atoms) {
        group.emplace_back(Obligation{tick, a.verb, a.allow, from, to, OriginKey{from, to, tick}});
    }
    ws.comm_log = append_events(ws.comm_log, group);
    shared_.insert(Route{from, to, doc_id});

    auto& queue = queues_[Route{from, to, doc_id}];
    queue.push_back(Message{from, to, ws.doc, ws.edit_log, outgoing_comm_log(ws.comm_log, from, to)});
    return queue.back();
}

void Simulator::exec_deliver(const PeerId& to, const std::string& doc_id, const PeerId& from) {
    PeerState& receiver = state(to);
    state(from);
    auto it = queues_.find(Route{from, to, doc_id});
    if (it == queues_.end() || it->second.empty()) {
        throw Error(ErrorCode::no_pending_message,
                    "no message for " + to.str() + " from " + from.str() + " about " + doc_id);
    }
    Message msg = std::move(it->second.front());
    it->second.pop_front();

    const Clock tick = receiver.clock.next();
    auto ws_it = receiver.workspace.find(doc_id);
    if (ws_it == receiver.workspace.end()) {
        auto comm = remap_obligations_on_receipt(msg.comm_log, to, tick);
        receiver.workspace.emplace(
            doc_id, Workspace{std::move(msg.doc), std::move(msg.edit_log), std::move(comm)});
        return;
    }
    Workspace& ws = ws_it->second;
    auto comm = remap_obligations_on_receipt(msg.comm_log, to, tick, &ws.comm_log);
    ws.comm_log = merge_logs(ws.comm_log, comm);
    ws.edit_log = merge_logs(ws.edit_log, msg.edit_log);
    ws.doc.comments.insert(msg.doc.comments.begin(), msg.doc.comments.end());
}

AuditReport Simulator::exec_audit(const PeerId& peer, const std::string& doc_id) {
    PeerState& p = state(peer);
    Workspace& ws = held(p, doc_id);
    AuditOptions opts = options_.audit;
    if (options_.carry_forward_trust && !p.trust.empty()) {
        opts.prior = p.trust;
    }
    auto report = local_trust_assessment(ws.edit_log, ws.comm_log, ws.doc, p.id, *model_, opts);
    p.trust = report.trust;
    return report;
}

}  // namespace logtrust
