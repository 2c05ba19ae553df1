/// @file simulator.hpp
/// @brief Deterministic multi-peer engine: workspaces, shares, deliveries, audits.

#pragma once

#include <logtrust/audit.hpp>

#include <deque>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace logtrust {

/// One peer's copy of a document together with its two logs.
struct Workspace {
    Document doc;
    Log edit_log{LogRole::edit};
    Log comm_log{LogRole::comm};

    bool operator==(const Workspace&) const = default;
};

struct PeerState {
    PeerId id;
    LogicalClock clock;
    std::map<std::string, Workspace> workspace;
    TrustTable trust;
};

/// A document copy in flight from one peer to another.
struct Message {
    PeerId from;
    PeerId to;
    Document doc;
    Log edit_log;
    Log comm_log;

    bool operator==(const Message&) const = default;
};

struct SimulatorOptions {
    AuditOptions audit;
    /// Seed each audit with the peer's trust table from its previous audit.
    bool carry_forward_trust = false;
};

/// Single-threaded, deterministic collaboration engine.
///
/// Edits are never blocked by obligations; compliance is judged afterwards
/// by audits. Messages are queued per (from, to, document) and only reach
/// the receiver on an explicit deliver, which makes out-of-order receipt
/// scriptable.
class Simulator {
public:
    explicit Simulator(std::span<const PeerId> peers,
                       std::shared_ptr<const TrustModel> model = default_trust_model(),
                       SimulatorOptions options = {});

    /// Creates a document owned by `peer` and logs create at its next tick.
    void create_document(const PeerId& peer, const std::string& doc_id);

    /// Logs one edit at the peer's next tick. `ignore_obligations` only
    /// annotates intent; edits are always applied.
    void exec_edit(const PeerId& peer, const std::string& doc_id, Verb verb,
                   bool ignore_obligations = false);

    /// Logs several edits stamped with a single tick. A leading create makes
    /// the peer the document's creator.
    void exec_batch(const PeerId& peer, const std::string& doc_id, std::span<const Verb> verbs);

    /// Logs the share and one obligation per atom at the sender's next tick
    /// and queues the document for `to`. Returns the queued message.
    const Message& exec_share(const PeerId& from, const PeerId& to, const std::string& doc_id,
                              std::span<const ObligationAtom> obligations);

    /// Takes the oldest queued message from -> to, draws one receiver tick,
    /// restamps newly received obligations addressed to the receiver, and
    /// merges logs and comments into the receiver's workspace.
    void exec_deliver(const PeerId& to, const std::string& doc_id, const PeerId& from);

    /// Audits the peer's current logs and stores the resulting trust table.
    AuditReport exec_audit(const PeerId& peer, const std::string& doc_id);

    [[nodiscard]] const PeerState& peer(const PeerId& id) const;
    [[nodiscard]] std::span<const PeerId> peer_ids() const noexcept { return order_; }
    [[nodiscard]] std::size_t pending(const PeerId& from, const PeerId& to,
                                      const std::string& doc_id) const;
    [[nodiscard]] const TrustModel& trust_model() const noexcept { return *model_; }

private:
    using Route = std::tuple<PeerId, PeerId, std::string>;

    PeerState& state(const PeerId& id);
    Workspace& held(PeerState& p, const std::string& doc_id);
    void apply_edit_effect(PeerState& p, Workspace& ws, Verb verb, Clock tick, unsigned seq);

    std::shared_ptr<const TrustModel> model_;
    SimulatorOptions options_;
    std::vector<PeerId> order_;
    std::map<PeerId, PeerState> peers_;
    std::map<Route, std::deque<Message>> queues_;
    std::set<Route> shared_;
};

/// Comm log copy sent along with a share: the sender's log minus its own
/// shares and obligations addressed to peers other than `to`.
Log outgoing_comm_log(const Log& comm_log, const PeerId& sender, const PeerId& to);

}  // namespace logtrust
