#include <logtrust/scenario.hpp>

#include <algorithm>
#include <random>
#include <set>

namespace logtrust {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<const PeerId*> peers_named(const ScenarioCommand& cmd) {
    return std::visit(
        overloaded{
            [](const CreateDoc& c) { return std::vector<const PeerId*>{&c.peer}; },
            [](const EditDoc& c) { return std::vector<const PeerId*>{&c.peer}; },
            [](const BatchEdit& c) { return std::vector<const PeerId*>{&c.peer}; },
            [](const ShareDoc& c) { return std::vector<const PeerId*>{&c.from, &c.to}; },
            [](const DeliverDoc& c) { return std::vector<const PeerId*>{&c.to, &c.from}; },
            [](const AuditDoc& c) { return std::vector<const PeerId*>{&c.peer}; },
        },
        cmd);
}

std::vector<LogSnapshot> snapshot(const Simulator& sim) {
    std::vector<LogSnapshot> out;
    for (const auto& id : sim.peer_ids()) {
        for (const auto& [doc_id, ws] : sim.peer(id).workspace) {
            out.push_back(LogSnapshot{id, doc_id, ws});
        }
    }
    return out;
}

TraceStep execute(Simulator& sim, std::size_t index, const ScenarioCommand& cmd) {
    TraceStep step{index, {}, std::nullopt, std::nullopt};
    std::visit(overloaded{
                   [&](const CreateDoc& c) { sim.create_document(c.peer, c.doc_id); },
                   [&](const EditDoc& c) {
                       sim.exec_edit(c.peer, c.doc_id, c.verb, c.ignore_obligations);
                   },
                   [&](const BatchEdit& c) { sim.exec_batch(c.peer, c.doc_id, c.verbs); },
                   [&](const ShareDoc& c) {
                       step.sent = sim.exec_share(c.from, c.to, c.doc_id, c.obligations);
                   },
                   [&](const DeliverDoc& c) { sim.exec_deliver(c.to, c.doc_id, c.from); },
                   [&](const AuditDoc& c) { step.report = sim.exec_audit(c.peer, c.doc_id); },
               },
               cmd);
    step.logs = snapshot(sim);
    return step;
}

}  // namespace

std::vector<AuditReport> ScenarioTrace::reports() const {
    std::vector<AuditReport> out;
    for (const auto& s : steps) {
        if (s.report) {
            out.push_back(*s.report);
        }
    }
    return out;
}

void validate_scenario(const Scenario& scenario) {
    std::set<PeerId> declared;
    for (const auto& p : scenario.peers) {
        if (!declared.insert(p).second) {
            throw Error(ErrorCode::invalid_argument, "peer " + p.str() + " declared twice");
        }
    }
    for (std::size_t i = 0; i < scenario.commands.size(); ++i) {
        for (const auto* p : peers_named(scenario.commands[i])) {
            if (!declared.contains(*p)) {
                throw ScenarioError(i, Error(ErrorCode::unknown_peer,
                                             "peer " + p->str() + " is not declared"));
            }
        }
    }
}

std::pair<ScenarioTrace, Simulator> run_scenario_with_state(const Scenario& scenario,
                                                            std::shared_ptr<const TrustModel> model,
                                                            SimulatorOptions options) {
    validate_scenario(scenario);
    Simulator sim(scenario.peers, std::move(model), std::move(options));
    ScenarioTrace trace;
    for (std::size_t i = 0; i < scenario.commands.size(); ++i) {
        try {
            trace.steps.push_back(execute(sim, i, scenario.commands[i]));
        } catch (const ScenarioError&) {
            throw;
        } catch (const Error& e) {
            throw ScenarioError(i, e);
        }
    }
    return {std::move(trace), std::move(sim)};
}

ScenarioTrace run_scenario(const Scenario& scenario, std::shared_ptr<const TrustModel> model,
                           SimulatorOptions options) {
    return run_scenario_with_state(scenario, std::move(model), std::move(options)).first;
}

Scenario generate_scenario(std::uint64_t seed, const GeneratorOptions& options) {
    // Draws reduce the raw mt19937_64 output modulo n.
    std::mt19937_64 rng(seed);
    auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    auto chance = [&](unsigned percent) { return pick(100) < percent; };

    Scenario sc;
    const std::size_t peer_count = 2 + pick(std::max<std::size_t>(options.max_peers, 2) - 1);
    for (std::size_t i = 1; i <= peer_count; ++i) {
        sc.peers.emplace_back("P" + std::to_string(i));
    }
    const auto& doc = options.doc_id;
    const std::size_t budget = std::max<std::size_t>(options.max_commands, 2);

    std::vector<bool> holds(peer_count, false);
    std::vector<std::pair<std::size_t, std::size_t>> in_flight;  // (from, to) in send order
    std::set<std::pair<std::size_t, std::size_t>> shared;

    const std::size_t creator = pick(peer_count);
    holds[creator] = true;
    if (chance(30)) {
        sc.commands.emplace_back(BatchEdit{sc.peers[creator], doc, {Verb::create, Verb::comment}});
    } else {
        sc.commands.emplace_back(CreateDoc{sc.peers[creator], doc});
    }

    auto random_holder = [&] {
        std::vector<std::size_t> hs;
        for (std::size_t i = 0; i < peer_count; ++i) {
            if (holds[i]) {
                hs.push_back(i);
            }
        }
        return hs[pick(hs.size())];
    };
    static constexpr Verb edit_verbs[] = {Verb::read, Verb::comment, Verb::comment,
                                          Verb::delete_comment};
    static constexpr Verb obligation_verbs[] = {Verb::read, Verb::comment, Verb::delete_comment,
                                                Verb::share};

    while (sc.commands.size() + 1 < budget) {
        const auto roll = pick(100);
        if (roll < 30 && !in_flight.empty()) {
            const auto k = pick(in_flight.size());
            const auto [from, to] = in_flight[k];
            in_flight.erase(in_flight.begin() + static_cast<std::ptrdiff_t>(k));
            holds[to] = true;
            sc.commands.emplace_back(DeliverDoc{sc.peers[to], doc, sc.peers[from]});
        } else if (roll < 60) {
            const auto from = random_holder();
            auto to = pick(peer_count - 1);
            if (to >= from) {
                ++to;
            }
            std::vector<ObligationAtom> atoms;
            for (Verb v : obligation_verbs) {
                if (chance(40)) {
                    atoms.push_back({v, chance(50)});
                }
            }
            if (atoms.empty() && !shared.contains({to, from})) {
                atoms.push_back({obligation_verbs[pick(4)], chance(50)});
            }
            shared.insert({from, to});
            in_flight.emplace_back(from, to);
            sc.commands.emplace_back(ShareDoc{sc.peers[from], sc.peers[to], doc, std::move(atoms)});
        } else if (roll < 95) {
            const auto who = random_holder();
            sc.commands.emplace_back(
                EditDoc{sc.peers[who], doc, edit_verbs[pick(4)], chance(50)});
        } else {
            const auto who = random_holder();
            static constexpr Verb batch_verbs[] = {Verb::read, Verb::comment, Verb::delete_comment};
            const auto first = pick(3);
            const auto second = (first + 1 + pick(2)) % 3;
            sc.commands.emplace_back(
                BatchEdit{sc.peers[who], doc, {batch_verbs[first], batch_verbs[second]}});
        }
    }
    sc.commands.emplace_back(AuditDoc{sc.peers[random_holder()], doc});
    return sc;
}

}  // namespace logtrust
