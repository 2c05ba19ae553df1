#include "golden.hpp"
#include "properties.hpp"

#include <doctest.h>

using namespace logtrust;
using namespace logtrust::test;

namespace {

std::vector<PeerId> peers(std::initializer_list<const char*> names) {
    std::vector<PeerId> out;
    for (const char* n : names) {
        out.emplace_back(n);
    }
    return out;
}

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::invalid_argument;
}

constexpr ObligationAtom kReadOk{Verb::read, true};

}  // namespace

TEST_CASE("three-peer example reproduces every recorded log") {
    const auto trace = run_scenario(load_scenario("scenarios/paper_example.json"));
    const auto golden = compare_golden(trace);
    CHECK(golden.checked >= 10);
    for (const auto& m : golden.mismatches) {
        FAIL_CHECK(m);
    }
}

TEST_CASE("a share logs the share and its obligations on one tick") {
    const auto ids = peers({"P1", "P2"});
    Simulator sim(ids);
    const std::vector<Verb> start{Verb::create, Verb::comment};
    sim.exec_batch(P("P1"), "d", start);
    const std::vector atoms{ObligationAtom{Verb::read, true}, ObligationAtom{Verb::share, true},
                            ObligationAtom{Verb::comment, false}};
    const auto& msg = sim.exec_share(P("P1"), P("P2"), "d", atoms);
    CHECK(msg.comm_log.size() == 4);
    for (const auto& e : msg.comm_log.entries()) {
        CHECK(clock_of(e) == C(2));
    }
    CHECK(sim.peer(P("P1")).clock.current() == 2);
    CHECK(sim.pending(P("P1"), P("P2"), "d") == 1);
}

TEST_CASE("share error cases") {
    const auto ids = peers({"P1", "P2", "P3"});
    Simulator sim(ids);
    sim.create_document(P("P1"), "d");
    CHECK(code_of([&] { sim.exec_share(P("P1"), P("P2"), "d", {}); }) ==
          ErrorCode::missing_obligation);
    CHECK(code_of([&] { sim.exec_share(P("P1"), P("P1"), "d", std::span(&kReadOk, 1)); }) ==
          ErrorCode::self_share);
    CHECK(code_of([&] { sim.exec_share(P("P2"), P("P3"), "d", std::span(&kReadOk, 1)); }) ==
          ErrorCode::document_not_held);
    const ObligationAtom create{Verb::create, true};
    CHECK(code_of([&] { sim.exec_share(P("P1"), P("P2"), "d", std::span(&create, 1)); }) ==
          ErrorCode::invalid_obligation);
    const std::vector conflicting{ObligationAtom{Verb::read, true}, ObligationAtom{Verb::read, false}};
    CHECK(code_of([&] { sim.exec_share(P("P1"), P("P2"), "d", conflicting); }) ==
          ErrorCode::internally_conflicting_set);

    // Once the pair has exchanged the document, an empty set is a plain send-back.
    sim.exec_share(P("P1"), P("P2"), "d", std::span(&kReadOk, 1));
    sim.exec_deliver(P("P2"), "d", P("P1"));
    CHECK_NOTHROW(sim.exec_share(P("P2"), P("P1"), "d", {}));
    CHECK(code_of([&] { sim.exec_share(P("P2"), P("P3"), "d", {}); }) ==
          ErrorCode::missing_obligation);
}

TEST_CASE("delivery consumes exactly one queued message") {
    const auto ids = peers({"P1", "P2"});
    Simulator sim(ids);
    sim.create_document(P("P1"), "d");
    sim.exec_share(P("P1"), P("P2"), "d", std::span(&kReadOk, 1));
    sim.exec_deliver(P("P2"), "d", P("P1"));
    CHECK(sim.pending(P("P1"), P("P2"), "d") == 0);
    CHECK(code_of([&] { sim.exec_deliver(P("P2"), "d", P("P1")); }) ==
          ErrorCode::no_pending_message);
    CHECK(sim.peer(P("P2")).workspace.contains("d"));
    CHECK(sim.peer(P("P2")).clock.current() == 1);
}

TEST_CASE("edits need a held document and draw consecutive ticks") {
    const auto ids = peers({"P1", "P2"});
    Simulator sim(ids);
    CHECK(code_of([&] { sim.exec_edit(P("P1"), "d", Verb::comment); }) ==
          ErrorCode::document_not_held);
    sim.create_document(P("P1"), "d");
    CHECK(code_of([&] { sim.create_document(P("P1"), "d"); }) == ErrorCode::document_exists);
    sim.exec_edit(P("P1"), "d", Verb::comment);
    sim.exec_edit(P("P1"), "d", Verb::read);
    const auto& log = sim.peer(P("P1")).workspace.at("d").edit_log;
    REQUIRE(log.size() == 3);
    CHECK(clock_of(log.entries()[1]) == C(2));
    CHECK(clock_of(log.entries()[2]) == C(3));
    CHECK(sim.peer(P("P1")).workspace.at("d").doc.comments.size() == 1);
    CHECK(code_of([&] { sim.exec_edit(P("Q"), "d", Verb::read); }) == ErrorCode::unknown_peer);
}

TEST_CASE("delete_comment removes the peer's latest comment") {
    const auto ids = peers({"P1"});
    Simulator sim(ids);
    sim.create_document(P("P1"), "d");
    sim.exec_edit(P("P1"), "d", Verb::comment);
    sim.exec_edit(P("P1"), "d", Verb::comment);
    sim.exec_edit(P("P1"), "d", Verb::delete_comment);
    const auto& comments = sim.peer(P("P1")).workspace.at("d").doc.comments;
    REQUIRE(comments.size() == 1);
    CHECK(comments.begin()->clock == C(2));
}

TEST_CASE("forbidden edits are applied and only surface in the audit") {
    Scenario sc;
    sc.peers = peers({"P1", "P2"});
    sc.commands = {
        CreateDoc{P("P1"), "d"},
        ShareDoc{P("P1"), P("P2"), "d", {{Verb::comment, false}}},
        DeliverDoc{P("P2"), "d", P("P1")},
        EditDoc{P("P2"), "d", Verb::comment, true},
        AuditDoc{P("P2"), "d"},
    };
    auto [trace, sim] = run_scenario_with_state(sc);
    CHECK(sim.peer(P("P2")).workspace.at("d").doc.comments.size() == 1);
    const auto report = trace.reports().back();
    REQUIRE(report.violations.size() == 1);
    CHECK(report.trust.at(P("P2")) == 0.5);
    CHECK(sim.peer(P("P2")).trust.at(P("P2")) == 0.5);
}

TEST_CASE("empty command list yields an empty trace") {
    Scenario sc;
    sc.peers = peers({"P1"});
    CHECK(run_scenario(sc).steps.empty());
    CHECK(run_scenario(load_scenario("scenarios/empty.json")).steps.empty());
}

TEST_CASE("failures carry the command index") {
    Scenario sc;
    sc.peers = peers({"P1", "P2"});
    sc.commands = {
        CreateDoc{P("P1"), "d"},
        EditDoc{P("P1"), "d", Verb::read, false},
        DeliverDoc{P("P2"), "d", P("P1")},
    };
    try {
        (void)run_scenario(sc);
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(e.command_index() == 2);
        CHECK(e.code() == ErrorCode::no_pending_message);
    }

    sc.commands = {CreateDoc{P("P1"), "d"}, EditDoc{P("P9"), "d", Verb::read, false}};
    try {
        validate_scenario(sc);
        FAIL("expected ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(e.command_index() == 1);
        CHECK(e.code() == ErrorCode::unknown_peer);
    }
}

TEST_CASE("generated scenarios are well formed and deterministic") {
    const auto r = prop_determinism(200);
    CHECK(r.cases == 200);
    for (const auto& f : r.failures) {
        FAIL_CHECK(f);
    }
    std::size_t with_violation = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto sc = generate_scenario(seed);
        CHECK(sc.peers.size() >= 2);
        CHECK(sc.peers.size() <= 4);
        CHECK(sc.commands.size() <= 12);
        CHECK(std::holds_alternative<AuditDoc>(sc.commands.back()));
        with_violation += run_scenario(sc).reports().back().violations.empty() ? 0 : 1;
    }
    CHECK(with_violation > 0);
}

TEST_CASE("an observer's verdict does not depend on delivery order") {
    const auto r = prop_delivery_order(200);
    CHECK(r.cases == 200);
    CHECK(r.exercised > 0);
    for (const auto& f : r.failures) {
        FAIL_CHECK(f);
    }
}

TEST_CASE("carry-forward trust compounds across audits") {
    Scenario sc;
    sc.peers = peers({"P1", "P2"});
    sc.commands = {
        CreateDoc{P("P1"), "d"},
        ShareDoc{P("P1"), P("P2"), "d", {{Verb::comment, false}}},
        DeliverDoc{P("P2"), "d", P("P1")},
        EditDoc{P("P2"), "d", Verb::comment, true},
        AuditDoc{P("P2"), "d"},
        AuditDoc{P("P2"), "d"},
    };
    const auto fresh = run_scenario(sc).reports();
    CHECK(fresh[0].trust.at(P("P2")) == 0.5);
    CHECK(fresh[1].trust.at(P("P2")) == 0.5);

    SimulatorOptions carry;
    carry.carry_forward_trust = true;
    const auto compounded = run_scenario(sc, default_trust_model(), carry).reports();
    CHECK(compounded[0].trust.at(P("P2")) == 0.5);
    CHECK(compounded[1].trust.at(P("P2")) == 0.25);
}
