#include "properties.hpp"

#include <doctest.h>

#include <map>

using namespace logtrust;
using namespace logtrust::test;

TEST_CASE("logical clock starts at one and increments") {
    LogicalClock fresh;
    CHECK(fresh.next() == C(1));

    LogicalClock at_four(4);
    CHECK(at_four.next() == C(5));

    LogicalClock seq;
    CHECK(seq.next().value() == 1);
    CHECK(seq.next().value() == 2);
    CHECK(seq.next().value() == 3);
    CHECK(seq.current() == 3);
}

TEST_CASE("clock and peer id reject invalid values") {
    CHECK_THROWS_AS(Clock(0), Error);
    CHECK_THROWS_AS(PeerId(""), Error);
}

TEST_CASE("append_event") {
    const Log empty(LogRole::edit);
    const Log one = append_event(empty, edit(1, Verb::create, "P1"));
    REQUIRE(one.size() == 1);
    CHECK(one.entries()[0] == edit(1, Verb::create, "P1"));

    SUBCASE("duplicate is rejected") {
        try {
            (void)append_event(one, edit(1, Verb::create, "P1"));
            FAIL("expected DuplicateEvent");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::duplicate_event);
        }
    }

    SUBCASE("own clock must advance") {
        const Log at3 = append_event(empty, edit(3, Verb::comment, "P1"));
        try {
            (void)append_event(at3, edit(2, Verb::read, "P1"));
            FAIL("expected OrderViolation");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::order_violation);
        }
    }

    SUBCASE("other peers' clocks do not constrain the appender") {
        const Log at5 = append_event(empty, edit(5, Verb::comment, "P1"));
        const Log mixed = append_event(at5, edit(2, Verb::read, "P2"));
        REQUIRE(mixed.size() == 2);
        CHECK(mixed.entries()[0] == edit(2, Verb::read, "P2"));
    }

    SUBCASE("wrong role") {
        CHECK_THROWS_AS((void)append_event(empty, share(2, "P1", "P2")), Error);
    }

    SUBCASE("prior entries are unchanged") {
        const Log two = append_event(one, edit(2, Verb::comment, "P1"));
        CHECK(two.entries()[0] == one.entries()[0]);
        CHECK(one.size() == 1);
    }
}

TEST_CASE("append_events keeps a share and its obligations on one tick") {
    const std::vector<Event> group{share(2, "P1", "P2"), oblig(2, Verb::read, true, "P1", "P2", 2),
                                   oblig(2, Verb::share, true, "P1", "P2", 2),
                                   oblig(2, Verb::comment, false, "P1", "P2", 2)};
    const Log log = append_events(Log(LogRole::comm), group);
    CHECK(log.size() == 4);
    for (const auto& e : log.entries()) {
        CHECK(clock_of(e) == C(2));
    }
    // Obligations sort ahead of the share at the same clock and actor.
    CHECK(std::holds_alternative<PerformedShare>(log.entries().back()));

    const std::vector<Event> split{share(3, "P1", "P2"), oblig(4, Verb::read, true, "P1", "P2", 4)};
    CHECK_THROWS_AS((void)append_events(log, split), Error);
}

TEST_CASE("remap_obligations_on_receipt") {
    const Log sent = make_log(LogRole::comm, {share(2, "P1", "P2"),
                                              oblig(2, Verb::read, true, "P1", "P2", 2),
                                              oblig(2, Verb::share, true, "P1", "P2", 2),
                                              oblig(2, Verb::comment, false, "P1", "P2", 2)});

    SUBCASE("all obligations of one receipt get the receiver clock") {
        const Log got = remap_obligations_on_receipt(sent, P("P2"), C(1));
        const Log expected = make_log(LogRole::comm, {share(2, "P1", "P2"),
                                                      oblig(1, Verb::read, true, "P1", "P2", 2),
                                                      oblig(1, Verb::share, true, "P1", "P2", 2),
                                                      oblig(1, Verb::comment, false, "P1", "P2", 2)});
        CHECK(got == expected);
    }

    SUBCASE("later permit stamped with the receiver's clock") {
        const Log second = make_log(LogRole::comm, {share(4, "P1", "P2"),
                                                    oblig(4, Verb::comment, true, "P1", "P2", 4)});
        const Log got = remap_obligations_on_receipt(second, P("P2"), C(3));
        CHECK(got.entries()[0] == oblig(3, Verb::comment, true, "P1", "P2", 4));
    }

    SUBCASE("no obligation for the receiver leaves the log unchanged") {
        CHECK(remap_obligations_on_receipt(sent, P("P3"), C(7)) == sent);
    }

    SUBCASE("already held obligations keep their clocks") {
        const Log held = remap_obligations_on_receipt(sent, P("P2"), C(1));
        const Log resent = make_log(LogRole::comm, {share(2, "P1", "P2"),
                                                    oblig(2, Verb::read, true, "P1", "P2", 2),
                                                    oblig(4, Verb::comment, true, "P1", "P2", 4)});
        const Log got = remap_obligations_on_receipt(resent, P("P2"), C(3), &held);
        CHECK(got.contains(dedup_key(oblig(2, Verb::read, true, "P1", "P2", 2))));
        CHECK(*got.find(dedup_key(oblig(9, Verb::read, true, "P1", "P2", 2))) ==
              oblig(2, Verb::read, true, "P1", "P2", 2));
        CHECK(*got.find(dedup_key(oblig(9, Verb::comment, true, "P1", "P2", 4))) ==
              oblig(3, Verb::comment, true, "P1", "P2", 4));
    }
}

TEST_CASE("remap preserves the multiset of origin keys") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto logs = random_logs(rng);
        auto origins = [](const Log& log) {
            std::multiset<OriginKey> out;
            for (const auto& e : log.entries()) {
                if (const auto* o = std::get_if<Obligation>(&e)) {
                    out.insert(o->origin);
                }
            }
            return out;
        };
        const auto receiver = P(i % 2 == 0 ? "P2" : "P3");
        const auto remapped = remap_obligations_on_receipt(logs.comm, receiver, C(1 + i % 5));
        CHECK(origins(remapped) == origins(logs.comm));
        CHECK(remapped.size() == logs.comm.size());
    }
}

TEST_CASE("merge_logs") {
    SUBCASE("identity") {
        const Log l = make_log(LogRole::edit, {edit(1, Verb::create, "P1"), edit(2, Verb::read, "P2")});
        CHECK(merge_logs(l, Log(LogRole::edit)) == l);
        CHECK(merge_logs(Log(LogRole::edit), l) == l);
    }

    SUBCASE("mixed roles") {
        try {
            (void)merge_logs(Log(LogRole::edit), Log(LogRole::comm));
            FAIL("expected MixedRoles");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::mixed_roles);
        }
    }

    SUBCASE("grantee-stamped copy of an obligation survives") {
        const Log grantor_side = make_log(LogRole::comm, {share(2, "P1", "P2"),
                                                          oblig(2, Verb::comment, false, "P1", "P2", 2)});
        const Log grantee_side = make_log(LogRole::comm, {share(2, "P1", "P2"),
                                                          oblig(1, Verb::comment, false, "P1", "P2", 2)});
        const Log a = merge_logs(grantor_side, grantee_side);
        const Log b = merge_logs(grantee_side, grantor_side);
        CHECK(a == b);
        CHECK(a.size() == 2);
        CHECK(a.entries()[0] == oblig(1, Verb::comment, false, "P1", "P2", 2));
    }
}

TEST_CASE("merge ignores duplication and receipt order") {
    const auto r = prop_merge(300);
    CHECK(r.cases == 300);
    CHECK(r.exercised > 0);
    for (const auto& f : r.failures) {
        FAIL_CHECK(f);
    }
}

TEST_CASE("from_entries validates order and uniqueness") {
    std::vector<Event> unordered{edit(2, Verb::read, "P2"), edit(1, Verb::create, "P1")};
    try {
        (void)Log::from_entries(LogRole::edit, unordered);
        FAIL("expected UnorderedLog");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unordered_log);
    }

    // Same obligation at two clocks: distinct entries, one dedup key.
    std::vector<Event> dup{oblig(1, Verb::read, true, "P1", "P2", 2),
                           oblig(2, Verb::read, true, "P1", "P2", 2)};
    try {
        (void)Log::from_entries(LogRole::comm, dup);
        FAIL("expected DuplicateEvent");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::duplicate_event);
    }

    std::vector<Event> self{oblig(1, Verb::read, true, "P1", "P1", 1)};
    CHECK_THROWS_AS((void)Log::from_entries(LogRole::comm, self), Error);
}
