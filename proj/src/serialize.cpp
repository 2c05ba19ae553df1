#include <logtrust/serialize.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace logtrust {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorCode::parse_error, what);
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) {
        fail("expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        fail(std::string("missing field '") + key + "'");
    }
    return *it;
}

std::string string_field(const Json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_string()) {
        fail(std::string("field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

PeerId peer_field(const Json& j, const char* key) {
    auto s = string_field(j, key);
    if (s.empty()) {
        fail(std::string("field '") + key + "' must be a non-empty peer id");
    }
    return PeerId(std::move(s));
}

Clock clock_field(const Json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
        fail(std::string("field '") + key + "' must be an integer >= 1");
    }
    return Clock(v.get<std::uint64_t>());
}

bool bool_field(const Json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_boolean()) {
        fail(std::string("field '") + key + "' must be a boolean");
    }
    return v.get<bool>();
}

Verb verb_field(const Json& j, const char* key) {
    auto s = string_field(j, key);
    auto v = parse_verb(s);
    if (!v) {
        fail("unknown verb '" + s + "'");
    }
    return *v;
}

Json origin_json(const OriginKey& o) {
    Json j;
    j["grantor"] = o.grantor.str();
    j["grantee"] = o.grantee.str();
    j["share_clock"] = o.share_clock.value();
    return j;
}

OriginKey origin_from_json(const Json& j) {
    return OriginKey{peer_field(j, "grantor"), peer_field(j, "grantee"),
                     clock_field(j, "share_clock")};
}

Json source_json(const ObligationSource& s, std::string_view status) {
    Json j;
    j["status"] = status;
    j["clock"] = s.clock.value();
    j["origin"] = origin_json(s.origin);
    return j;
}

Json atom_json(const ObligationAtom& a) {
    Json j;
    j["verb"] = to_string(a.verb);
    j["allow"] = a.allow;
    return j;
}

ObligationAtom atom_from_json(const Json& j) {
    return ObligationAtom{verb_field(j, "verb"), bool_field(j, "allow")};
}

std::optional<LogRole> parse_role(std::string_view s) {
    if (s == "edit") {
        return LogRole::edit;
    }
    if (s == "comm") {
        return LogRole::comm;
    }
    return std::nullopt;
}

ScenarioCommand command_from_json(const Json& j) {
    const auto op = string_field(j, "op");
    if (op == "create") {
        return CreateDoc{peer_field(j, "peer"), string_field(j, "doc_id")};
    }
    if (op == "edit") {
        bool ignore = false;
        if (j.contains("ignore_obligations")) {
            ignore = bool_field(j, "ignore_obligations");
        }
        return EditDoc{peer_field(j, "peer"), string_field(j, "doc_id"), verb_field(j, "verb"),
                       ignore};
    }
    if (op == "batch") {
        const auto& verbs = field(j, "verbs");
        if (!verbs.is_array()) {
            fail("field 'verbs' must be an array");
        }
        BatchEdit b{peer_field(j, "peer"), string_field(j, "doc_id"), {}};
        for (const auto& v : verbs) {
            if (!v.is_string() || !parse_verb(v.get<std::string>())) {
                fail("field 'verbs' holds an unknown verb");
            }
            b.verbs.push_back(*parse_verb(v.get<std::string>()));
        }
        return b;
    }
    if (op == "share") {
        ShareDoc s{peer_field(j, "from"), peer_field(j, "to"), string_field(j, "doc_id"), {}};
        if (j.contains("obligations")) {
            const auto& atoms = field(j, "obligations");
            if (!atoms.is_array()) {
                fail("field 'obligations' must be an array");
            }
            for (const auto& a : atoms) {
                s.obligations.push_back(atom_from_json(a));
            }
        }
        return s;
    }
    if (op == "deliver") {
        return DeliverDoc{peer_field(j, "to"), string_field(j, "doc_id"), peer_field(j, "from")};
    }
    if (op == "audit") {
        return AuditDoc{peer_field(j, "peer"), string_field(j, "doc_id")};
    }
    fail("unknown op '" + op + "'");
}

}  // namespace

Json to_json(const Event& e) {
    Json j;
    j["clock"] = clock_of(e).value();
    j["kind"] = to_string(kind_of(e));
    j["verb"] = to_string(verb_of(e));
    std::visit(overloaded{
                   [&](const PerformedEdit& ed) { j["by"] = ed.by.str(); },
                   [&](const PerformedShare& s) {
                       j["by"] = s.by.str();
                       j["to"] = s.to.str();
                   },
                   [&](const Obligation& o) {
                       j["allow"] = o.allow;
                       j["by"] = o.by.str();
                       j["to"] = o.to.str();
                       j["origin"] = origin_json(o.origin);
                   },
               },
               e);
    return j;
}

Event event_from_json(const Json& j) {
    const auto kind = string_field(j, "kind");
    const auto clock = clock_field(j, "clock");
    const auto verb = verb_field(j, "verb");
    if (kind == "edit") {
        return PerformedEdit{clock, verb, peer_field(j, "by")};
    }
    if (kind == "share") {
        if (verb != Verb::share) {
            fail("share events must carry verb 'share'");
        }
        return PerformedShare{clock, peer_field(j, "by"), peer_field(j, "to")};
    }
    if (kind == "obligation") {
        return Obligation{clock,
                          verb,
                          bool_field(j, "allow"),
                          peer_field(j, "by"),
                          peer_field(j, "to"),
                          origin_from_json(field(j, "origin"))};
    }
    fail("unknown event kind '" + kind + "'");
}

Json to_json(const Log& log) {
    Json j = Json::array();
    for (const auto& e : log.entries()) {
        j.push_back(to_json(e));
    }
    return j;
}

Log log_from_json(const Json& j, std::optional<LogRole> role, LogRole fallback) {
    if (!j.is_array()) {
        fail("a log must be a JSON array of events");
    }
    std::vector<Event> entries;
    entries.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            entries.push_back(event_from_json(j[i]));
        } catch (const Error& e) {
            fail("entry " + std::to_string(i) + ": " + e.what());
        }
    }
    if (!role) {
        role = entries.empty() ? fallback
               : std::holds_alternative<PerformedEdit>(entries.front()) ? LogRole::edit
                                                                        : LogRole::comm;
    }
    return Log::from_entries(*role, std::move(entries));
}

Json to_json(const LogFile& file) {
    Json j;
    if (file.doc_id) {
        j["doc_id"] = *file.doc_id;
    }
    j["role"] = to_string(file.log.role());
    if (file.peer) {
        j["peer"] = file.peer->str();
    }
    j["entries"] = to_json(file.log);
    return j;
}

LogFile log_file_from_json(const Json& j, std::optional<LogRole> expected) {
    if (j.is_array()) {
        return LogFile{std::nullopt, std::nullopt, log_from_json(j, expected, expected.value_or(LogRole::comm))};
    }
    if (!j.is_object()) {
        fail("a log file must be an event array or an object with 'entries'");
    }
    std::optional<LogRole> role = expected;
    if (j.contains("role")) {
        auto declared = parse_role(string_field(j, "role"));
        if (!declared) {
            fail("field 'role' must be 'edit' or 'comm'");
        }
        if (expected && *expected != *declared) {
            throw Error(ErrorCode::mixed_roles, "expected a " + std::string(to_string(*expected)) +
                                                    " log, file declares " +
                                                    std::string(to_string(*declared)));
        }
        role = declared;
    }
    LogFile out{std::nullopt, std::nullopt,
                log_from_json(field(j, "entries"), role, role.value_or(LogRole::comm))};
    if (j.contains("doc_id")) {
        out.doc_id = string_field(j, "doc_id");
    }
    if (j.contains("peer")) {
        out.peer = peer_field(j, "peer");
    }
    return out;
}

Json to_json(const Violation& v) {
    Json j;
    j["offender"] = v.offender.str();
    j["verb"] = to_string(v.verb);
    j["action_clock"] = v.action_clock.value();
    j["governing"] = source_json(v.governing, "forbid");
    j["grantor"] = v.grantor.str();
    return j;
}

Json to_json(const TrustTable& table) {
    Json j = Json::object();
    for (const auto& [peer, value] : table) {
        j[peer.str()] = value;
    }
    return j;
}

Json to_json(const AuditReport& report) {
    Json j;
    j["assessor"] = report.assessor.str();
    j["doc_id"] = report.doc_id;
    j["violations"] = Json::array();
    for (const auto& v : report.violations) {
        j["violations"].push_back(to_json(v));
    }
    j["trust"] = to_json(report.trust);
    return j;
}

Json to_json(const Workspace& ws) {
    Json j;
    j["doc_id"] = ws.doc.doc_id;
    j["creator"] = ws.doc.creator.str();
    j["comments"] = Json::array();
    for (const auto& c : ws.doc.comments) {
        Json cj;
        cj["author"] = c.author.str();
        cj["comment_id"] = c.comment_id;
        j["comments"].push_back(std::move(cj));
    }
    j["edit_log"] = to_json(ws.edit_log);
    j["comm_log"] = to_json(ws.comm_log);
    return j;
}

Json to_json(const Message& m) {
    Json j;
    j["from"] = m.from.str();
    j["to"] = m.to.str();
    j["doc_id"] = m.doc.doc_id;
    j["edit_log"] = to_json(m.edit_log);
    j["comm_log"] = to_json(m.comm_log);
    return j;
}

Json to_json(const TraceStep& step) {
    Json j;
    j["command"] = step.command_index;
    j["peers"] = Json::array();
    for (const auto& snap : step.logs) {
        Json pj;
        pj["peer"] = snap.peer.str();
        pj["workspace"] = to_json(snap.workspace);
        j["peers"].push_back(std::move(pj));
    }
    if (step.sent) {
        j["sent"] = to_json(*step.sent);
    }
    if (step.report) {
        j["report"] = to_json(*step.report);
    }
    return j;
}

Json to_json(const ScenarioTrace& trace) {
    Json j = Json::array();
    for (const auto& s : trace.steps) {
        j.push_back(to_json(s));
    }
    return j;
}

Json to_json(const ScenarioCommand& cmd) {
    Json j;
    std::visit(overloaded{
                   [&](const CreateDoc& c) {
                       j["op"] = "create";
                       j["peer"] = c.peer.str();
                       j["doc_id"] = c.doc_id;
                   },
                   [&](const EditDoc& c) {
                       j["op"] = "edit";
                       j["peer"] = c.peer.str();
                       j["doc_id"] = c.doc_id;
                       j["verb"] = to_string(c.verb);
                       j["ignore_obligations"] = c.ignore_obligations;
                   },
                   [&](const BatchEdit& c) {
                       j["op"] = "batch";
                       j["peer"] = c.peer.str();
                       j["doc_id"] = c.doc_id;
                       j["verbs"] = Json::array();
                       for (Verb v : c.verbs) {
                           j["verbs"].push_back(to_string(v));
                       }
                   },
                   [&](const ShareDoc& c) {
                       j["op"] = "share";
                       j["from"] = c.from.str();
                       j["to"] = c.to.str();
                       j["doc_id"] = c.doc_id;
                       j["obligations"] = Json::array();
                       for (const auto& a : c.obligations) {
                           j["obligations"].push_back(atom_json(a));
                       }
                   },
                   [&](const DeliverDoc& c) {
                       j["op"] = "deliver";
                       j["to"] = c.to.str();
                       j["doc_id"] = c.doc_id;
                       j["from"] = c.from.str();
                   },
                   [&](const AuditDoc& c) {
                       j["op"] = "audit";
                       j["peer"] = c.peer.str();
                       j["doc_id"] = c.doc_id;
                   },
               },
               cmd);
    return j;
}

Json to_json(const Scenario& scenario) {
    Json j;
    j["peers"] = Json::array();
    for (const auto& p : scenario.peers) {
        j["peers"].push_back(p.str());
    }
    j["commands"] = Json::array();
    for (const auto& c : scenario.commands) {
        j["commands"].push_back(to_json(c));
    }
    return j;
}

Scenario scenario_from_json(const Json& j) {
    if (!j.is_object()) {
        fail("a scenario must be an object with 'peers' and 'commands'");
    }
    const auto& peers = field(j, "peers");
    if (!peers.is_array()) {
        fail("field 'peers' must be an array");
    }
    Scenario sc;
    for (const auto& p : peers) {
        if (!p.is_string() || p.get<std::string>().empty()) {
            fail("peer ids must be non-empty strings");
        }
        sc.peers.emplace_back(p.get<std::string>());
    }
    const auto& commands = field(j, "commands");
    if (!commands.is_array()) {
        fail("field 'commands' must be an array");
    }
    for (std::size_t i = 0; i < commands.size(); ++i) {
        try {
            sc.commands.push_back(command_from_json(commands[i]));
        } catch (const Error& e) {
            throw ScenarioError(i, e);
        }
    }
    validate_scenario(sc);
    return sc;
}

Json parse_json_text(const std::string& text, const std::string& source_name) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::parse_error, source_name + ":" + std::to_string(line) + ":" +
                                                std::to_string(col) + ": malformed JSON");
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::parse_error, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

std::optional<std::size_t> command_line(std::string_view text, std::size_t index) {
    // Minimal scanner: tracks nesting and string literals, enough to find
    // where array elements begin without building a DOM.
    std::size_t line = 1;
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    std::string last_key;
    std::string current;
    int commands_depth = -1;  // depth inside the "commands" array
    std::size_t element = 0;
    bool expect_element = false;
    for (char ch : text) {
        if (ch == '\n') {
            ++line;
        }
        if (in_string) {
            if (escaped) {
                escaped = false;
            } else if (ch == '\\') {
                escaped = true;
            } else if (ch == '"') {
                in_string = false;
                last_key = current;
            } else {
                current.push_back(ch);
            }
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch)) != 0) {
            continue;
        }
        if (expect_element && depth == commands_depth && ch != ']') {
            if (element == index) {
                return line;
            }
            expect_element = false;
        }
        switch (ch) {
            case '"':
                in_string = true;
                current.clear();
                break;
            case '[':
                ++depth;
                if (commands_depth < 0 && depth == 2 && last_key == "commands") {
                    commands_depth = depth;
                    expect_element = true;
                }
                break;
            case '{':
                ++depth;
                break;
            case ']':
            case '}':
                if (depth == commands_depth) {
                    return std::nullopt;
                }
                --depth;
                break;
            case ',':
                if (depth == commands_depth) {
                    ++element;
                    expect_element = true;
                }
                break;
            default:
                break;
        }
    }
    return std::nullopt;
}

}  // namespace logtrust
