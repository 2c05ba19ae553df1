#include <logtrust/serialize.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace logtrust;

namespace {

Json parse(const std::string& text) { return parse_json_text(text, "<input>"); }

std::string run(const std::string& scenario_json, const std::string& trust_model,
                const std::string& mode, bool carry_forward, bool trace) {
    const auto scenario = scenario_from_json(parse(scenario_json));
    SimulatorOptions opts;
    opts.audit.mode = *parse_mode(mode);
    opts.carry_forward_trust = carry_forward;
    const auto result = run_scenario(scenario, parse_trust_model(trust_model), opts);
    if (trace) {
        return to_json(result).dump();
    }
    Json out;
    out["reports"] = Json::array();
    for (const auto& r : result.reports()) {
        out["reports"].push_back(to_json(r));
    }
    return out.dump();
}

std::string audit(const std::string& edit_json, const std::string& comm_json,
                  const std::optional<std::string>& assessor, const std::string& trust_model,
                  const std::string& mode) {
    const auto edit = log_file_from_json(parse(edit_json), LogRole::edit);
    const auto comm = log_file_from_json(parse(comm_json), LogRole::comm);
    if (edit.doc_id && comm.doc_id && *edit.doc_id != *comm.doc_id) {
        throw Error(ErrorCode::mixed_documents, "logs describe different documents");
    }
    const Document doc{edit.doc_id.value_or(comm.doc_id.value_or("")),
                       creator_from_log(edit.log), {}};
    const PeerId who = assessor ? PeerId(*assessor)
                                : edit.peer.value_or(comm.peer.value_or(PeerId("local")));
    AuditOptions opts;
    opts.mode = *parse_mode(mode);
    const auto model = parse_trust_model(trust_model);
    return to_json(local_trust_assessment(edit.log, comm.log, doc, who, *model, opts)).dump();
}

std::string merge(const std::string& a, const std::string& b) {
    const auto la = log_file_from_json(parse(a));
    const auto lb = log_file_from_json(parse(b), la.log.role());
    return to_json(merge_logs(la.log, lb.log)).dump();
}

Verb verb_arg(const std::string& s) {
    auto v = parse_verb(s);
    if (!v) {
        throw Error(ErrorCode::invalid_argument, "unknown verb '" + s + "'");
    }
    return *v;
}

std::string ordering_name(Ordering o) {
    switch (o) {
        case Ordering::less: return "less";
        case Ordering::equal: return "equal";
        case Ordering::greater: return "greater";
        case Ordering::incomparable: return "incomparable";
    }
    return "incomparable";
}

std::string status(const std::string& comm_json, const std::string& peer, const std::string& verb,
                   std::uint64_t at) {
    const auto comm = log_file_from_json(parse(comm_json), LogRole::comm);
    const auto s = effective_status(comm.log, PeerId(peer), verb_arg(verb), Clock(at));
    Json out;
    out["status"] = s.is_permit() ? "permit" : s.is_forbid() ? "forbid" : "unspecified";
    if (const auto src = s.source()) {
        out["clock"] = src->clock.value();
        out["grantor"] = src->origin.grantor.str();
    }
    return out.dump();
}

}  // namespace

PYBIND11_MODULE(_logtrust, m) {
    m.doc() = "Native core of the logtrust package; everything speaks JSON text.";

    py::register_exception<Error>(m, "LogtrustError", PyExc_ValueError);

    m.def("run_scenario", &run, py::arg("scenario_json"),
          py::arg("trust_model") = "multiplicative:0.5", py::arg("mode") = "prose",
          py::arg("carry_forward") = false, py::arg("trace") = false);
    m.def("audit", &audit, py::arg("edit_log_json"), py::arg("comm_log_json"),
          py::arg("assessor") = std::nullopt, py::arg("trust_model") = "multiplicative:0.5",
          py::arg("mode") = "prose");
    m.def("merge_logs", &merge, py::arg("a_json"), py::arg("b_json"));
    m.def(
        "compare_atoms",
        [](const std::string& va, bool aa, const std::string& vb, bool ab) {
            return ordering_name(compare_atoms({verb_arg(va), aa}, {verb_arg(vb), ab}));
        },
        py::arg("verb_a"), py::arg("allow_a"), py::arg("verb_b"), py::arg("allow_b"));
    m.def("effective_status", &status, py::arg("comm_log_json"), py::arg("peer"),
          py::arg("verb"), py::arg("at"));
    m.def(
        "generate_scenario",
        [](std::uint64_t seed) { return to_json(generate_scenario(seed)).dump(); },
        py::arg("seed"));
}
