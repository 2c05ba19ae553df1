// logtrust: run collaboration scenarios and audit exported logs.
//
//   logtrust run scenarios/paper_example.json --format table
//   logtrust run --seed 7 --emit-scenario
//   logtrust audit P3_d_edit.json P3_d_comm.json
//   logtrust validate scenarios/*.json
//
// Exit codes: 0 clean, 1 violations found (audit only), 2 input errors.

#include <logtrust/serialize.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace logtrust;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitViolations = 1;
constexpr int kExitInputError = 2;

struct CommonFlags {
    std::string trust_model = "multiplicative:0.5";
    std::string format = "json";
    std::string mode = "prose";
};

void add_common(CLI::App* app, CommonFlags& flags) {
    app->add_option("--trust-model", flags.trust_model,
                    "multiplicative:<factor> or fixed:<delta>")
        ->capture_default_str();
    app->add_option("--format", flags.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
    app->add_option("--mode", flags.mode, "prose or literal")
        ->check(CLI::IsMember({"prose", "literal"}))
        ->capture_default_str();
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::parse_error, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_table(std::ostream& os, const AuditReport& r) {
    os << "audit by " << r.assessor.str() << " on " << r.doc_id << "\n";
    os << "violations: " << r.violations.size() << "\n";
    for (const auto& v : r.violations) {
        os << "  " << v.offender.str() << " " << to_string(v.verb) << " @" << v.action_clock.value()
           << " forbidden @" << v.governing.clock.value() << " by " << v.grantor.str()
           << " (share " << v.governing.origin.grantor.str() << "->"
           << v.governing.origin.grantee.str() << " @" << v.governing.origin.share_clock.value()
           << ")\n";
    }
    os << "trust:\n";
    std::size_t width = 0;
    for (const auto& [peer, value] : r.trust) {
        width = std::max(width, peer.str().size());
    }
    for (const auto& [peer, value] : r.trust) {
        os << "  " << std::left << std::setw(static_cast<int>(width)) << peer.str() << "  " << value
           << "\n";
    }
}

std::string diagnostic(const std::string& path, const std::string& text, const Error& e) {
    if (const auto* se = dynamic_cast<const ScenarioError*>(&e)) {
        if (auto line = command_line(text, se->command_index())) {
            return path + ":" + std::to_string(*line) + ": " + e.what();
        }
    }
    return path + ": " + e.what();
}

void export_logs(const Simulator& sim, const fs::path& dir) {
    fs::create_directories(dir);
    for (const auto& id : sim.peer_ids()) {
        for (const auto& [doc_id, ws] : sim.peer(id).workspace) {
            for (const auto* log : {&ws.edit_log, &ws.comm_log}) {
                LogFile file{doc_id, id, *log};
                const auto name =
                    id.str() + "_" + doc_id + "_" + std::string(to_string(log->role())) + ".json";
                std::ofstream(dir / name) << to_json(file).dump(2) << "\n";
            }
        }
    }
}

int cmd_run(const std::optional<std::string>& path, std::optional<std::uint64_t> seed,
            const CommonFlags& flags, bool trace_out, bool emit_scenario,
            const std::optional<std::string>& export_dir) {
    std::string text;
    std::string source = "<generated>";
    Scenario scenario;
    try {
        if (path) {
            source = *path;
            text = read_text(*path);
            scenario = scenario_from_json(parse_json_text(text, *path));
        } else {
            scenario = generate_scenario(seed.value_or(0));
        }
    } catch (const Error& e) {
        std::cerr << diagnostic(source, text, e) << "\n";
        return kExitInputError;
    }
    if (emit_scenario) {
        std::cout << to_json(scenario).dump(2) << "\n";
        return kExitClean;
    }
    try {
        SimulatorOptions opts;
        opts.audit.mode = *parse_mode(flags.mode);
        auto [trace, sim] =
            run_scenario_with_state(scenario, parse_trust_model(flags.trust_model), opts);
        if (export_dir) {
            export_logs(sim, *export_dir);
        }
        if (flags.format == "table") {
            for (const auto& r : trace.reports()) {
                print_table(std::cout, r);
            }
        } else if (trace_out) {
            std::cout << to_json(trace).dump(2) << "\n";
        } else {
            Json reports = Json::array();
            for (const auto& r : trace.reports()) {
                reports.push_back(to_json(r));
            }
            Json out;
            out["reports"] = std::move(reports);
            std::cout << out.dump(2) << "\n";
        }
    } catch (const Error& e) {
        std::cerr << diagnostic(source, text, e) << "\n";
        return kExitInputError;
    }
    return kExitClean;
}

int cmd_audit(const std::string& edit_path, const std::string& comm_path,
              const std::optional<std::string>& assessor, const CommonFlags& flags) {
    AuditReport report{PeerId("local"), "", {}, {}};
    try {
        auto edit = log_file_from_json(read_json_file(edit_path), LogRole::edit);
        auto comm = log_file_from_json(read_json_file(comm_path), LogRole::comm);
        if (edit.doc_id && comm.doc_id && *edit.doc_id != *comm.doc_id) {
            throw Error(ErrorCode::mixed_documents,
                        "edit log is for '" + *edit.doc_id + "', comm log is for '" +
                            *comm.doc_id + "'");
        }
        const auto doc_id = edit.doc_id.value_or(comm.doc_id.value_or(""));
        Document doc{doc_id, creator_from_log(edit.log), {}};
        PeerId who = assessor ? PeerId(*assessor)
                              : edit.peer.value_or(comm.peer.value_or(PeerId("local")));
        AuditOptions opts;
        opts.mode = *parse_mode(flags.mode);
        auto model = parse_trust_model(flags.trust_model);
        report = local_trust_assessment(edit.log, comm.log, doc, who, *model, opts);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    }
    if (flags.format == "table") {
        print_table(std::cout, report);
    } else {
        std::cout << to_json(report).dump(2) << "\n";
    }
    return report.violations.empty() ? kExitClean : kExitViolations;
}

int cmd_validate(const std::vector<std::string>& paths) {
    int rc = kExitClean;
    for (const auto& path : paths) {
        std::string text;
        try {
            text = read_text(path);
            auto j = parse_json_text(text, path);
            if (j.is_object() && j.contains("commands")) {
                auto sc = scenario_from_json(j);
                std::cout << path << ": scenario ok (" << sc.peers.size() << " peers, "
                          << sc.commands.size() << " commands)\n";
            } else {
                auto file = log_file_from_json(j);
                std::cout << path << ": " << to_string(file.log.role()) << " log ok ("
                          << file.log.size() << " entries)\n";
            }
        } catch (const Error& e) {
            std::cerr << diagnostic(path, text, e) << "\n";
            rc = kExitInputError;
        }
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"A-posteriori usage-control auditing for shared documents"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    std::optional<std::string> scenario_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> export_dir;
    bool trace_out = false;
    bool emit_scenario = false;
    auto* run = app.add_subcommand("run", "Execute a scenario file (or a generated one)");
    run->add_option("scenario", scenario_path, "Scenario JSON file");
    run->add_option("--seed", seed, "Seed for the random scenario generator");
    run->add_flag("--trace", trace_out, "Print the full per-command trace as JSON");
    run->add_flag("--emit-scenario", emit_scenario, "Print the scenario instead of running it");
    run->add_option("--export-dir", export_dir, "Write every peer's final logs to this directory");
    add_common(run, run_flags);

    CommonFlags audit_flags;
    std::string edit_path;
    std::string comm_path;
    std::optional<std::string> assessor;
    auto* audit = app.add_subcommand("audit", "Audit an edit log and a communication log");
    audit->add_option("edit_log", edit_path, "Edit log JSON")->required();
    audit->add_option("comm_log", comm_path, "Communication log JSON")->required();
    audit->add_option("--assessor", assessor, "Peer performing the assessment");
    add_common(audit, audit_flags);

    std::vector<std::string> validate_paths;
    auto* validate = app.add_subcommand("validate", "Check scenario or log files");
    validate->add_option("files", validate_paths, "Files to check")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInputError;
    }

    try {
        if (*run) {
            if (!scenario_path && !seed) {
                std::cerr << "run: give a scenario file or --seed\n";
                return kExitInputError;
            }
            return cmd_run(scenario_path, seed, run_flags, trace_out, emit_scenario, export_dir);
        }
        if (*audit) {
            return cmd_audit(edit_path, comm_path, assessor, audit_flags);
        }
        return cmd_validate(validate_paths);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
