// mst: checker and desk-scale executor for asynchronous multiparty protocols.
//
// Verbs: parse, project, implementable, verify, refine, decorate, avail,
// simulate, gen-gn. Exit codes: 0 pass/success, 1 check failed, 2 usage or
// input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "mst/automata.hpp"
#include "mst/checks.hpp"
#include "mst/decoration.hpp"
#include "mst/global_type.hpp"
#include "mst/json_io.hpp"
#include "mst/machine.hpp"
#include "mst/messages.hpp"
#include "mst/oracle.hpp"

namespace {

using nlohmann::json;

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

mst::GlobalType load_type(const std::string& path) {
    try {
        return mst::parse_global_type(read_file(path));
    } catch (const mst::ParseError& e) {
        throw CliError(path + ":" + e.what());
    }
}

mst::GlobalType load_valid_type(const std::string& path) {
    mst::GlobalType g = load_type(path);
    const auto violations = mst::validate(g);
    if (!violations.empty()) {
        std::string msg = path + ": invalid global type:";
        for (const auto& v : violations) {
            msg += "\n  node " + std::to_string(v.node) + ": " + to_string(v.rule) + " (" +
                   v.detail + ")";
        }
        throw CliError(msg);
    }
    return g;
}

mst::LocalMachine load_machine(const std::string& path) {
    try {
        return mst::parse_machine(read_file(path));
    } catch (const mst::MachineParseError& e) {
        throw CliError(path + ": " + e.what());
    }
}

struct Output {
    bool json_mode = false;
    bool quiet = false;

    void emit(const json& doc, const std::string& human) const {
        if (json_mode) {
            std::cout << doc.dump(2) << "\n";
        } else if (!quiet) {
            std::cout << human;
        }
    }
};

std::string verdict_to_text(const mst::Verdict& v) {
    std::ostringstream out;
    if (v.pass) {
        out << "pass\n";
        return out.str();
    }
    out << "fail (" << v.violations.size() << " violation" << (v.violations.size() == 1 ? "" : "s")
        << ")\n";
    for (const auto& viol : v.violations) {
        out << "  [" << viol.condition << "] role " << viol.role.name << ", state '" << viol.state
            << "'";
        if (!viol.transitions.empty()) {
            out << ", transitions:";
            for (const auto& t : viol.transitions) out << " {" << t << "}";
        }
        if (viol.witness_node) out << ", node " << *viol.witness_node;
        if (viol.witness_event) out << ", event " << to_string(*viol.witness_event);
        out << "\n";
    }
    return out.str();
}

std::map<mst::Role, mst::LocalMachine> bind_machines(const std::vector<std::string>& specs) {
    std::map<mst::Role, mst::LocalMachine> out;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size()) {
            throw CliError("--machine expects role=<file>, got '" + spec + "'");
        }
        const mst::Role role{spec.substr(0, eq)};
        mst::LocalMachine m = load_machine(spec.substr(eq + 1));
        if (!(m.role == role)) {
            throw CliError("machine file '" + spec.substr(eq + 1) + "' declares role '" +
                           m.role.name + "', bound to '" + role.name + "'");
        }
        if (!out.emplace(role, std::move(m)).second) {
            throw CliError("role '" + role.name + "' bound twice");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"checker for asynchronous multiparty protocols"};
    app.require_subcommand(1);
    app.fallthrough();

    Output out;
    std::string seed;  // reserved; every algorithm is deterministic
    app.add_flag("--json", out.json_mode, "emit one JSON document on stdout");
    app.add_flag("--quiet", out.quiet, "suppress human-readable output");
    app.add_option("--seed", seed, "reserved, unused")->group("");

    std::string type_path, machine_path, against_path, candidate_path, role_name, out_path;
    std::vector<std::string> machine_specs;
    int node_id = 0;
    int depth = 12, channel = 2, gn = 1;
    bool precheck = false;

    auto* cmd_parse = app.add_subcommand("parse", "parse and validate a global type");
    cmd_parse->add_option("file", type_path)->required();

    auto* cmd_project = app.add_subcommand("project", "subset construction for one role");
    cmd_project->add_option("file", type_path)->required();
    cmd_project->add_option("--role", role_name)->required();

    auto* cmd_impl = app.add_subcommand("implementable", "check implementability of a global type");
    cmd_impl->add_option("file", type_path)->required();

    auto* cmd_verify = app.add_subcommand("verify", "check that a CSM implements a global type");
    cmd_verify->add_option("file", type_path)->required();
    cmd_verify->add_option("--machine", machine_specs, "role=<machine file>, one per role");
    cmd_verify->add_flag("--precheck", precheck, "run the implementability check first and warn");

    auto* cmd_refine = app.add_subcommand(
        "refine", "check that a candidate machine can substitute for one role");
    cmd_refine->add_option("file", type_path)->required();
    cmd_refine->add_option("--role", role_name)->required();
    cmd_refine->add_option("--candidate", candidate_path)->required();
    cmd_refine->add_option("--against", against_path,
                           "supertype machine; defaults to the subset construction");

    auto* cmd_decorate = app.add_subcommand("decorate", "state decoration of a machine");
    cmd_decorate->add_option("file", type_path)->required();
    cmd_decorate->add_option("machine", machine_path)->required();

    auto* cmd_avail = app.add_subcommand("avail", "available messages at a node");
    cmd_avail->add_option("file", type_path)->required();
    cmd_avail->add_option("--role", role_name)->required();
    cmd_avail->add_option("--node", node_id)->required();

    auto* cmd_sim = app.add_subcommand("simulate", "bounded execution of a CSM");
    cmd_sim->add_option("file", type_path)->required();
    cmd_sim->add_option("--machine", machine_specs,
                        "role=<machine file>; unbound roles use their subset construction");
    cmd_sim->add_option("--depth", depth, "event bound")->capture_default_str();
    cmd_sim->add_option("--channel", channel, "per-channel bound")->capture_default_str();

    auto* cmd_gen = app.add_subcommand("gen-gn", "emit the n-th member of the G_n family");
    cmd_gen->add_option("n", gn)->required();
    cmd_gen->add_option("-o,--out", out_path, "write to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_parse) {
            mst::GlobalType g;
            try {
                g = mst::parse_global_type(read_file(type_path));
            } catch (const mst::ParseError& e) {
                std::cerr << type_path << ":" << e.what() << "\n";
                return 2;
            }
            const auto violations = mst::validate(g);
            json doc;
            doc["pass"] = violations.empty();
            doc["violations"] = mst::type_violations_to_json(violations);
            doc["pretty"] = mst::pretty(g);
            doc["nodes"] = g.node_count();
            std::ostringstream human;
            if (violations.empty()) {
                human << "valid (" << g.node_count() << " nodes)\n" << mst::pretty(g) << "\n";
            } else {
                human << "invalid:\n";
                for (const auto& v : violations) {
                    human << "  node " << v.node << ": " << to_string(v.rule) << " (" << v.detail
                          << ")\n";
                }
            }
            out.emit(doc, human.str());
            return violations.empty() ? 0 : 1;
        }

        if (*cmd_project) {
            const mst::GlobalType g = load_valid_type(type_path);
            const auto roles = mst::roles_of(g);
            const mst::Role role{role_name};
            if (std::find(roles.begin(), roles.end(), role) == roles.end()) {
                throw CliError("role '" + role_name + "' does not occur in the type");
            }
            const mst::LocalMachine m = mst::subset_construction(g, role);
            out.emit(mst::machine_to_json(m), mst::machine_to_text(m));
            return 0;
        }

        if (*cmd_impl) {
            const mst::GlobalType g = load_valid_type(type_path);
            const mst::Verdict v = mst::check_implementable(g);
            out.emit(mst::verdict_to_json(v), verdict_to_text(v));
            return v.pass ? 0 : 1;
        }

        if (*cmd_verify) {
            const mst::GlobalType g = load_valid_type(type_path);
            auto machines = bind_machines(machine_specs);
            const auto roles = mst::roles_of(g);
            for (const auto& r : roles) {
                if (!machines.count(r)) {
                    throw CliError("verify needs --machine " + r.name +
                                   "=<file>; protocol verification is a whole-CSM property");
                }
            }
            if (machines.size() != roles.size()) {
                throw CliError("a bound machine's role does not occur in the type");
            }
            json doc;
            std::ostringstream human;
            if (precheck) {
                const mst::Verdict impl = mst::check_implementable(g);
                if (!impl.pass) {
                    std::cerr << "warning: the global type itself is not implementable; the "
                                 "verdict below assumes it is\n";
                    doc["precheck"] = mst::verdict_to_json(impl);
                }
            }
            const mst::Verdict v = mst::check_c1(g, machines);
            doc.update(mst::verdict_to_json(v));
            human << verdict_to_text(v);
            out.emit(doc, human.str());
            return v.pass ? 0 : 1;
        }

        if (*cmd_refine) {
            const mst::GlobalType g = load_valid_type(type_path);
            const mst::Role role{role_name};
            const auto roles = mst::roles_of(g);
            if (std::find(roles.begin(), roles.end(), role) == roles.end()) {
                throw CliError("role '" + role_name + "' does not occur in the type");
            }
            mst::LocalMachine candidate = load_machine(candidate_path);
            if (!(candidate.role == role)) {
                throw CliError("candidate declares role '" + candidate.role.name + "', not '" +
                               role_name + "'");
            }
            mst::Verdict v;
            if (against_path.empty()) {
                v = mst::check_c2_prime(g, candidate);
            } else {
                mst::LocalMachine against = load_machine(against_path);
                if (!(against.role == role)) {
                    throw CliError("--against declares role '" + against.role.name + "', not '" +
                                   role_name + "'");
                }
                v = mst::check_c2(g, against, candidate);
            }
            out.emit(mst::verdict_to_json(v), verdict_to_text(v));
            return v.pass ? 0 : 1;
        }

        if (*cmd_decorate) {
            const mst::GlobalType g = load_valid_type(type_path);
            const mst::LocalMachine m = load_machine(machine_path);
            const mst::DecorationMap d = mst::decorate(g, m);
            json doc;
            doc["role"] = m.role.name;
            doc["states"] = json::array();
            std::ostringstream human;
            for (int s = 0; s < m.state_count(); ++s) {
                json js;
                js["state"] = m.state_names[static_cast<std::size_t>(s)];
                js["nodes"] = json::array();
                js["heads"] = json::array();
                human << m.state_names[static_cast<std::size_t>(s)] << ":";
                if (d.of(s).empty()) human << " (empty)";
                for (mst::NodeId q : d.of(s)) {
                    js["nodes"].push_back(q);
                    js["heads"].push_back(mst::pretty_head(g, q));
                    human << " " << q;
                }
                human << "\n";
                for (mst::NodeId q : d.of(s)) {
                    human << "    " << q << ": " << mst::pretty_head(g, q) << "\n";
                }
                doc["states"].push_back(std::move(js));
            }
            out.emit(doc, human.str());
            return 0;
        }

        if (*cmd_avail) {
            const mst::GlobalType g = load_valid_type(type_path);
            if (node_id < 0 || node_id >= g.node_count()) {
                throw CliError("node " + std::to_string(node_id) + " out of range (type has " +
                               std::to_string(g.node_count()) + " nodes)");
            }
            const auto set = mst::m_role(g, node_id, mst::Role{role_name});
            json doc;
            doc["events"] = json::array();
            std::ostringstream human;
            for (const auto& e : set.events) {
                doc["events"].push_back(to_string(e));
                human << to_string(e) << "\n";
            }
            out.emit(doc, human.str());
            return 0;
        }

        if (*cmd_sim) {
            const mst::GlobalType g = load_valid_type(type_path);
            auto machines = bind_machines(machine_specs);
            mst::Csm csm = mst::subset_csm(g);
            for (auto& [role, machine] : machines) {
                auto it = csm.machines.find(role);
                if (it == csm.machines.end()) {
                    throw CliError("role '" + role.name + "' does not occur in the type");
                }
                it->second = std::move(machine);
            }
            const mst::ExplorationReport report = mst::explore(csm, depth, channel);
            std::ostringstream human;
            human << "reachable configurations: " << report.reachable << "\n"
                  << "terminated traces: " << report.terminated.size() << "\n"
                  << "deadlocks: " << report.deadlocks.size() << "\n"
                  << "truncated: " << (report.truncated ? "yes" : "no") << "\n";
            for (const auto& dl : report.deadlocks) {
                human << "  deadlock after: " << to_string(dl.trace) << "\n";
            }
            out.emit(mst::report_to_json(report, csm), human.str());
            return 0;
        }

        if (*cmd_gen) {
            if (gn < 1) throw CliError("n must be >= 1");
            const mst::GlobalType g = mst::generate_gn(gn);
            const std::string text = mst::pretty(g) + "\n";
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                if (!f) throw CliError("cannot write '" + out_path + "'");
                f << text;
            }
            json doc;
            doc["text"] = mst::pretty(g);
            doc["nodes"] = g.node_count();
            out.emit(doc, out_path.empty() ? text : "");
            return 0;
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
