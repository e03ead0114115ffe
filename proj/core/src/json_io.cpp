#include "mst/json_io.hpp"

namespace mst {

using nlohmann::json;

json verdict_to_json(const Verdict& v) {
    json out;
    out["pass"] = v.pass;
    out["violations"] = json::array();
    for (const auto& viol : v.violations) {
        json j;
        j["condition"] = viol.condition;
        j["role"] = viol.role.name;
        j["state"] = viol.state;
        j["transitions"] = viol.transitions;
        j["witness_node"] = viol.witness_node ? json(*viol.witness_node) : json(nullptr);
        j["witness_event"] = viol.witness_event ? json(to_string(*viol.witness_event)) : json(nullptr);
        out["violations"].push_back(std::move(j));
    }
    return out;
}

Violation violation_from_json(const json& j) {
    Violation v;
    v.condition = j.at("condition").get<std::string>();
    v.role = Role{j.at("role").get<std::string>()};
    v.state = j.at("state").get<std::string>();
    for (const auto& t : j.at("transitions")) v.transitions.push_back(t.get<std::string>());
    if (j.contains("witness_node") && !j.at("witness_node").is_null()) {
        v.witness_node = j.at("witness_node").get<NodeId>();
    }
    if (j.contains("witness_event") && !j.at("witness_event").is_null()) {
        v.witness_event = parse_async_event(j.at("witness_event").get<std::string>());
    }
    return v;
}

json report_to_json(const ExplorationReport& report, const Csm& csm) {
    json out;
    out["reachable"] = report.reachable;
    out["truncated"] = report.truncated;
    out["terminated_cap_hit"] = report.terminated_cap_hit;
    out["terminated"] = json::array();
    for (const auto& trace : report.terminated) {
        json t = json::array();
        for (const auto& x : trace) t.push_back(to_string(x));
        out["terminated"].push_back(std::move(t));
    }
    out["deadlocks"] = json::array();
    for (const auto& dl : report.deadlocks) {
        json d;
        d["states"] = json::object();
        for (std::size_t i = 0; i < csm.order.size(); ++i) {
            const LocalMachine& m = csm.machines.at(csm.order[i]);
            d["states"][csm.order[i].name] =
                m.state_names[static_cast<std::size_t>(dl.config.states[i])];
        }
        d["channels"] = json::object();
        for (const auto& [key, queue] : dl.config.channels) {
            const std::string name = csm.order[static_cast<std::size_t>(key.first)].name + ">" +
                                     csm.order[static_cast<std::size_t>(key.second)].name;
            json msgs = json::array();
            for (const auto& m : queue) msgs.push_back(m.label);
            d["channels"][name] = std::move(msgs);
        }
        json t = json::array();
        for (const auto& x : dl.trace) t.push_back(to_string(x));
        d["trace"] = std::move(t);
        out["deadlocks"].push_back(std::move(d));
    }
    return out;
}

json type_violations_to_json(const std::vector<TypeViolation>& vs) {
    json out = json::array();
    for (const auto& v : vs) {
        json j;
        j["node"] = v.node;
        j["rule"] = to_string(v.rule);
        j["detail"] = v.detail;
        out.push_back(std::move(j));
    }
    return out;
}

json machine_to_json(const LocalMachine& m) {
    json out;
    out["role"] = m.role.name;
    out["initial"] = m.state_names.at(static_cast<std::size_t>(m.initial));
    out["states"] = json::array();
    for (int s = 0; s < m.state_count(); ++s) {
        json j;
        j["name"] = m.state_names[static_cast<std::size_t>(s)];
        j["final"] = m.is_final(s);
        if (!m.state_subsets.empty()) {
            json subset = json::array();
            for (NodeId q : m.state_subsets[static_cast<std::size_t>(s)]) subset.push_back(q);
            j["subset"] = std::move(subset);
        }
        out["states"].push_back(std::move(j));
    }
    out["transitions"] = json::array();
    for (const auto& [key, dst] : m.transitions) {
        json j;
        j["from"] = m.state_names[static_cast<std::size_t>(key.first)];
        j["event"] = to_string(key.second);
        j["to"] = m.state_names[static_cast<std::size_t>(dst)];
        out["transitions"].push_back(std::move(j));
    }
    return out;
}

}  // namespace mst
