#include "mst/machine.hpp"

#include <algorithm>
#include <sstream>

namespace mst {

std::optional<int> LocalMachine::next(int s, const AsyncEvent& x) const {
    auto it = transitions.find({s, x});
    if (it == transitions.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<AsyncEvent, int>> LocalMachine::outgoing(int s) const {
    std::vector<std::pair<AsyncEvent, int>> out;
    auto it = transitions.lower_bound({s, AsyncEvent{}});
    for (; it != transitions.end() && it->first.first == s; ++it) {
        out.push_back({it->first.second, it->second});
    }
    return out;
}

bool LocalMachine::has_send_from(int s) const {
    for (const auto& [x, _] : outgoing(s)) {
        if (x.is_send()) return true;
    }
    return false;
}

std::optional<int> LocalMachine::state_index(const std::string& name) const {
    for (std::size_t i = 0; i < state_names.size(); ++i) {
        if (state_names[i] == name) return static_cast<int>(i);
    }
    return std::nullopt;
}

const std::set<NodeId>& LocalMachine::subset_of(int s) const {
    static const std::set<NodeId> empty;
    if (state_subsets.empty()) return empty;
    return state_subsets.at(static_cast<std::size_t>(s));
}

MachineParseError::MachineParseError(std::string msg, int line_)
    : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}

LocalMachine parse_machine(const std::string& text) {
    LocalMachine m;
    bool have_role = false;
    std::optional<int> initial;
    std::map<std::string, int> states;
    struct PendingEdge {
        std::string src, dst;
        AsyncEvent event;
        int line;
    };
    std::vector<PendingEdge> edges;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::vector<std::string> words;
        for (std::string w; line >> w;) words.push_back(w);
        if (words.empty()) continue;

        if (words[0] == "role") {
            if (words.size() != 2) throw MachineParseError("expected 'role <ident>'", lineno);
            if (have_role) throw MachineParseError("duplicate role declaration", lineno);
            m.role = Role{words[1]};
            have_role = true;
        } else if (words[0] == "state") {
            if (words.size() < 2) throw MachineParseError("expected 'state <ident> ...'", lineno);
            const std::string& name = words[1];
            if (states.count(name)) {
                throw MachineParseError("duplicate state '" + name + "'", lineno);
            }
            const int id = static_cast<int>(m.state_names.size());
            states.emplace(name, id);
            m.state_names.push_back(name);
            for (std::size_t i = 2; i < words.size(); ++i) {
                if (words[i] == "initial") {
                    if (initial) throw MachineParseError("second initial state '" + name + "'", lineno);
                    initial = id;
                } else if (words[i] == "final") {
                    m.finals.insert(id);
                } else {
                    throw MachineParseError("unknown state flag '" + words[i] + "'", lineno);
                }
            }
        } else if (words.size() == 3) {
            AsyncEvent ev;
            try {
                ev = parse_async_event(words[1]);
            } catch (const std::invalid_argument& e) {
                throw MachineParseError(e.what(), lineno);
            }
            edges.push_back({words[0], words[2], ev, lineno});
        } else {
            throw MachineParseError("expected 'role', 'state', or '<src> <event> <dst>'", lineno);
        }
    }

    if (!have_role) throw MachineParseError("missing role declaration", lineno);
    if (m.state_names.empty()) throw MachineParseError("machine declares no states", lineno);
    if (!initial) throw MachineParseError("no state marked initial", lineno);
    m.initial = *initial;

    for (const auto& e : edges) {
        auto src = states.find(e.src);
        if (src == states.end()) throw MachineParseError("unknown state '" + e.src + "'", e.line);
        auto dst = states.find(e.dst);
        if (dst == states.end()) throw MachineParseError("unknown state '" + e.dst + "'", e.line);
        if (!(e.event.active == m.role)) {
            throw MachineParseError("event '" + to_string(e.event) + "' is not an action of role '" +
                                        m.role.name + "'",
                                    e.line);
        }
        auto [it, inserted] = m.transitions.insert({{src->second, e.event}, dst->second});
        if (!inserted && it->second != dst->second) {
            throw MachineParseError(
                "nondeterminism: state '" + e.src + "' has two transitions on '" +
                    to_string(e.event) + "'",
                e.line);
        }
    }
    return m;
}

std::string machine_to_text(const LocalMachine& m) {
    std::ostringstream out;
    out << "role " << m.role.name << "\n";
    for (int s = 0; s < m.state_count(); ++s) {
        out << "state " << m.state_names[static_cast<std::size_t>(s)];
        if (s == m.initial) out << " initial";
        if (m.is_final(s)) out << " final";
        if (!m.state_subsets.empty()) {
            out << "  # {";
            bool first = true;
            for (NodeId q : m.state_subsets[static_cast<std::size_t>(s)]) {
                if (!first) out << ",";
                first = false;
                out << q;
            }
            out << "}";
        }
        out << "\n";
    }
    for (const auto& [key, dst] : m.transitions) {
        out << m.state_names[static_cast<std::size_t>(key.first)] << " " << to_string(key.second)
            << " " << m.state_names[static_cast<std::size_t>(dst)] << "\n";
    }
    return out.str();
}

}  // namespace mst
