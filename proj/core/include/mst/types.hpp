#ifndef MST_TYPES_HPP
#define MST_TYPES_HPP

#include <compare>
#include <set>
#include <stdexcept>
#include <string>

namespace mst {

/// A protocol participant, identified by name.
struct Role {
    std::string name;

    auto operator<=>(const Role&) const = default;
};

/// A message label. Payloads are out of scope; only the label matters.
struct Message {
    std::string label;

    auto operator<=>(const Message&) const = default;
};

/// Atomic exchange p->q:m as it appears on global automaton transitions.
struct SyncEvent {
    Role sender;
    Role receiver;
    Message message;

    auto operator<=>(const SyncEvent&) const = default;
};

enum class EventKind { Send, Receive };

/// One half of a split exchange: either p>q!m (p sends m to q) or
/// p<q?m (p receives m from q). `active` is always the acting role.
struct AsyncEvent {
    EventKind kind;
    Role active;
    Role peer;
    Message message;

    auto operator<=>(const AsyncEvent&) const = default;

    bool is_send() const { return kind == EventKind::Send; }
    bool is_receive() const { return kind == EventKind::Receive; }
};

inline AsyncEvent send_event(Role from, Role to, Message m) {
    return AsyncEvent{EventKind::Send, std::move(from), std::move(to), std::move(m)};
}

inline AsyncEvent receive_event(Role at, Role from, Message m) {
    return AsyncEvent{EventKind::Receive, std::move(at), std::move(from), std::move(m)};
}

std::string to_string(const SyncEvent& e);

/// "p>q!m" for sends, "p<q?m" for receives; the machine file syntax.
std::string to_string(const AsyncEvent& e);

/// Parses the textual event form used in machine files and CLI output.
/// Throws std::invalid_argument on malformed input.
AsyncEvent parse_async_event(const std::string& text);

/// Per-role view of the event alphabet of a protocol.
struct Alphabet {
    std::set<Role> roles;
    std::set<Message> messages;

    std::set<AsyncEvent> sends_of(const Role& p) const;
    std::set<AsyncEvent> receives_of(const Role& p) const;
    std::set<AsyncEvent> events_of(const Role& p) const;
};

}  // namespace mst

#endif
