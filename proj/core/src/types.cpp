#include "mst/types.hpp"

namespace mst {

std::string to_string(const SyncEvent& e) {
    return e.sender.name + "->" + e.receiver.name + ":" + e.message.label;
}

std::string to_string(const AsyncEvent& e) {
    if (e.kind == EventKind::Send) {
        return e.active.name + ">" + e.peer.name + "!" + e.message.label;
    }
    return e.active.name + "<" + e.peer.name + "?" + e.message.label;
}

AsyncEvent parse_async_event(const std::string& text) {
    auto fail = [&]() -> AsyncEvent {
        throw std::invalid_argument("malformed event '" + text + "' (expected p>q!m or p<q?m)");
    };
    auto gt = text.find_first_of("><");
    if (gt == std::string::npos || gt == 0) return fail();
    const bool is_send = text[gt] == '>';
    const char op = is_send ? '!' : '?';
    auto bang = text.find(op, gt + 1);
    if (bang == std::string::npos || bang == gt + 1 || bang + 1 >= text.size()) return fail();
    // Disallow a second separator hiding in the remainder.
    if (text.find_first_of("><!?", bang + 1) != std::string::npos) return fail();
    if (text.find_first_of("!?", gt + 1) != bang) return fail();
    AsyncEvent e;
    e.kind = is_send ? EventKind::Send : EventKind::Receive;
    e.active = Role{text.substr(0, gt)};
    e.peer = Role{text.substr(gt + 1, bang - gt - 1)};
    e.message = Message{text.substr(bang + 1)};
    if (e.active == e.peer) {
        throw std::invalid_argument("event '" + text + "' has identical endpoints");
    }
    return e;
}

std::set<AsyncEvent> Alphabet::sends_of(const Role& p) const {
    std::set<AsyncEvent> out;
    for (const auto& q : roles) {
        if (q == p) continue;
        for (const auto& m : messages) out.insert(send_event(p, q, m));
    }
    return out;
}

std::set<AsyncEvent> Alphabet::receives_of(const Role& p) const {
    std::set<AsyncEvent> out;
    for (const auto& q : roles) {
        if (q == p) continue;
        for (const auto& m : messages) out.insert(receive_event(p, q, m));
    }
    return out;
}

std::set<AsyncEvent> Alphabet::events_of(const Role& p) const {
    auto out = sends_of(p);
    auto recv = receives_of(p);
    out.insert(recv.begin(), recv.end());
    return out;
}

}  // namespace mst
