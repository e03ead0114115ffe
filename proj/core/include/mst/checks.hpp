#ifndef MST_CHECKS_HPP
#define MST_CHECKS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mst/global_type.hpp"
#include "mst/machine.hpp"

namespace mst {

namespace condition {
// Implementability of the global type (subset construction).
inline constexpr const char* send_validity = "Send Validity";
inline constexpr const char* receive_validity = "Receive Validity";
// Protocol verification (whole CSM).
inline constexpr const char* send_decoration_validity = "Send Decoration Validity";
inline constexpr const char* receive_decoration_validity = "Receive Decoration Validity";
inline constexpr const char* transition_exhaustivity = "Transition Exhaustivity";
inline constexpr const char* final_state_validity = "Final State Validity";
// Refinement against the subset construction.
inline constexpr const char* send_preservation = "Send Preservation";
inline constexpr const char* receive_exhaustivity = "Receive Exhaustivity";
// Refinement against an arbitrary supertype.
inline constexpr const char* send_decoration_subtype_validity = "Send Decoration Subtype Validity";
inline constexpr const char* receive_decoration_subtype_validity =
    "Receive Decoration Subtype Validity";
inline constexpr const char* send_subtype_preservation = "Send Subtype Preservation";
inline constexpr const char* receive_subtype_exhaustivity = "Receive Subtype Exhaustivity";
inline constexpr const char* final_state_subtype_validity = "Final State Subtype Validity";
}  // namespace condition

/// One failed condition instance, carrying enough to re-evaluate the formula:
/// the local state, the transition(s) involved (machine-format "src ev dst"
/// strings), and the witnessing global node / send event where the condition
/// has one.
struct Violation {
    std::string condition;
    Role role;
    std::string state;
    std::vector<std::string> transitions;
    std::optional<NodeId> witness_node;
    std::optional<AsyncEvent> witness_event;

    auto operator<=>(const Violation&) const = default;
};

struct Verdict {
    bool pass = true;
    std::vector<Violation> violations;
};

/// Send and Receive Validity of the subset construction for every role.
/// A pass means the type is implementable and the subset CSM implements it.
Verdict check_implementable(const GlobalType& g);

/// Protocol Verification: does the CSM implement g? Assumes g implementable
/// (not re-verified here). The csm must bind exactly the roles of g.
Verdict check_c1(const GlobalType& g, const std::map<Role, LocalMachine>& csm);

/// Protocol Refinement of a against the subset construction of its role:
/// may a replace C(g, p) in every well-behaved context?
Verdict check_c2_prime(const GlobalType& g, const LocalMachine& a);

/// Protocol Refinement of subtype a against supertype b (same role). The
/// verdict is conditional on b itself being safe in every well-behaved
/// context; check_c2_prime(g, b) is the available sufficient check for that.
Verdict check_c2(const GlobalType& g, const LocalMachine& b, const LocalMachine& a);

/// Re-evaluate a reported violation against the same inputs; true when the
/// violated formula still fails on the recorded state/transitions/witness.
bool revalidate(const GlobalType& g, const Violation& v);  // implementability
bool revalidate(const GlobalType& g, const std::map<Role, LocalMachine>& csm, const Violation& v);
bool revalidate(const GlobalType& g, const LocalMachine& a, const Violation& v);
bool revalidate(const GlobalType& g, const LocalMachine& b, const LocalMachine& a,
                const Violation& v);

}  // namespace mst

#endif
