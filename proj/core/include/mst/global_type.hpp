#ifndef MST_GLOBAL_TYPE_HPP
#define MST_GLOBAL_TYPE_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mst/types.hpp"

namespace mst {

/// Positional identity of an AST node. Two syntactically equal subterms at
/// different positions have different ids.
using NodeId = std::int32_t;

enum class NodeKind { End, Choice, Rec, Var };

struct Branch {
    Role receiver;
    Message message;
    NodeId continuation;

    auto operator<=>(const Branch&) const = default;
};

struct Node {
    NodeKind kind = NodeKind::End;
    // Choice only:
    Role sender;
    std::vector<Branch> branches;
    // Rec and Var:
    std::string var;
    NodeId body = -1;    // Rec: the bound subterm
    NodeId binder = -1;  // Var: enclosing Rec node, -1 if unbound

    auto operator<=>(const Node&) const = default;
};

/// A global type as an immutable AST. Node ids index into a pre-order
/// node table; the root is always id 0.
class GlobalType {
public:
    GlobalType() = default;
    explicit GlobalType(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

    NodeId root() const { return 0; }
    const Node& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    NodeId node_count() const { return static_cast<NodeId>(nodes_.size()); }
    bool empty() const { return nodes_.empty(); }

    const std::vector<Node>& nodes() const { return nodes_; }

    bool operator==(const GlobalType&) const = default;

private:
    std::vector<Node> nodes_;
};

/// Mutable construction tree; freeze() assigns pre-order ids and resolves
/// each variable occurrence to its lexical binder.
struct GTree {
    NodeKind kind = NodeKind::End;
    Role sender;
    std::vector<std::tuple<Role, Message, std::unique_ptr<GTree>>> branches;
    std::string var;
    std::unique_ptr<GTree> body;
    int line = 0, col = 0;

    static std::unique_ptr<GTree> end();
    static std::unique_ptr<GTree> variable(std::string name);
    static std::unique_ptr<GTree> rec(std::string name, std::unique_ptr<GTree> body);
    static std::unique_ptr<GTree> choice(
        Role sender, std::vector<std::tuple<Role, Message, std::unique_ptr<GTree>>> branches);
};

/// When `reject_unbound` is set, freezing throws ParseError on a variable
/// with no enclosing binder; otherwise the node gets binder = -1 and
/// validate() reports it.
GlobalType freeze(const GTree& tree, bool reject_unbound = false);

struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line, int col);
    int line;
    int col;
};

/// Parses the concrete syntax:
///   G      ::= "0" | "mu" IDENT "." G | IDENT | BRANCH | "(" BRANCH ("+" BRANCH)* ")"
///   BRANCH ::= IDENT "->" IDENT ":" IDENT "." G
/// '#' starts a comment to end of line. Node ids are assigned in pre-order.
/// Well-formedness beyond syntax and variable binding is validate()'s job.
GlobalType parse_global_type(const std::string& text);

enum class RuleId {
    BranchDistinctness,
    SenderIsReceiver,
    UnguardedRecursion,
    UnboundVariable,
};

std::string to_string(RuleId rule);

struct TypeViolation {
    NodeId node;
    RuleId rule;
    std::string detail;

    auto operator<=>(const TypeViolation&) const = default;
};

/// Empty result iff the type is well formed: branches of a choice pairwise
/// distinct, sender never a receiver of its own exchange, recursion guarded,
/// every variable bound.
std::vector<TypeViolation> validate(const GlobalType& g);

/// Map from recursion variable to the body of its binder. With shadowed
/// binder names the first (pre-order outermost) binding wins; evaluation
/// elsewhere resolves occurrences by binder identity instead.
std::map<std::string, NodeId> get_mu(const GlobalType& g);

/// The G_n family: linear-size types whose projection onto role q needs
/// exponentially many states after determinization. n >= 1.
GlobalType generate_gn(int n);

std::string pretty(const GlobalType& g);
std::string pretty(const GlobalType& g, NodeId node);

/// One-line summary of a subterm for diagnostics.
std::string pretty_head(const GlobalType& g, NodeId node);

/// Roles in order of first appearance (pre-order).
std::vector<Role> roles_of(const GlobalType& g);

std::set<Message> messages_of(const GlobalType& g);

Alphabet alphabet_of(const GlobalType& g);

}  // namespace mst

#endif
