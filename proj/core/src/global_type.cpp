#include "mst/global_type.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace mst {

std::unique_ptr<GTree> GTree::end() {
    auto t = std::make_unique<GTree>();
    t->kind = NodeKind::End;
    return t;
}

std::unique_ptr<GTree> GTree::variable(std::string name) {
    auto t = std::make_unique<GTree>();
    t->kind = NodeKind::Var;
    t->var = std::move(name);
    return t;
}

std::unique_ptr<GTree> GTree::rec(std::string name, std::unique_ptr<GTree> body) {
    auto t = std::make_unique<GTree>();
    t->kind = NodeKind::Rec;
    t->var = std::move(name);
    t->body = std::move(body);
    return t;
}

std::unique_ptr<GTree> GTree::choice(
    Role sender, std::vector<std::tuple<Role, Message, std::unique_ptr<GTree>>> branches) {
    auto t = std::make_unique<GTree>();
    t->kind = NodeKind::Choice;
    t->sender = std::move(sender);
    t->branches = std::move(branches);
    return t;
}

namespace {

struct Freezer {
    std::vector<Node> nodes;
    std::vector<std::pair<std::string, NodeId>> scope;  // binder stack
    bool reject_unbound;

    NodeId walk(const GTree& t) {
        const NodeId id = static_cast<NodeId>(nodes.size());
        nodes.emplace_back();
        switch (t.kind) {
            case NodeKind::End:
                nodes[id].kind = NodeKind::End;
                break;
            case NodeKind::Var: {
                nodes[id].kind = NodeKind::Var;
                nodes[id].var = t.var;
                NodeId binder = -1;
                for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
                    if (it->first == t.var) {
                        binder = it->second;
                        break;
                    }
                }
                if (binder < 0 && reject_unbound) {
                    throw ParseError("unbound recursion variable '" + t.var + "'", t.line, t.col);
                }
                nodes[id].binder = binder;
                break;
            }
            case NodeKind::Rec: {
                nodes[id].kind = NodeKind::Rec;
                nodes[id].var = t.var;
                scope.emplace_back(t.var, id);
                nodes[id].body = walk(*t.body);
                scope.pop_back();
                break;
            }
            case NodeKind::Choice: {
                nodes[id].kind = NodeKind::Choice;
                nodes[id].sender = t.sender;
                for (const auto& [recv, msg, cont] : t.branches) {
                    const NodeId c = walk(*cont);
                    nodes[id].branches.push_back(Branch{recv, msg, c});
                }
                break;
            }
        }
        return id;
    }
};

}  // namespace

GlobalType freeze(const GTree& tree, bool reject_unbound) {
    Freezer f;
    f.reject_unbound = reject_unbound;
    f.walk(tree);
    return GlobalType{std::move(f.nodes)};
}

ParseError::ParseError(std::string msg, int line_, int col_)
    : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
      line(line_),
      col(col_) {}

namespace {

enum class Tok { Ident, Zero, Mu, Arrow, Colon, Dot, Plus, LParen, RParen, Eof };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : src_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_space();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_ = Token{Tok::Eof, "", line_, col_};
            return;
        }
        const char c = src_[pos_];
        if (c == '(') return single(Tok::LParen, "(");
        if (c == ')') return single(Tok::RParen, ")");
        if (c == '+') return single(Tok::Plus, "+");
        if (c == ':') return single(Tok::Colon, ":");
        if (c == '.') return single(Tok::Dot, ".");
        if (c == '-') {
            if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                tok_ = Token{Tok::Arrow, "->", line_, col_};
                bump();
                bump();
                return;
            }
            throw ParseError("unexpected character '-'", line_, col_);
        }
        if (c == '0') {
            tok_ = Token{Tok::Zero, "0", line_, col_};
            bump();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                id.push_back(src_[pos_]);
                bump();
            }
            tok_ = Token{id == "mu" ? Tok::Mu : Tok::Ident, id, tok_.line, tok_.col};
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    void single(Tok k, std::string text) {
        tok_ = Token{k, std::move(text), line_, col_};
        bump();
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_{Tok::Eof, "", 1, 1};
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    std::unique_ptr<GTree> parse() {
        auto g = parse_type();
        expect(Tok::Eof, "end of input");
        return g;
    }

private:
    std::unique_ptr<GTree> parse_type() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::Zero:
                lex_.take();
                return GTree::end();
            case Tok::Mu: {
                lex_.take();
                Token name = expect(Tok::Ident, "recursion variable");
                expect(Tok::Dot, "'.'");
                auto body = parse_type();
                auto node = GTree::rec(name.text, std::move(body));
                node->line = t.line;
                node->col = t.col;
                return node;
            }
            case Tok::LParen: {
                lex_.take();
                std::vector<std::unique_ptr<GTree>> branches;
                branches.push_back(parse_branch());
                while (lex_.peek().kind == Tok::Plus) {
                    lex_.take();
                    branches.push_back(parse_branch());
                }
                expect(Tok::RParen, "')'");
                return merge_branches(std::move(branches), t);
            }
            case Tok::Ident: {
                Token id = lex_.take();
                if (lex_.peek().kind == Tok::Arrow) {
                    return parse_branch_tail(id);
                }
                auto node = GTree::variable(id.text);
                node->line = id.line;
                node->col = id.col;
                return node;
            }
            default:
                throw ParseError("expected a global type, got '" + t.text + "'", t.line, t.col);
        }
    }

    std::unique_ptr<GTree> parse_branch() {
        Token id = expect(Tok::Ident, "sender role");
        return parse_branch_tail(id);
    }

    // Continues after the sender identifier: -> receiver : message . G
    std::unique_ptr<GTree> parse_branch_tail(const Token& sender) {
        expect(Tok::Arrow, "'->'");
        Token recv = expect(Tok::Ident, "receiver role");
        expect(Tok::Colon, "':'");
        Token msg = expect(Tok::Ident, "message label");
        expect(Tok::Dot, "'.'");
        auto cont = parse_type();
        std::vector<std::tuple<Role, Message, std::unique_ptr<GTree>>> branches;
        branches.emplace_back(Role{recv.text}, Message{msg.text}, std::move(cont));
        auto node = GTree::choice(Role{sender.text}, std::move(branches));
        node->line = sender.line;
        node->col = sender.col;
        return node;
    }

    // Each parsed branch is a singleton choice; fold them into one choice
    // node. All branches of one choice share the sender.
    std::unique_ptr<GTree> merge_branches(std::vector<std::unique_ptr<GTree>> parts,
                                          const Token& at) {
        std::vector<std::tuple<Role, Message, std::unique_ptr<GTree>>> branches;
        Role sender = parts.front()->sender;
        for (auto& part : parts) {
            if (!(part->sender == sender)) {
                throw ParseError("choice branches have different senders ('" + sender.name +
                                     "' vs '" + part->sender.name + "')",
                                 part->line, part->col);
            }
            for (auto& b : part->branches) branches.push_back(std::move(b));
        }
        auto node = GTree::choice(std::move(sender), std::move(branches));
        node->line = at.line;
        node->col = at.col;
        return node;
    }

    Token expect(Tok kind, const std::string& what) {
        const Token& t = lex_.peek();
        if (t.kind != kind) {
            throw ParseError("expected " + what + ", got '" + (t.kind == Tok::Eof ? "<eof>" : t.text) + "'",
                             t.line, t.col);
        }
        return lex_.take();
    }

    Lexer lex_;
};

}  // namespace

GlobalType parse_global_type(const std::string& text) {
    Parser parser(text);
    auto tree = parser.parse();
    return freeze(*tree, /*reject_unbound=*/true);
}

std::string to_string(RuleId rule) {
    switch (rule) {
        case RuleId::BranchDistinctness: return "BranchDistinctness";
        case RuleId::SenderIsReceiver: return "SenderIsReceiver";
        case RuleId::UnguardedRecursion: return "UnguardedRecursion";
        case RuleId::UnboundVariable: return "UnboundVariable";
    }
    return "?";
}

std::vector<TypeViolation> validate(const GlobalType& g) {
    std::vector<TypeViolation> out;
    if (g.empty()) return out;
    for (NodeId id = 0; id < g.node_count(); ++id) {
        const Node& n = g.node(id);
        switch (n.kind) {
            case NodeKind::Choice: {
                std::set<std::pair<Role, Message>> seen;
                for (const auto& b : n.branches) {
                    if (b.receiver == n.sender) {
                        out.push_back({id, RuleId::SenderIsReceiver,
                                       "sender '" + n.sender.name + "' receives its own message"});
                    }
                    if (!seen.insert({b.receiver, b.message}).second) {
                        out.push_back({id, RuleId::BranchDistinctness,
                                       "duplicate branch (" + b.receiver.name + ", " +
                                           b.message.label + ")"});
                    }
                }
                break;
            }
            case NodeKind::Var:
                if (n.binder < 0) {
                    out.push_back({id, RuleId::UnboundVariable,
                                   "variable '" + n.var + "' has no enclosing binder"});
                }
                break;
            case NodeKind::Rec: {
                // A matching variable reachable from the body through Rec
                // descents alone has no exchange on the way.
                std::function<void(NodeId)> scan = [&](NodeId cur) {
                    const Node& m = g.node(cur);
                    if (m.kind == NodeKind::Var && m.binder == id) {
                        out.push_back({id, RuleId::UnguardedRecursion,
                                       "no exchange between 'mu " + n.var + "' and its use"});
                    } else if (m.kind == NodeKind::Rec) {
                        scan(m.body);
                    }
                };
                scan(n.body);
                break;
            }
            case NodeKind::End:
                break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::map<std::string, NodeId> get_mu(const GlobalType& g) {
    std::map<std::string, NodeId> out;
    for (NodeId id = 0; id < g.node_count(); ++id) {
        const Node& n = g.node(id);
        if (n.kind == NodeKind::Rec) out.emplace(n.var, n.body);
    }
    return out;
}

GlobalType generate_gn(int n) {
    if (n < 1) throw std::invalid_argument("generate_gn requires n >= 1");
    const Role p{"p"}, q{"q"}, r{"r"};
    const Message a{"a"}, b{"b"};
    auto one = [](Role recv, Message msg, std::unique_ptr<GTree> cont) {
        std::vector<std::tuple<Role, Message, std::unique_ptr<GTree>>> bs;
        bs.emplace_back(std::move(recv), std::move(msg), std::move(cont));
        return bs;
    };

    // G_0 := p->q:a. t_1
    auto chain = GTree::choice(p, one(q, a, GTree::variable("t_1")));
    // G_i := p->q:a. mu t_3_i. (p->r:m_3. p->q:b. t_3_i + p->r:n_3. G_{i-1})
    for (int i = 1; i <= n; ++i) {
        const std::string t3 = "t_3_" + std::to_string(i);
        auto iterate = GTree::choice(p, one(q, b, GTree::variable(t3)));
        std::vector<std::tuple<Role, Message, std::unique_ptr<GTree>>> inner;
        inner.emplace_back(r, Message{"m_3"}, std::move(iterate));
        inner.emplace_back(r, Message{"n_3"}, std::move(chain));
        chain = GTree::choice(p, one(q, a, GTree::rec(t3, GTree::choice(p, std::move(inner)))));
    }

    // G(G') := mu t_1. (p->r:m_1. mu t_2. (p->r:m_2. p->q:a. t_2 + p->r:n_2. G') + p->r:n_1. 0)
    auto t2_iter = GTree::choice(p, one(q, a, GTree::variable("t_2")));
    std::vector<std::tuple<Role, Message, std::unique_ptr<GTree>>> t2_branches;
    t2_branches.emplace_back(r, Message{"m_2"}, std::move(t2_iter));
    t2_branches.emplace_back(r, Message{"n_2"}, std::move(chain));
    auto t2 = GTree::rec("t_2", GTree::choice(p, std::move(t2_branches)));
    std::vector<std::tuple<Role, Message, std::unique_ptr<GTree>>> t1_branches;
    t1_branches.emplace_back(r, Message{"m_1"}, std::move(t2));
    t1_branches.emplace_back(r, Message{"n_1"}, GTree::end());
    auto top = GTree::rec("t_1", GTree::choice(p, std::move(t1_branches)));
    return freeze(*top, /*reject_unbound=*/true);
}

namespace {

void pretty_rec(const GlobalType& g, NodeId id, std::ostringstream& out) {
    const Node& n = g.node(id);
    switch (n.kind) {
        case NodeKind::End:
            out << "0";
            break;
        case NodeKind::Var:
            out << n.var;
            break;
        case NodeKind::Rec:
            out << "mu " << n.var << " . ";
            pretty_rec(g, n.body, out);
            break;
        case NodeKind::Choice: {
            const bool wrap = n.branches.size() > 1;
            if (wrap) out << "(";
            bool first = true;
            for (const auto& b : n.branches) {
                if (!first) out << " + ";
                first = false;
                out << n.sender.name << " -> " << b.receiver.name << " : " << b.message.label
                    << " . ";
                pretty_rec(g, b.continuation, out);
            }
            if (wrap) out << ")";
            break;
        }
    }
}

}  // namespace

std::string pretty(const GlobalType& g) { return pretty(g, g.root()); }

std::string pretty(const GlobalType& g, NodeId node) {
    std::ostringstream out;
    pretty_rec(g, node, out);
    return out.str();
}

std::string pretty_head(const GlobalType& g, NodeId node) {
    const Node& n = g.node(node);
    switch (n.kind) {
        case NodeKind::End:
            return "0";
        case NodeKind::Var:
            return n.var;
        case NodeKind::Rec:
            return "mu " + n.var + " . ...";
        case NodeKind::Choice: {
            std::string head = n.sender.name + " -> " + n.branches.front().receiver.name + " : " +
                               n.branches.front().message.label;
            if (n.branches.size() > 1) {
                head = "+(" + head + " ... [" + std::to_string(n.branches.size()) + " branches])";
            } else {
                head += " . ...";
            }
            return head;
        }
    }
    return "?";
}

std::vector<Role> roles_of(const GlobalType& g) {
    std::vector<Role> out;
    auto add = [&](const Role& r) {
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    };
    for (NodeId id = 0; id < g.node_count(); ++id) {
        const Node& n = g.node(id);
        if (n.kind != NodeKind::Choice) continue;
        add(n.sender);
        for (const auto& b : n.branches) add(b.receiver);
    }
    return out;
}

std::set<Message> messages_of(const GlobalType& g) {
    std::set<Message> out;
    for (NodeId id = 0; id < g.node_count(); ++id) {
        const Node& n = g.node(id);
        if (n.kind != NodeKind::Choice) continue;
        for (const auto& b : n.branches) out.insert(b.message);
    }
    return out;
}

Alphabet alphabet_of(const GlobalType& g) {
    Alphabet a;
    for (const auto& r : roles_of(g)) a.roles.insert(r);
    a.messages = messages_of(g);
    return a;
}

}  // namespace mst
