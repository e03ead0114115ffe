#include <doctest.h>

#include "corpus.hpp"
#include "gen_random.hpp"
#include "mst/global_type.hpp"

using namespace mst;

TEST_CASE("parse: single exchange") {
    const GlobalType g = parse_global_type("p -> q : m . 0");
    REQUIRE(g.node_count() == 2);
    const Node& root = g.node(0);
    CHECK(root.kind == NodeKind::Choice);
    CHECK(root.sender == Role{"p"});
    REQUIRE(root.branches.size() == 1);
    CHECK(root.branches[0].receiver == Role{"q"});
    CHECK(root.branches[0].message == Message{"m"});
    CHECK(g.node(root.branches[0].continuation).kind == NodeKind::End);
}

TEST_CASE("parse: two-branch choice") {
    const GlobalType g = parse_global_type("(p->q:b . q->p:b . 0 + p->q:m . q->p:m . 0)");
    const Node& root = g.node(0);
    REQUIRE(root.kind == NodeKind::Choice);
    REQUIRE(root.branches.size() == 2);
    CHECK(root.sender == Role{"p"});
    CHECK(root.branches[0].message == Message{"b"});
    CHECK(root.branches[1].message == Message{"m"});
    // Pre-order ids: root, then the whole first branch, then the second.
    CHECK(root.branches[0].continuation == 1);
    CHECK(root.branches[1].continuation == 3);
    CHECK(g.node_count() == 5);
}

TEST_CASE("parse: recursion") {
    const GlobalType g = parse_global_type("mu t . p -> q : m . t");
    REQUIRE(g.node_count() == 3);
    CHECK(g.node(0).kind == NodeKind::Rec);
    CHECK(g.node(0).var == "t");
    CHECK(g.node(1).kind == NodeKind::Choice);
    const Node& var = g.node(2);
    CHECK(var.kind == NodeKind::Var);
    CHECK(var.binder == 0);
}

TEST_CASE("parse: comments and whitespace") {
    const GlobalType g = parse_global_type(
        "# protocol\n"
        "  p ->q:   m .  # exchange\n"
        "     0\n");
    CHECK(g.node_count() == 2);
}

TEST_CASE("parse: parenthesized singleton choice accepted") {
    CHECK(parse_global_type("(p->q:m.0)").node_count() == 2);
}

TEST_CASE("parse: syntax error carries position") {
    try {
        parse_global_type("p -> : m . 0");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col == 6);
    }
    try {
        parse_global_type("p -> q : m .\n  mu t . )\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 11);
    }
}

TEST_CASE("parse: unbound recursion variable is named") {
    try {
        parse_global_type("mu t . p -> q : m . s");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("'s'") != std::string::npos);
    }
}

TEST_CASE("parse: mixed senders in one choice rejected") {
    CHECK_THROWS_AS(parse_global_type("(p->q:m . 0 + q->p:m . 0)"), ParseError);
}

TEST_CASE("validate: worked examples are clean") {
    for (const auto& entry : corpus::types()) {
        CAPTURE(entry.name);
        CHECK(validate(entry.type).empty());
    }
}

TEST_CASE("validate: duplicated branch") {
    const GlobalType g = parse_global_type("(p->q:m . 0 + p->q:m . q->p:x . 0)");
    const auto vs = validate(g);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].rule == RuleId::BranchDistinctness);
    CHECK(vs[0].node == 0);
}

TEST_CASE("validate: unguarded recursion") {
    const GlobalType g = parse_global_type("mu t . t");
    const auto vs = validate(g);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].rule == RuleId::UnguardedRecursion);
    CHECK(vs[0].node == 0);
}

TEST_CASE("validate: nested unguarded binder") {
    const auto vs = validate(parse_global_type("mu t . mu s . t"));
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].rule == RuleId::UnguardedRecursion);
}

TEST_CASE("validate: sender as receiver") {
    const auto vs = validate(parse_global_type("p -> p : m . 0"));
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].rule == RuleId::SenderIsReceiver);
}

TEST_CASE("validate: unbound variable in a hand-built tree") {
    auto tree = GTree::rec("t", GTree::choice(Role{"p"}, [] {
        std::vector<std::tuple<Role, Message, std::unique_ptr<GTree>>> bs;
        bs.emplace_back(Role{"q"}, Message{"m"}, GTree::variable("other"));
        return bs;
    }()));
    const GlobalType g = freeze(*tree);
    const auto vs = validate(g);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].rule == RuleId::UnboundVariable);
}

TEST_CASE("get_mu: single binder") {
    const GlobalType g = corpus::by_name("g_loop");
    const auto mu = get_mu(g);
    REQUIRE(mu.size() == 1);
    CHECK(mu.at("t") == 1);
    CHECK(g.node(mu.at("t")).kind == NodeKind::Choice);
}

TEST_CASE("get_mu: no binders") {
    CHECK(get_mu(parse_global_type("p -> q : m . 0")).empty());
}

TEST_CASE("get_mu: blow-up family binders at n=1") {
    const auto mu = get_mu(generate_gn(1));
    REQUIRE(mu.size() == 3);
    CHECK(mu.count("t_1"));
    CHECK(mu.count("t_2"));
    CHECK(mu.count("t_3_1"));
}

TEST_CASE("get_mu never maps to a variable node") {
    for (const auto& entry : corpus::types()) {
        for (const auto& [var, body] : get_mu(entry.type)) {
            CAPTURE(entry.name, var);
            CHECK(entry.type.node(body).kind != NodeKind::Var);
        }
    }
    for (unsigned seed = 0; seed < 50; ++seed) {
        const GlobalType g = gen_random::random_type(seed);
        for (const auto& [var, body] : get_mu(g)) {
            CHECK(g.node(body).kind != NodeKind::Var);
        }
    }
}

TEST_CASE("generate_gn: n=1 roles and messages") {
    const GlobalType g = generate_gn(1);
    const auto roles = roles_of(g);
    CHECK(roles == std::vector<Role>{{"p"}, {"r"}, {"q"}});
    const auto msgs = messages_of(g);
    CHECK(msgs == std::set<Message>{{"a"}, {"b"}, {"m_1"}, {"m_2"}, {"m_3"}, {"n_1"}, {"n_2"},
                                    {"n_3"}});
}

TEST_CASE("generate_gn: linear growth") {
    const auto sz = [](int n) { return generate_gn(n).node_count(); };
    CHECK(sz(2) - sz(1) == sz(3) - sz(2));
    CHECK(sz(5) - sz(4) == sz(3) - sz(2));
}

TEST_CASE("generate_gn: valid for n = 1..12") {
    for (int n = 1; n <= 12; ++n) {
        CAPTURE(n);
        CHECK(validate(generate_gn(n)).empty());
    }
    CHECK_THROWS_AS(generate_gn(0), std::invalid_argument);
}

TEST_CASE("round trip: corpus") {
    for (const auto& entry : corpus::types()) {
        CAPTURE(entry.name);
        const GlobalType again = parse_global_type(pretty(entry.type));
        CHECK(again == entry.type);
    }
}

TEST_CASE("round trip: random types") {
    for (unsigned seed = 0; seed < 200; ++seed) {
        const GlobalType g = gen_random::random_type(seed);
        CAPTURE(seed, pretty(g));
        REQUIRE(validate(g).empty());
        CHECK(parse_global_type(pretty(g)) == g);
    }
}

TEST_CASE("shadowed binders resolve to the nearest enclosing") {
    const GlobalType g =
        parse_global_type("mu t . p -> q : a . mu t . (p -> q : m . t + p -> q : stop . 0)");
    // The inner variable occurrence binds to the inner binder.
    NodeId var = -1, inner = -1;
    for (NodeId id = 0; id < g.node_count(); ++id) {
        if (g.node(id).kind == NodeKind::Var) var = id;
        if (g.node(id).kind == NodeKind::Rec && id != 0) inner = id;
    }
    REQUIRE(var >= 0);
    CHECK(g.node(var).binder == inner);
    // The flat map keeps the outermost binding per name.
    CHECK(get_mu(g).at("t") == g.node(0).body);
}
