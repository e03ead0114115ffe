#include "corpus.hpp"

#include <map>
#include <stdexcept>

namespace corpus {

namespace {

mst::GlobalType parse(const std::string& text) { return mst::parse_global_type(text); }

}  // namespace

const std::vector<TypeEntry>& types() {
    static const std::vector<TypeEntry> all = [] {
        std::vector<TypeEntry> out;
        out.push_back({"single", parse("p -> q : m . 0")});
        out.push_back({"g1_sec4", parse("(p->q:b . q->p:b . 0 + p->q:m . q->p:m . 0)")});
        out.push_back(
            {"g2_sec4", parse("(p->q:b . p->r:o . q->p:b . 0 + p->q:m . p->r:o . q->p:m . 0)")});
        out.push_back({"gprime_sec5", parse("p -> q : m . "
                                            "(r -> q : b . p -> r : m . (q -> r : b . 0 + q -> r : o . 0)"
                                            " + r -> q : o . p -> r : m . (q -> r : b . 0 + q -> r : o . 0))")});
        out.push_back({"g_loop", parse("mu t . p -> q : m . t")});
        out.push_back({"g1_sec2", parse("q -> p : m . r -> p : m . 0")});
        out.push_back({"g2_sec2", parse("q -> p : m . 0")});
        out.push_back({"gn1", mst::generate_gn(1)});
        out.push_back({"v1_ack", parse("p -> q : m . q -> p : ack . 0")});
        out.push_back({"v2_ring", parse("p -> q : m . q -> r : m . r -> p : done . 0")});
        out.push_back({"v3_merge", parse("(p -> q : a . q -> p : x . 0 + p -> q : b . q -> p : x . 0)")});
        out.push_back({"v4_loop_exit",
                       parse("mu t . (p -> q : go . q -> p : ack . t + p -> q : stop . 0)")});
        out.push_back({"v5_two_receivers",
                       parse("(p -> q : left . p -> r : left . 0 + p -> r : right . p -> q : right . 0)")});
        out.push_back({"v6_pingpong", parse("mu t . p -> q : m . q -> p : ack . t")});
        out.push_back({"v7_nested_choice",
                       parse("p -> q : m . (q -> r : a . r -> q : x . 0 + q -> r : b . r -> q : y . 0)")});
        out.push_back({"v8_nested_rec",
                       parse("mu loop . (p -> q : work . mu inner . "
                             "(q -> p : more . inner + q -> p : done . loop) + p -> q : halt . 0)")});
        out.push_back({"v9_two_senders", parse("q -> p : a . r -> p : b . 0")});
        out.push_back({"v10_cross",
                       parse("(p -> q : m . q -> r : m . 0 + p -> r : o . r -> q : n . 0)")});
        return out;
    }();
    return all;
}

const mst::GlobalType& by_name(const std::string& name) {
    for (const auto& entry : types()) {
        if (entry.name == name) return entry.type;
    }
    throw std::out_of_range("no corpus type named '" + name + "'");
}

const mst::GlobalType& bad_send_validity() {
    // r cannot know which branch p picked, yet must send a matching message.
    static const mst::GlobalType g =
        parse("(p -> q : b . r -> p : c . 0 + p -> q : m . r -> p : d . 0)");
    return g;
}

const mst::GlobalType& bad_receive_validity() {
    // p may receive r's message while q's branch-1 message is still available.
    static const mst::GlobalType g =
        parse("(q -> p : m . r -> p : o . 0 + q -> r : go . r -> p : o . 0)");
    return g;
}

namespace {

mst::LocalMachine machine(const std::string& text) { return mst::parse_machine(text); }

}  // namespace

mst::LocalMachine fig1_a() {
    return machine(
        "role p\n"
        "state a0 initial\n"
        "state a1 final\n"
        "state a2 final\n"
        "a0 p<q?m a1\n"
        "a1 p<r?m a2\n"
        "a0 p<r?m a2\n");
}

mst::LocalMachine fig1_a_alt() {
    return machine(
        "role p\n"
        "state a0 initial\n"
        "state a1 final\n"
        "state a2 final\n"
        "a0 p<q?m a1\n"
        "a0 p<r?m a2\n"
        "a2 p<q?m a1\n");
}

mst::LocalMachine fig1_b() {
    return machine(
        "role p\n"
        "state b0 initial\n"
        "state b1 final\n"
        "b0 p<q?m b1\n");
}

mst::LocalMachine chain_b() {
    return machine(
        "role p\n"
        "state b0 initial\n"
        "state b1\n"
        "state b2 final\n"
        "b0 p<q?m b1\n"
        "b1 p<r?m b2\n");
}

mst::LocalMachine a1_merged() {
    return machine(
        "role p\n"
        "state s0 initial\n"
        "state sb\n"
        "state sm\n"
        "state f final\n"
        "s0 p>q!b sb\n"
        "s0 p>q!m sm\n"
        "sb p<q?b f\n"
        "sm p<q?m f\n");
}

mst::LocalMachine a2_universal() {
    return machine(
        "role p\n"
        "state s0 initial\n"
        "state u final\n"
        "s0 p>q!b u\n"
        "s0 p>q!m u\n"
        "u p<q?b u\n"
        "u p<q?m u\n");
}

mst::LocalMachine a3_unreachable() {
    return machine(
        "role p\n"
        "state s0 initial\n"
        "state u final\n"
        "state z\n"
        "s0 p>q!b u\n"
        "s0 p>q!m u\n"
        "u p<q?b u\n"
        "u p<q?m u\n"
        "z p>q!b z\n"
        "z p>q!m u\n");
}

mst::LocalMachine a4_universal() {
    return machine(
        "role p\n"
        "state s0 initial\n"
        "state tb\n"
        "state tm\n"
        "state u final\n"
        "s0 p>q!b tb\n"
        "s0 p>q!m tm\n"
        "tb p>r!o u\n"
        "tm p>r!o u\n"
        "u p<q?b u\n"
        "u p<q?m u\n");
}

mst::LocalMachine a5_merged() {
    return machine(
        "role p\n"
        "state s0 initial\n"
        "state t\n"
        "state u final\n"
        "s0 p>q!b t\n"
        "s0 p>q!m t\n"
        "t p>r!o u\n"
        "u p<q?b u\n"
        "u p<q?m u\n");
}

mst::LocalMachine fig6a() {
    return machine(
        "role p\n"
        "state u0 initial\n"
        "state u1\n"
        "state u2 final\n"
        "u0 p>q!b u1\n"
        "u1 p<q?b u2\n");
}

mst::LocalMachine fig6b() {
    return machine(
        "role p\n"
        "state v0 initial\n"
        "state v1\n"
        "state v2 final\n"
        "state v3\n"
        "v0 p>q!b v1\n"
        "v1 p<q?b v2\n"
        "v0 p>q!m v3\n");
}

mst::LocalMachine no_send_p() {
    return machine(
        "role p\n"
        "state w0 initial\n");
}

mst::LocalMachine no_trans_q() {
    return machine(
        "role q\n"
        "state q0 initial final\n");
}

mst::LocalMachine aq_prime() {
    return machine(
        "role q\n"
        "state t0 initial\n"
        "state t1\n"
        "state t2\n"
        "state t3\n"
        "state f final\n"
        "t0 q<p?m t1\n"
        "t0 q<r?b t1\n"  // early receive; dead when r sticks to o
        "t1 q<r?b t2\n"
        "t1 q<r?o t3\n"
        "t2 q>r!b f\n"
        "t3 q>r!b f\n");
}

mst::LocalMachine ar_prime() {
    return machine(
        "role r\n"
        "state r0 initial\n"
        "state r1\n"
        "state r2\n"
        "state fr final\n"
        "r0 r>q!o r1\n"
        "r1 r<p?m r2\n"
        "r1 r<q?o r2\n"  // early receive; dead when q sticks to b
        "r2 r<q?b fr\n"
        "r2 r<q?o fr\n");
}

mst::LocalMachine universal_receiver_q() {
    return machine(
        "role q\n"
        "state s0 initial final\n"
        "state s1 final\n"
        "s0 q<p?a s1\n"
        "s0 q<p?b s1\n"
        "s1 q<p?a s1\n"
        "s1 q<p?b s1\n");
}

const std::vector<CandidateEntry>& candidates() {
    static const std::vector<CandidateEntry> all = [] {
        std::vector<CandidateEntry> out;
        out.push_back({"g1_sec4", "a1_merged", a1_merged(), true, FailureClass::None});
        out.push_back({"g1_sec4", "a2_universal", a2_universal(), true, FailureClass::None});
        out.push_back({"g1_sec4", "a3_unreachable", a3_unreachable(), true, FailureClass::None});
        out.push_back({"g1_sec4", "fig6a", fig6a(), true, FailureClass::None});
        out.push_back({"g1_sec4", "fig6b", fig6b(), false, FailureClass::Deadlock});
        out.push_back({"g1_sec4", "no_send_p", no_send_p(), false, FailureClass::Deadlock});
        out.push_back({"g2_sec4", "a4_universal", a4_universal(), true, FailureClass::None});
        out.push_back({"g2_sec4", "a5_merged", a5_merged(), true, FailureClass::None});
        out.push_back({"g2_sec2", "fig1_a", fig1_a(), true, FailureClass::None});
        out.push_back({"g1_sec2", "fig1_a", fig1_a(), false, FailureClass::Fidelity});
        out.push_back({"g2_sec2", "chain_b", chain_b(), false, FailureClass::Deadlock});
        out.push_back({"g_loop", "no_trans_q", no_trans_q(), false, FailureClass::Deadlock});
        out.push_back({"gprime_sec5", "aq_prime", aq_prime(), false, FailureClass::Fidelity});
        out.push_back({"gprime_sec5", "ar_prime", ar_prime(), false, FailureClass::Fidelity});
        out.push_back({"gn1", "universal_receiver_q", universal_receiver_q(), true,
                       FailureClass::None});
        return out;
    }();
    return all;
}

}  // namespace corpus
