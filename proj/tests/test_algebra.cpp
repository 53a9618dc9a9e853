#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ocs/algebra.hpp"
#include "ocs/term.hpp"

using namespace ocs;

namespace {

Term v(const std::string& n) { return Term::var(n); }
Term k(const std::string& n) { return Term::fun(n, {}); }
Term u(const std::string& n, Term a) { return Term::fun(n, {std::move(a)}); }

Signature r0_sig() {
    Signature s;
    s.add("a", 0);
    s.add("b", 0);
    s.add("f", 1);
    return s;
}

Trs r0() {
    return Trs(r0_sig(), {{k("a"), u("f", k("a"))},
                          {u("f", u("f", v("x"))), k("b")}});
}

// Two elements; a and b sit at 0, every f-term at 1.
FiniteAlgebra a0() {
    FiniteAlgebra a(r0_sig(), {"zero", "one"});
    a.set_interp("a", {}, 0);
    a.set_interp("b", {}, 0);
    a.set_interp("f", {0}, 1);
    a.set_interp("f", {1}, 1);
    return a;
}

Signature r1_sig() {
    Signature s;
    s.add("c", 0);
    s.add("f", 1);
    s.add("g", 1);
    return s;
}

Trs r1() {
    Term fgx = u("f", u("g", v("x")));
    return Trs(r1_sig(), {{fgx, u("f", fgx)},
                          {u("f", u("f", u("f", v("x")))), v("x")}});
}

FiniteAlgebra a1() {
    FiniteAlgebra a(r1_sig(), {"bot", "f", "g", "ff"});
    int bot = 0, f = 1, g = 2, ff = 3;
    a.set_interp("c", {}, bot);
    a.set_interp("f", {bot}, f);
    a.set_interp("f", {f}, ff);
    a.set_interp("f", {g}, f);
    a.set_interp("f", {ff}, ff);
    for (int e : {bot, f, g, ff}) a.set_interp("g", {e}, g);
    return a;
}

// a -> f(a) against [f](x) = 1 - x: values alternate forever.
FiniteAlgebra parity() {
    Signature s;
    s.add("a", 0);
    s.add("f", 1);
    FiniteAlgebra a(s, {"zero", "one"});
    a.set_interp("a", {}, 0);
    a.set_interp("f", {0}, 1);
    a.set_interp("f", {1}, 0);
    return a;
}

}  // namespace

TEST_CASE("finite algebra basics") {
    FiniteAlgebra a = a0();
    CHECK(a.size() == 2);
    CHECK(a.element_names() == std::vector<std::string>{"zero", "one"});
    CHECK(a.name(1) == "one");
    CHECK(a.element_by_name("zero") == 0);
    CHECK_FALSE(a.element_by_name("two").has_value());
    CHECK(a.interp("f", {0}) == 1);
    CHECK_NOTHROW(a.check_total());
}

TEST_CASE("check_total reports missing entries") {
    FiniteAlgebra a(r0_sig(), {"zero", "one"});
    a.set_interp("a", {}, 0);
    CHECK_THROWS(a.check_total());
}

TEST_CASE("evaluation") {
    FiniteAlgebra a = a0();
    CHECK(a.eval_ground(u("f", k("a"))) == 1);
    CHECK(a.eval_ground(k("b")) == 0);
    CHECK(a.eval(u("f", v("x")), {{"x", 0}}) == 1);
    CHECK(a.eval(v("x"), {{"x", 1}}) == 1);
    CHECK_THROWS_AS(a.eval(v("y"), {{"x", 0}}), std::runtime_error);
}

TEST_CASE("assignment enumeration") {
    auto as = enumerate_assignments({"x", "y"}, 3);
    CHECK(as.size() == 9);
    CHECK(enumerate_assignments({}, 3).size() == 1);
    CHECK(enumerate_assignments({"x"}, 1).size() == 1);
}

TEST_CASE("tuple index round trip") {
    FiniteAlgebra a = a1();
    for (std::size_t i = 0; i < 16; ++i) {
        auto args = a.tuple_at(2, i);
        CHECK(args.size() == 2);
        CHECK(a.tuple_index(2, args) == i);
    }
    CHECK(a.tuple_at(0, 0).empty());
}

TEST_CASE("core keeps exactly the values of ground terms") {
    // one is not the value of any ground term
    FiniteAlgebra a(r0_sig(), {"zero", "one"});
    a.set_interp("a", {}, 0);
    a.set_interp("b", {}, 0);
    a.set_interp("f", {0}, 0);
    a.set_interp("f", {1}, 0);
    CHECK_FALSE(is_core(a));
    CoreResult cr = core(a);
    CHECK(cr.algebra.size() == 1);
    CHECK(is_core(cr.algebra));
    CHECK(cr.new_to_old == std::vector<Elem>{0});
    CHECK(cr.old_to_new[0] == 0);

    CHECK(is_core(a0()));
    CHECK(core(a0()).algebra.size() == 2);
}

TEST_CASE("core requires a ground term to exist") {
    Signature s;
    s.add("f", 1);
    FiniteAlgebra a(s, {"zero"});
    a.set_interp("f", {0}, 0);
    CHECK_THROWS_AS(core(a), EmptyCore);
}

TEST_CASE("rule c-depths") {
    FiniteAlgebra a = a0();
    Trs r = r0();
    CHECK(rule_cdepth(a, r.rules()[0]) == 1);
    CHECK(rule_cdepth(a, r.rules()[1]) == 1);

    // a one-element algebra is a model, so every rule has depth 0
    FiniteAlgebra one(r0_sig(), {"e"});
    one.set_interp("a", {}, 0);
    one.set_interp("b", {}, 0);
    one.set_interp("f", {0}, 0);
    for (const Rule& rule : r.rules()) CHECK(rule_cdepth(one, rule) == 0);

    Trs pr(parity().sig(), {{k("a"), u("f", k("a"))}});
    CHECK_FALSE(rule_cdepth(parity(), pr.rules()[0]).has_value());
}

TEST_CASE("c-model check over the four-element algebra") {
    CModelReport rep = check_cmodel(a1(), r1());
    REQUIRE(rep.is_cmodel());
    CHECK(rep.rule_cdepths[0] == 1);
    CHECK(rep.rule_cdepths[1] == 2);
    CHECK(rep.trs_cdepth() == 2);

    Trs pr(parity().sig(), {{k("a"), u("f", k("a"))}});
    CHECK_FALSE(check_cmodel(parity(), pr).is_cmodel());
}

TEST_CASE("top extension adds a constant-valued unary symbol") {
    FiniteAlgebra a = extend_with_top(a0());
    CHECK(a.size() == 2);
    CHECK(a.sig().contains(top_symbol));
    CHECK(a.sig().arity(top_symbol) == 1);
    CHECK(a.interp(top_symbol, {0}) == 0);
    CHECK(a.interp(top_symbol, {1}) == 0);
    CHECK(a.eval_ground(u(top_symbol, u("f", k("a")))) == 0);
    CHECK_THROWS_AS(extend_with_top(a), SymbolClash);
}
