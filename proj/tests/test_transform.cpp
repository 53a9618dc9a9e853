#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "ocs/io.hpp"
#include "ocs/transform.hpp"

using namespace ocs;

namespace {

Term v(const std::string& n) { return Term::var(n); }
Term k(const std::string& n) { return Term::fun(n, {}); }
Term u(const std::string& n, Term a) { return Term::fun(n, {std::move(a)}); }

Trs load(const std::string& name) {
    return parse_problem(read_file(std::string(OCS_FIXTURE_DIR) + "/" + name)).trs;
}

RedexAlgebra sidecar(const std::string& name, const Trs& r) {
    return parse_algebra(read_file(std::string(OCS_FIXTURE_DIR) + "/" + name), r.sig());
}

CLabeling make(const std::string& trs_file, LabelingMode mode) {
    RedexAlgebra ra = build_redex_algebra(load(trs_file), BuildMode::LeftLinear);
    return mode == LabelingMode::Minimal ? CLabeling::minimal(ra) : CLabeling::maximal(ra);
}

std::vector<std::string> rule_strings(const CsTrs& cs) {
    std::vector<std::string> out;
    for (const Rule& r : cs.trs.rules()) out.push_back(r.to_string());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

bool contains(const std::vector<std::string>& rules, const std::string& s) {
    return std::find(rules.begin(), rules.end(), s) != rules.end();
}

ValuePair vp(const CLabeling& cl, const std::string& a, const std::string& b) {
    auto ea = cl.algebra().element_by_name(a);
    auto eb = cl.algebra().element_by_name(b);
    REQUIRE(ea.has_value());
    REQUIRE(eb.has_value());
    return {*ea, *eb};
}

// Two elements swapped by f; not a c-model for the systems below.
RedexAlgebra parity_algebra() {
    Signature s;
    s.add("a", 0);
    s.add("b", 0);
    s.add("f", 1);
    FiniteAlgebra alg(s, {"even", "odd"});
    alg.set_interp("a", {}, 0);
    alg.set_interp("b", {}, 0);
    alg.set_interp("f", {0}, 1);
    alg.set_interp("f", {1}, 0);
    return RedexAlgebra(alg, {{"a", {0}}, {"b", {0}}, {"f", {0, 0}}});
}

}  // namespace

TEST_CASE("dynamic extension wraps value-changing rules once") {
    Trs r0 = load("r0.trs");
    CLabeling cl = make("r0.trs", LabelingMode::Minimal);
    DynamicExtensionResult res = dynamic_context_extension(r0, cl);

    std::vector<std::string> expect = sorted({
        "f(a*) -> f*(f(a*))",
        "⊤(a*) -> ⊤(f(a*))",
        "⊤(f*(f(x1))) -> ⊤(b)",
        "⊤(f*(f*(x1))) -> ⊤(b)",
    });
    CHECK((rule_strings(res.cstrs) == expect));
    CHECK(res.pair_count == 4);

    // Rewriting is blocked below redex symbols and nowhere else.
    CHECK(res.cstrs.mu.at("f*", 1).empty());
    CHECK((res.cstrs.mu.at("f", 1) == std::set<int>{1}));
    CHECK((res.cstrs.mu.at(top_symbol, 1) == std::set<int>{1}));
}

TEST_CASE("dynamic extension of the nested unary system") {
    Trs r1 = load("r1.trs");
    CLabeling cl = make("r1.trs", LabelingMode::Maximal);
    DynamicExtensionResult res = dynamic_context_extension(r1, cl);

    std::vector<std::string> expect = sorted({
        "f^f(f^g(g^bot(x1))) -> f^ff(f^f(f^g(g^bot(x1))))",
        "f^f(f^g(g^f(x1))) -> f^ff(f^f(f^g(g^f(x1))))",
        "f^f(f^g(g^ff(x1))) -> f^ff(f^f(f^g(g^ff(x1))))",
        "f^f(f^g(g^g(x1))) -> f^ff(f^f(f^g(g^g(x1))))",
        "f^ff(f^ff(f^ff(x1))) -> x1",
        "g^f(f^g(g^bot(x1))) -> g^ff(f^f(f^g(g^bot(x1))))",
        "g^f(f^g(g^f(x1))) -> g^ff(f^f(f^g(g^f(x1))))",
        "g^f(f^g(g^ff(x1))) -> g^ff(f^f(f^g(g^ff(x1))))",
        "g^f(f^g(g^g(x1))) -> g^ff(f^f(f^g(g^g(x1))))",
        "g^ff(f^ff(f^f(f^bot(x1)))) -> g^bot(x1)",
        "g^ff(f^ff(f^f(f^g(x1)))) -> g^g(x1)",
        "g^ff(f^ff(f^ff(f^f(x1)))) -> g^f(x1)",
        "⊤^f(f^g(g^bot(x1))) -> ⊤^ff(f^f(f^g(g^bot(x1))))",
        "⊤^f(f^g(g^f(x1))) -> ⊤^ff(f^f(f^g(g^f(x1))))",
        "⊤^f(f^g(g^ff(x1))) -> ⊤^ff(f^f(f^g(g^ff(x1))))",
        "⊤^f(f^g(g^g(x1))) -> ⊤^ff(f^f(f^g(g^g(x1))))",
        "⊤^ff(f^ff(f^f(f^bot(x1)))) -> ⊤^bot(x1)",
        "⊤^ff(f^ff(f^f(f^g(x1)))) -> ⊤^g(x1)",
        "⊤^ff(f^ff(f^ff(f^f(x1)))) -> ⊤^f(x1)",
    });
    CHECK((rule_strings(res.cstrs) == expect));
    CHECK(res.pair_count == 19);

    CHECK(res.cstrs.mu.at("f^g", 1).empty());
    CHECK(res.cstrs.mu.at("f^ff", 1).empty());
    CHECK((res.cstrs.mu.at("f^f", 1) == std::set<int>{1}));
    CHECK((res.cstrs.mu.at("g^bot", 1) == std::set<int>{1}));
}

TEST_CASE("collapse elimination extends value-preserving collapses too") {
    Trs r1 = load("r1.trs");
    CLabeling cl = make("r1.trs", LabelingMode::Maximal);
    DynamicExtensionResult res =
        dynamic_context_extension(r1, cl, {.eliminate_collapsing = true});
    CHECK(res.pair_count == 20);
    std::vector<std::string> rules = rule_strings(res.cstrs);
    CHECK_FALSE(contains(rules, "f^ff(f^ff(f^ff(x1))) -> x1"));
    CHECK(contains(rules, "g^ff(f^ff(f^ff(f^ff(x1)))) -> g^ff(x1)"));
    CHECK(contains(rules, "⊤^ff(f^ff(f^ff(f^ff(x1)))) -> ⊤^ff(x1)"));
}

TEST_CASE("dynamic extension of the duplicating system") {
    Trs r3 = load("r3_dupl_rhs.trs");
    CLabeling cl = make("r3_dupl_rhs.trs", LabelingMode::Minimal);

    DynamicExtensionResult elim =
        dynamic_context_extension(r3, cl, {.eliminate_collapsing = true});
    std::vector<std::string> expect = sorted({
        "f(x1,f*(i*(x2),x3)) -> f(x1,x2)",
        "f(x1,f*(i*(x2),x3)) -> f*(x1,x2)",
        "f(x1,h*(x2)) -> f(x1,f*(h*(x2),c))",
        "f(x1,i*(x2)) -> f(x1,h*(x2))",
        "f(f*(i*(x1),x2),x3) -> f(x1,x3)",
        "f(f*(i*(x1),x2),x3) -> f*(x1,x3)",
        "f(h*(x1),x2) -> f(f*(h*(x1),c),x2)",
        "f*(h*(x1),c) -> f*(i*(x1),s(x1))",
        "s(f*(i*(x1),x2)) -> s(x1)",
        "s(h*(x1)) -> s(f*(h*(x1),c))",
        "s(i*(x1)) -> s(h*(x1))",
        "⊤(f*(i*(x1),x2)) -> ⊤(x1)",
        "⊤(h*(x1)) -> ⊤(f*(h*(x1),c))",
        "⊤(i*(x1)) -> ⊤(h*(x1))",
    });
    CHECK((rule_strings(elim.cstrs) == expect));
    CHECK(elim.pair_count == 200);

    // Without elimination the collapsing rule stays as is.
    DynamicExtensionResult plain = dynamic_context_extension(r3, cl);
    CHECK(plain.pair_count == 168);
    std::vector<std::string> with_collapse = expect;
    with_collapse.push_back("f*(i*(x1),x2) -> x1");
    std::sort(with_collapse.begin(), with_collapse.end());
    CHECK((rule_strings(plain.cstrs) == with_collapse));
}

TEST_CASE("value change pairs close under outside-sigred contexts") {
    Trs r1 = load("r1.trs");
    CLabeling cl1 = make("r1.trs", LabelingMode::Maximal);
    std::set<ValuePair> p1 = value_change_pairs(r1, cl1);
    std::set<ValuePair> e1 = {vp(cl1, "f", "ff"), vp(cl1, "ff", "bot"),
                              vp(cl1, "ff", "f"), vp(cl1, "ff", "g")};
    CHECK((p1 == e1));

    Trs r3 = load("r3_dupl_rhs.trs");
    CLabeling cl3 = make("r3_dupl_rhs.trs", LabelingMode::Minimal);
    std::set<ValuePair> p3 = value_change_pairs(r3, cl3);
    std::set<ValuePair> e3 = {vp(cl3, "bot", "c"), vp(cl3, "bot", "h"),
                              vp(cl3, "bot", "i"), vp(cl3, "i", "h"),
                              vp(cl3, "h", "bot")};
    CHECK((p3 == e3));

    // Propagating f -> bot through g yields the second pair here.
    Trs rf = load("fgfx.trs");
    CLabeling clf = make("fgfx.trs", LabelingMode::Minimal);
    std::set<ValuePair> pf = value_change_pairs(rf, clf);
    std::set<ValuePair> ef = {vp(clf, "f", "bot"), vp(clf, "gf", "bot")};
    CHECK((pf == ef));
}

TEST_CASE("static extension prepends thin contexts of the c-depth") {
    Trs r1 = load("r1.trs");
    CLabeling cl = make("r1.trs", LabelingMode::Maximal);
    StaticExtensionResult res = static_context_extension(r1, cl);
    CHECK(res.extended == 10);
    CHECK(res.labeled == 40);
    CHECK(res.removed == 12);
    CHECK(res.cstrs.trs.rules().size() == 28);

    std::vector<std::string> rules = rule_strings(res.cstrs);
    CHECK(contains(rules, "f^f(f^g(g^bot(x1))) -> f^ff(f^f(f^g(g^bot(x1))))"));
    // A redex-labeled root is fine; only symbols strictly inside the
    // context disqualify a rule.
    CHECK(contains(rules, "f^g(g^ff(f^ff(f^ff(f^ff(x1))))) -> f^g(g^ff(x1))"));
    CHECK(contains(rules, "⊤^ff(f^ff(f^ff(f^ff(x1)))) -> ⊤^ff(x1)"));
    CHECK(contains(rules, "⊤^g(g^ff(f^ff(f^f(f^bot(x1))))) -> ⊤^g(g^bot(x1))"));
    CHECK_FALSE(contains(
        rules, "f^ff(f^ff(f^ff(f^ff(f^ff(x1))))) -> f^ff(f^ff(f^ff(x1)))"));

    CHECK(res.cstrs.mu.at("f^g", 1).empty());
    CHECK(res.cstrs.mu.at("f^ff", 1).empty());
    CHECK((res.cstrs.mu.at("g^ff", 1) == std::set<int>{1}));
}

TEST_CASE("static extension keeps collapses whose context stays clean") {
    Trs r2 = load("r2.trs");
    CLabeling cl = make("r2.trs", LabelingMode::Maximal);
    StaticExtensionResult res = static_context_extension(r2, cl);
    CHECK(res.extended == 14);
    CHECK(res.labeled == 42);
    CHECK(res.removed == 21);
    CHECK(res.cstrs.trs.rules().size() == 21);

    std::vector<std::string> rules = rule_strings(res.cstrs);
    CHECK(contains(rules, "g^g(g^bot(f^bot(x1))) -> g^g(g^bot(x1))"));
    CHECK(contains(rules, "g^g(g^bot(f^fg(x1))) -> g^g(g^fg(x1))"));
    // The assignment labeling the inner context symbol g^fg puts a redex
    // symbol inside the context, so that variant is dropped.
    CHECK_FALSE(contains(rules, "g^g(g^fg(f^g(x1))) -> g^g(g^g(x1))"));
}

TEST_CASE("static extension with c-depth zero only adds the root marker") {
    Trs r7 = load("r7_whycore.trs");
    CLabeling cl = CLabeling::maximal(sidecar("r7_whycore.alg", r7));
    StaticExtensionResult res = static_context_extension(r7, cl);
    CHECK(res.extended == 4);
    CHECK(res.labeled == 16);
    CHECK(res.removed == 0);
    CHECK(res.cstrs.trs.rules().size() == 16);
}

TEST_CASE("dynamic labeling of the constant system") {
    Trs r0 = load("r0.trs");
    CLabeling cl = make("r0.trs", LabelingMode::Minimal);
    DynamicLabelingResult res = dynamic_labeling(r0, cl);

    std::vector<std::string> expect = sorted({
        "a* -> ↑bot→f(f(a*))",
        "f*(f(x1)) -> ↑f→bot(b)",
        "f*(f*(x1)) -> ↑f→bot(b)",
        "f(↑bot→f(x1)) -> f*(x1)",
        "⊤(↑bot→f(x1)) -> ⊤(x1)",
        "⊤(↑f→bot(x1)) -> ⊤(x1)",
    });
    CHECK((rule_strings(res.cstrs) == expect));
    CHECK(res.labeled == 3);
    CHECK(res.relabel_sigma == 1);
    CHECK(res.relabel_top == 2);

    std::set<ValuePair> pairs = {vp(cl, "bot", "f"), vp(cl, "f", "bot")};
    CHECK((res.pairs == pairs));

    CHECK(res.origins.size() == res.cstrs.trs.rules().size());
    CHECK(std::count(res.origins.begin(), res.origins.end(), RuleOrigin::Labeled) == 3);
    CHECK(std::count(res.origins.begin(), res.origins.end(), RuleOrigin::RelabelSigma) == 1);
    CHECK(std::count(res.origins.begin(), res.origins.end(), RuleOrigin::RelabelTop) == 2);
    CHECK(res.origins.front() == RuleOrigin::Labeled);
    CHECK(res.origins.back() == RuleOrigin::RelabelTop);

    CHECK(res.cstrs.mu.at("f*", 1).empty());
    CHECK(res.cstrs.mu.at("↑bot→f", 1).empty());
    CHECK(res.cstrs.mu.at("↑f→bot", 1).empty());
    CHECK((res.cstrs.mu.at("f", 1) == std::set<int>{1}));
}

TEST_CASE("dynamic labeling of the nested unary system") {
    Trs r1 = load("r1.trs");
    CLabeling cl = make("r1.trs", LabelingMode::Maximal);
    DynamicLabelingResult res = dynamic_labeling(r1, cl);

    std::vector<std::string> expect = sorted({
        "f^ff(f^f(f^bot(x1))) -> ↑ff→bot(x1)",
        "f^ff(f^f(f^g(x1))) -> ↑ff→g(x1)",
        "f^ff(f^ff(f^f(x1))) -> ↑ff→f(x1)",
        "f^ff(f^ff(f^ff(x1))) -> x1",
        "f^g(g^bot(x1)) -> ↑f→ff(f^f(f^g(g^bot(x1))))",
        "f^g(g^f(x1)) -> ↑f→ff(f^f(f^g(g^f(x1))))",
        "f^g(g^ff(x1)) -> ↑f→ff(f^f(f^g(g^ff(x1))))",
        "f^g(g^g(x1)) -> ↑f→ff(f^f(f^g(g^g(x1))))",
        "f^f(↑f→ff(x1)) -> f^ff(x1)",
        "g^f(↑f→ff(x1)) -> g^ff(x1)",
        "g^ff(↑ff→bot(x1)) -> g^bot(x1)",
        "g^ff(↑ff→f(x1)) -> g^f(x1)",
        "g^ff(↑ff→g(x1)) -> g^g(x1)",
        "⊤^f(↑f→ff(x1)) -> ⊤^ff(x1)",
        "⊤^ff(↑ff→bot(x1)) -> ⊤^bot(x1)",
        "⊤^ff(↑ff→f(x1)) -> ⊤^f(x1)",
        "⊤^ff(↑ff→g(x1)) -> ⊤^g(x1)",
    });
    CHECK((rule_strings(res.cstrs) == expect));
    CHECK(res.labeled == 8);
    CHECK(res.relabel_sigma == 5);
    CHECK(res.relabel_top == 4);

    // Without the reachability restriction every ordered element pair gets
    // relabel rules, minus those rooted in sigred.
    DynamicLabelingResult wide =
        dynamic_labeling(r1, cl, {.eliminate_collapsing = false,
                                  .restrict_to_reachable = false});
    CHECK(wide.labeled == 8);
    CHECK(wide.relabel_sigma == 18);
    CHECK(wide.relabel_top == 12);
}

TEST_CASE("dynamic labeling with a hand-written redex predicate") {
    Trs r = load("dyncomplete.trs");
    CLabeling cl = CLabeling::maximal(sidecar("dyncomplete.alg", r));
    DynamicLabelingResult res = dynamic_labeling(r, cl);

    std::vector<std::string> expect = sorted({
        "a -> ↑bot→b(b)",
        "f^b,b(x1,b) -> a",
        "f^b,b(b,x1) -> a",
        "f^b,b(b,b) -> f^bot,bot(a,a)",
        "f^b,bot(b,x1) -> a",
        "f^bot,b(x1,b) -> a",
        "f^bot,bot(x1,↑bot→b(x2)) -> f^bot,b(x1,x2)",
        "f^bot,bot(↑bot→b(x1),x2) -> f^b,bot(x1,x2)",
        "⊤^bot(↑bot→b(x1)) -> ⊤^b(x1)",
    });
    CHECK((rule_strings(res.cstrs) == expect));
    CHECK(res.labeled == 6);
    CHECK(res.relabel_sigma == 2);
    CHECK(res.relabel_top == 1);
}

TEST_CASE("relabel rules re-mark the symbol they pass through") {
    Trs r = load("fgfx.trs");
    CLabeling cl = make("fgfx.trs", LabelingMode::Minimal);
    DynamicLabelingResult res = dynamic_labeling(r, cl);

    std::vector<std::string> expect = sorted({
        "f*(g(f(x1))) -> ↑f→bot(d)",
        "f*(g(f*(x1))) -> ↑f→bot(d)",
        "f(↑f→bot(x1)) -> f(x1)",
        "g(↑f→bot(x1)) -> ↑gf→bot(g(x1))",
        "g(↑gf→bot(x1)) -> g(x1)",
        "⊤(↑f→bot(x1)) -> ⊤(x1)",
        "⊤(↑gf→bot(x1)) -> ⊤(x1)",
    });
    CHECK((rule_strings(res.cstrs) == expect));
    CHECK(res.labeled == 2);
    CHECK(res.relabel_sigma == 3);
    CHECK(res.relabel_top == 2);
}

TEST_CASE("ground extension adds a fresh constant and unary symbol") {
    Trs r1 = load("r1.trs");
    GroundExtension g = ground_extend(r1);
    CHECK(g.constant == "0");
    CHECK(g.unary == "s");
    CHECK(g.trs.sig().symbols().at("0") == 0);
    CHECK(g.trs.sig().symbols().at("s") == 1);
    CHECK(g.trs.rules().size() == r1.rules().size());

    // inflist already uses s, so the unary name is suffixed.
    GroundExtension gi = ground_extend(load("inflist.trs"));
    CHECK(gi.constant == "0");
    CHECK(gi.unary == "s1");
    CHECK(gi.trs.sig().symbols().at("s1") == 1);

    // Rule variables are avoided as well.
    Signature s;
    s.add("h", 1);
    s.add("c", 0);
    Trs clash(s, {{u("h", v("s")), k("c")}});
    GroundExtension gc = ground_extend(clash);
    CHECK(gc.unary == "s1");
}

TEST_CASE("propagation chains are short for genuine c-models") {
    Trs r1 = load("r1.trs");
    CLabeling cl1 = make("r1.trs", LabelingMode::Maximal);
    std::set<ValuePair> p1 = value_change_pairs(r1, cl1);
    LeadstoResult l1 = leadsto_paths(p1, cl1);
    CHECK(l1.longest == 1);
    CHECK(l1.path.size() == 1);
    CHECK(p1.count(l1.path.front()) == 1);

    CHECK(leadsto_paths({}, cl1).longest == 0);
    CHECK(leadsto_paths({}, cl1).path.empty());

    CLabeling cl0 = make("r0.trs", LabelingMode::Minimal);
    std::set<ValuePair> p0 = {vp(cl0, "bot", "f"), vp(cl0, "f", "bot")};
    CHECK(leadsto_paths(p0, cl0).longest == 1);
}

TEST_CASE("cyclic value propagation is reported") {
    CLabeling cl = CLabeling::minimal(parity_algebra());
    // f alternates the two values, so (even,odd) keeps reproducing itself.
    std::set<ValuePair> pairs = {{0, 1}, {1, 0}};
    CHECK_THROWS_AS(leadsto_paths(pairs, cl), CycleDetected);
}

TEST_CASE("transformations reject algebras that are not c-models") {
    Trs r0 = load("r0.trs");
    CLabeling cl = CLabeling::minimal(parity_algebra());
    CHECK_THROWS_AS(static_context_extension(r0, cl), NotACModel);
    CHECK_THROWS_AS(dynamic_context_extension(r0, cl), NotACModel);
    CHECK_THROWS_AS(dynamic_extension_pairs(r0, cl), NotACModel);
    CHECK_THROWS_AS(dynamic_labeling(r0, cl), NotACModel);
}
