#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ocs/io.hpp"
#include "ocs/verify.hpp"

using namespace ocs;

namespace {

Term v(const std::string& n) { return Term::var(n); }
Term k(const std::string& n) { return Term::fun(n, {}); }
Term u(const std::string& n, Term a) { return Term::fun(n, {std::move(a)}); }
Term b2(const std::string& n, Term a, Term b) {
    return Term::fun(n, {std::move(a), std::move(b)});
}

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

std::vector<Term> top_seeds(const Trs& r, const CLabeling& cl, int size) {
    std::vector<Term> seeds;
    for (const Term& t : enumerate_ground_terms(r.sig(), size))
        seeds.push_back(cl.label(Term::fun(top_symbol, {t}), {}));
    return seeds;
}

// Restricts a redex algebra to its reachable elements, carrying the
// tables along.
RedexAlgebra restrict_to_core(const RedexAlgebra& ra) {
    CoreResult cr = core(ra.alg());
    std::map<std::string, std::vector<char>> tables;
    for (const auto& [f, ar] : cr.algebra.sig().symbols()) {
        std::size_t count = 1;
        for (int i = 0; i < ar; ++i) count *= cr.algebra.size();
        std::vector<char> table(count);
        for (std::size_t ti = 0; ti < count; ++ti) {
            std::vector<Elem> args = cr.algebra.tuple_at(ar, ti);
            for (Elem& e : args) e = cr.new_to_old[e];
            table[ti] = ra.isredex(f, args) ? 1 : 0;
        }
        tables[f] = std::move(table);
    }
    return RedexAlgebra(cr.algebra, std::move(tables));
}

}  // namespace

TEST_CASE("quasi left-linearity accepts covered non-linear rules") {
    Signature s;
    s.add("g", 2);
    s.add("f", 1);
    s.add("b", 0);
    Trs covered(s, {{b2("g", u("f", v("x")), v("x")), b2("g", b2("g", v("x"), v("x")), v("x"))},
                    {b2("g", v("x"), v("y")), v("y")}});
    CHECK(is_quasi_left_linear(covered));

    Trs bare(s, {{b2("g", v("x"), v("x")), k("b")}});
    CHECK_FALSE(is_quasi_left_linear(bare));

    CHECK(is_quasi_left_linear(load("r0.trs")));
    CHECK(is_quasi_left_linear(load("r1.trs")));
    CHECK_FALSE(is_quasi_left_linear(load("r5_nonlinb.trs")));
}

TEST_CASE("context extension simulates outermost steps one to one") {
    Trs r0 = load("r0.trs");
    CLabeling cl0 = make("r0.trs", LabelingMode::Minimal);
    CsTrs out0 = dynamic_context_extension(r0, cl0).cstrs;
    std::vector<Term> seeds0 = enumerate_ground_terms(r0.sig(), 6);
    SimulationReport rep0 = check_cxtext_simulation(r0, cl0, out0, seeds0);
    CHECK(rep0.ok());
    CHECK(rep0.seeds == 12);
    CHECK(rep0.steps == 10);
    CHECK(rep0.failures == 0);
    CHECK_FALSE(rep0.failure_source.has_value());

    Trs r1 = load("r1.trs");
    CLabeling cl1 = make("r1.trs", LabelingMode::Maximal);
    std::vector<Term> seeds1 = enumerate_ground_terms(r1.sig(), 6);

    SimulationReport dyn = check_cxtext_simulation(
        r1, cl1, dynamic_context_extension(r1, cl1).cstrs, seeds1);
    CHECK(dyn.ok());
    CHECK(dyn.seeds == 63);
    CHECK(dyn.steps == 48);

    SimulationReport stat = check_cxtext_simulation(
        r1, cl1, static_context_extension(r1, cl1).cstrs, seeds1);
    CHECK(stat.ok());
    CHECK(stat.steps == 48);
}

TEST_CASE("dynamic labeling simulates with bounded relabel tails") {
    Trs r0 = load("r0.trs");
    CLabeling cl0 = make("r0.trs", LabelingMode::Minimal);
    CsTrs out0 = dynamic_labeling(r0, cl0).cstrs;
    SimulationReport rep0 =
        check_dynlab_simulation(r0, cl0, out0, enumerate_ground_terms(r0.sig(), 6));
    CHECK(rep0.ok());
    CHECK(rep0.seeds == 12);
    CHECK(rep0.steps == 10);
    std::map<int, int> hist0 = {{1, 10}};
    CHECK((rep0.m_histogram == hist0));

    Trs r1 = load("r1.trs");
    CLabeling cl1 = make("r1.trs", LabelingMode::Maximal);
    CsTrs out1 = dynamic_labeling(r1, cl1).cstrs;
    SimulationReport rep1 =
        check_dynlab_simulation(r1, cl1, out1, enumerate_ground_terms(r1.sig(), 6));
    CHECK(rep1.ok());
    CHECK(rep1.steps == 48);
    std::map<int, int> hist1 = {{0, 1}, {1, 47}};
    CHECK((rep1.m_histogram == hist1));
    // The collapse f(f(f(x))) -> x keeps the value, hence the zero entry.
    REQUIRE(!rep1.m_histogram.empty());
    CHECK(rep1.m_histogram.rbegin()->first <= 2);
}

TEST_CASE("reverse simulation holds for the left-linear systems") {
    Trs r1 = load("r1.trs");
    CLabeling cl = make("r1.trs", LabelingMode::Maximal);
    CsTrs out = dynamic_context_extension(r1, cl).cstrs;
    ReverseReport rep =
        check_reverse_simulation(r1, cl, out, enumerate_ground_terms(r1.sig(), 6));
    CHECK(rep.ok());
    CHECK(rep.mu_steps > 0);
    CHECK_FALSE(rep.witness_source.has_value());
}

TEST_CASE("reverse simulation flags wrongly labeled successors") {
    // The unfolding rule copies its inf* label to a deeper occurrence
    // whose argument value it does not re-check.
    Trs r = load("inflist.trs");
    CLabeling cl = make("inflist.trs", LabelingMode::Minimal);
    CsTrs out = dynamic_labeling(r, cl).cstrs;
    ReverseReport rep =
        check_reverse_simulation(r, cl, out, enumerate_ground_terms(r.sig(), 5));
    CHECK_FALSE(rep.ok());
    CHECK(rep.failures > 0);
    CHECK(rep.witness_source.has_value());
    CHECK(rep.witness_target.has_value());
}

TEST_CASE("reverse simulation depends on the seed horizon") {
    // g(g(a,a),g(a,a)) is a redex by variable equality, invisible to the
    // labels; a mu-step below its root contradicts outermost order. The
    // smallest such term has size seven.
    Trs r5 = load("r5_nonlinb.trs");
    CLabeling cl = CLabeling::maximal(sidecar("r5_nonlinb.alg", r5));
    CsTrs out = dynamic_context_extension(r5, cl).cstrs;

    ReverseReport ok6 =
        check_reverse_simulation(r5, cl, out, enumerate_ground_terms(r5.sig(), 6));
    CHECK(ok6.ok());

    ReverseReport bad7 =
        check_reverse_simulation(r5, cl, out, enumerate_ground_terms(r5.sig(), 7));
    CHECK_FALSE(bad7.ok());
    REQUIRE(bad7.witness_source.has_value());
    Term culprit = erase_labels(*bad7.witness_source);
    Term expected = u(top_symbol, b2("g", b2("g", k("a"), k("a")), b2("g", k("a"), k("a"))));
    CHECK((culprit == expected));
}

TEST_CASE("exploration exhausts terminating mu-systems") {
    Trs r1 = load("r1.trs");
    CLabeling cl = make("r1.trs", LabelingMode::Maximal);
    CsTrs out = dynamic_context_extension(r1, cl).cstrs;
    ExploreResult res = bounded_explore(out, top_seeds(r1, cl, 5), 50);
    CHECK_FALSE(res.exceeded);
    CHECK_FALSE(res.node_cap_hit);
    CHECK(res.longest == 6);
    CHECK(res.nodes == 48);
    CHECK(res.witness.size() == static_cast<std::size_t>(res.longest) + 1);
}

TEST_CASE("exploration reports overlong derivations") {
    Trs r = load("inflist.trs");
    CLabeling cl = make("inflist.trs", LabelingMode::Minimal);
    CsTrs out = dynamic_labeling(r, cl).cstrs;
    Term seed = cl.label(u(top_symbol, u("inf", k("nil"))), {});
    ExploreResult res = bounded_explore(out, {seed}, 20);
    CHECK(res.exceeded);
    CHECK(res.witness.size() >= 20);

    // With maximal labels the copied occurrence is mu-blocked and the
    // system terminates.
    CLabeling clmax = make("inflist.trs", LabelingMode::Maximal);
    CsTrs outmax = dynamic_labeling(r, clmax).cstrs;
    ExploreResult resmax = bounded_explore(outmax, top_seeds(r, clmax, 5), 20);
    CHECK_FALSE(resmax.exceeded);
    CHECK(resmax.longest == 12);
    CHECK(resmax.nodes == 455);
}

TEST_CASE("exploration treats cycles as nontermination") {
    Signature s;
    s.add("a", 0);
    s.add("b", 0);
    Trs r(s, {{k("a"), k("b")}, {k("b"), k("a")}});
    CsTrs cs{r, ReplacementMap::full(s)};
    ExploreResult res = bounded_explore(cs, {k("a")}, 100);
    CHECK(res.exceeded);
}

TEST_CASE("exploration admits defeat at the node cap") {
    Trs r1 = load("r1.trs");
    CLabeling cl = make("r1.trs", LabelingMode::Maximal);
    CsTrs out = dynamic_context_extension(r1, cl).cstrs;
    ExploreResult res = bounded_explore(out, top_seeds(r1, cl, 5), 50, 10);
    CHECK(res.node_cap_hit);
    CHECK_FALSE(res.exceeded);
}

TEST_CASE("recognition agrees with matching on left-linear systems") {
    Trs r1 = load("r1.trs");
    RedexAlgebra ra = build_redex_algebra(r1, BuildMode::LeftLinear);
    RecognitionReport rep = check_recognition(r1, ra, BuildMode::LeftLinear, 7);
    CHECK(rep.ok());
    CHECK(rep.terms == 127);
    CHECK(rep.extra == 0);
    CHECK(rep.missed == 0);
    CHECK(rep.minimized_checked);
    CHECK(rep.minimized_mismatches == 0);
}

TEST_CASE("cutting non-linear sides over-approximates the redexes") {
    Trs r4 = load("r4_nonlin.trs");
    RedexAlgebra ra = build_redex_algebra(r4, BuildMode::Full);
    RecognitionReport rep = check_recognition(r4, ra, BuildMode::Full, 5);
    CHECK_FALSE(rep.ok());
    CHECK(rep.extra > 0);
    CHECK(rep.missed == 0);
    REQUIRE(rep.extra_witness.has_value());
    CHECK(in_language(ra, *rep.extra_witness));
    CHECK_FALSE(is_redex(r4, *rep.extra_witness));
}

TEST_CASE("hand-written predicates can under-approximate") {
    // The sidecar for a -> g(a,a), g(x,x) -> b only claims g(a,a), so the
    // redex a itself goes unrecognized.
    Trs r5 = load("r5_nonlinb.trs");
    RedexAlgebra ra = sidecar("r5_nonlinb.alg", r5);
    RecognitionReport rep = check_recognition(r5, ra, BuildMode::Full, 6);
    CHECK_FALSE(rep.ok());
    CHECK(rep.missed > 0);
    CHECK(rep.extra == 0);
    REQUIRE(rep.missed_witness.has_value());
    CHECK(is_redex(r5, *rep.missed_witness));
    CHECK_FALSE(in_language(ra, *rep.missed_witness));
}

TEST_CASE("the minimized cross-check skips non-core algebras") {
    Trs r7 = load("r7_whycore.trs");
    RedexAlgebra ra = sidecar("r7_whycore.alg", r7);
    CHECK_FALSE(is_core(ra.alg()));
    RecognitionReport rep = check_recognition(r7, ra, BuildMode::Full, 5);
    CHECK(rep.extra == 0);
    CHECK(rep.missed == 0);
    CHECK_FALSE(rep.minimized_checked);
}

TEST_CASE("unreachable elements can fake nontermination") {
    Trs r7 = load("r7_whycore.trs");
    RedexAlgebra ra = sidecar("r7_whycore.alg", r7);
    CLabeling cl = CLabeling::maximal(ra);
    CsTrs out = dynamic_labeling(r7, cl).cstrs;

    // Ground terms never evaluate to the second element, so its labels are
    // fine; derivations from correctly labeled terms all terminate.
    ExploreResult good = bounded_explore(out, top_seeds(r7, cl, 4), 30);
    CHECK_FALSE(good.exceeded);

    // Seeding the spurious label f^1 unlocks an infinite unfolding.
    Elem ghost = *cl.algebra().element_by_name("1");
    Term bad_seed = Term::fun(
        cl.labeled_name(top_symbol, cl.pi(top_symbol, {0})),
        {Term::fun(cl.labeled_name("f", cl.pi("f", {ghost})), {k("a")})});
    ExploreResult bad = bounded_explore(out, {bad_seed}, 30);
    CHECK(bad.exceeded);

    // Restricting to the core removes the ghost element and the labeled
    // system becomes finite again.
    RedexAlgebra cored = restrict_to_core(ra);
    CHECK(cored.alg().size() == 1);
    CLabeling ccl = CLabeling::maximal(cored);
    DynamicLabelingResult dres = dynamic_labeling(r7, ccl);
    CHECK(dres.cstrs.trs.rules().size() == 4);
    ExploreResult fixed = bounded_explore(dres.cstrs, top_seeds(r7, ccl, 4), 30);
    CHECK_FALSE(fixed.exceeded);
}
