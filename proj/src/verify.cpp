#include "ocs/verify.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace ocs {

namespace {

bool contains_up_symbol(const Term& t) {
    if (t.is_var()) return false;
    if (is_up_symbol(t.symbol())) return true;
    for (const auto& a : t.args())
        if (contains_up_symbol(a)) return true;
    return false;
}

// Rule indices of cs whose left-hand side carries a change marker.
std::vector<char> relabel_rule_mask(const CsTrs& cs) {
    std::vector<char> mask;
    mask.reserve(cs.trs.rules().size());
    for (const auto& rule : cs.trs.rules())
        mask.push_back(contains_up_symbol(rule.lhs) ? 1 : 0);
    return mask;
}

Term labeled_image(const CLabeling& cl, const Term& t) {
    static const Assignment empty;
    return cl.label(Term::fun(top_symbol, {t}), empty);
}

}  // namespace

bool is_quasi_left_linear(const Trs& r) {
    for (const Rule& rule : r.rules()) {
        if (is_linear(rule.lhs)) continue;
        bool covered = false;
        for (const Rule& other : r.rules()) {
            if (is_linear(other.lhs) && match(other.lhs, rule.lhs)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

SimulationReport check_cxtext_simulation(const Trs& r, const CLabeling& cl,
                                         const CsTrs& out, const std::vector<Term>& seeds) {
    SimulationReport rep;
    for (const Term& s : seeds) {
        ++rep.seeds;
        Term src = labeled_image(cl, s);
        std::vector<Term> succs = cs_successors(out, src);
        for (const Term& t : outermost_successors(r, s)) {
            ++rep.steps;
            Term tgt = labeled_image(cl, t);
            if (std::find(succs.begin(), succs.end(), tgt) == succs.end()) {
                if (rep.failures++ == 0) {
                    rep.failure_source = s;
                    rep.failure_target = t;
                }
            }
        }
    }
    return rep;
}

SimulationReport check_dynlab_simulation(const Trs& r, const CLabeling& cl,
                                         const CsTrs& out, const std::vector<Term>& seeds) {
    SimulationReport rep;
    const int bound = check_cmodel(cl.redex_algebra().alg(), r).trs_cdepth();
    const std::vector<char> relabel = relabel_rule_mask(out);

    auto successors_where = [&](const Term& t, bool want_relabel) {
        std::vector<Term> res;
        for (const Step& st : cs_steps(out, t))
            if ((relabel[st.rule_index] != 0) == want_relabel) res.push_back(st.result);
        return res;
    };

    for (const Term& s : seeds) {
        ++rep.seeds;
        Term src = labeled_image(cl, s);
        std::vector<Term> first = successors_where(src, false);
        for (const Term& t : outermost_successors(r, s)) {
            ++rep.steps;
            Term tgt = labeled_image(cl, t);
            // One labeled step, then relabel steps only, fewest first.
            std::vector<Term> frontier = first;
            int m = 0;
            bool found = false;
            for (; m <= bound; ++m) {
                if (std::find(frontier.begin(), frontier.end(), tgt) != frontier.end()) {
                    found = true;
                    break;
                }
                std::vector<Term> next;
                for (const Term& u : frontier)
                    for (Term& v : successors_where(u, true)) next.push_back(std::move(v));
                std::sort(next.begin(), next.end());
                next.erase(std::unique(next.begin(), next.end()), next.end());
                frontier = std::move(next);
            }
            if (found) {
                ++rep.m_histogram[m];
            } else if (rep.failures++ == 0) {
                rep.failure_source = s;
                rep.failure_target = t;
            }
        }
    }
    return rep;
}

ReverseReport check_reverse_simulation(const Trs& r, const CLabeling& cl,
                                       const CsTrs& out, const std::vector<Term>& seeds) {
    ReverseReport rep;
    for (const Term& s : seeds) {
        ++rep.seeds;
        Term src = labeled_image(cl, s);
        std::vector<Term> targets = outermost_successors(r, s);
        for (const Term& u : cs_successors(out, src)) {
            ++rep.mu_steps;
            Term erased = erase_labels(u);
            bool ok = erased.is_fun() && erased.symbol() == top_symbol &&
                      erased.args().size() == 1;
            if (ok) {
                const Term& t = erased.args().front();
                ok = std::find(targets.begin(), targets.end(), t) != targets.end() &&
                     u == labeled_image(cl, t);
            }
            if (!ok && rep.failures++ == 0) {
                rep.witness_source = src;
                rep.witness_target = u;
            }
        }
    }
    return rep;
}

ExploreResult bounded_explore(const CsTrs& cs, const std::vector<Term>& seeds,
                              int max_len, long node_cap) {
    ExploreResult res;
    std::unordered_map<Term, int> memo;
    std::unordered_map<Term, Term> best_succ;
    std::unordered_set<Term> onstack;
    std::vector<Term> path;
    bool aborted = false;

    std::function<int(const Term&)> rec = [&](const Term& t) -> int {
        if (aborted) return 0;
        if (auto it = memo.find(t); it != memo.end()) return it->second;
        if (onstack.count(t)) {
            // A cycle yields derivations of any length.
            res.exceeded = true;
            auto first = std::find(path.begin(), path.end(), t);
            res.witness.assign(first, path.end());
            res.witness.push_back(t);
            aborted = true;
            return 0;
        }
        if (static_cast<int>(path.size()) >= max_len) {
            res.exceeded = true;
            res.witness = path;
            res.witness.push_back(t);
            aborted = true;
            return 0;
        }
        if (static_cast<long>(memo.size()) >= node_cap) {
            res.node_cap_hit = true;
            aborted = true;
            return 0;
        }
        onstack.insert(t);
        path.push_back(t);
        int best = 0;
        for (const Term& u : cs_successors(cs, t)) {
            int d = 1 + rec(u);
            if (aborted) break;
            if (d > best) {
                best = d;
                best_succ.insert_or_assign(t, u);
            }
        }
        path.pop_back();
        onstack.erase(t);
        if (!aborted) memo[t] = best;
        return best;
    };

    Term start;
    for (const Term& s : seeds) {
        int d = rec(s);
        if (aborted) break;
        if (d >= res.longest) {
            res.longest = d;
            start = s;
        }
    }
    res.nodes = static_cast<long>(memo.size());
    if (aborted) return res;

    if (!start.empty()) {
        res.witness.push_back(start);
        Term cur = start;
        while (memo.count(cur) && memo[cur] > 0) {
            cur = best_succ.at(cur);
            res.witness.push_back(cur);
        }
    }
    return res;
}

RecognitionReport check_recognition(const Trs& r, const RedexAlgebra& ra, BuildMode mode,
                                    int max_term_size) {
    RecognitionReport rep;
    Trs reference = mode == BuildMode::LeftLinear ? r.left_linear_rules() : r;

    std::optional<MinimizeResult> mini;
    try {
        mini = minimize(ra);
        rep.minimized_checked = true;
    } catch (const std::exception&) {
        // Not core; the minimized comparison is skipped.
    }

    for (const Term& t : enumerate_ground_terms(r.sig(), max_term_size)) {
        ++rep.terms;
        bool lang = in_language(ra, t);
        bool redex = is_redex(reference, t);
        if (lang && !redex && rep.extra++ == 0) rep.extra_witness = t;
        if (!lang && redex && rep.missed++ == 0) rep.missed_witness = t;
        if (mini) {
            bool lang2 = in_language(mini->algebra, t);
            if (lang2 != lang && rep.minimized_mismatches++ == 0) rep.minimized_witness = t;
        }
    }
    return rep;
}

}  // namespace ocs
