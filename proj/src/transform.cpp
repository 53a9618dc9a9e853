#include "ocs/transform.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ocs {

namespace {

// Computes per-rule c-depths, failing loudly when some rule has none.
CModelReport require_cmodel(const Trs& r, const CLabeling& cl) {
    CModelReport rep = check_cmodel(cl.redex_algebra().alg(), r);
    for (std::size_t i = 0; i < rep.rule_cdepths.size(); ++i) {
        if (!rep.rule_cdepths[i])
            throw NotACModel("algebra is not a c-model: no c-depth for rule " +
                             r.rules()[i].to_string());
    }
    return rep;
}

// Renames rule variables to x1, x2, ... in order of first occurrence and
// carries the assignment along, so that structurally equal pairs collide.
std::pair<Rule, Assignment> canonical_pair(const Rule& rule, const Assignment& a) {
    Substitution ren;
    int next = 0;
    auto walk = [&](auto&& self, const Term& t) -> void {
        if (t.is_var()) {
            if (!ren.count(t.symbol()))
                ren.emplace(t.symbol(), Term::var("x" + std::to_string(++next)));
            return;
        }
        for (const auto& arg : t.args()) self(self, arg);
    };
    walk(walk, rule.lhs);
    walk(walk, rule.rhs);
    Rule out{apply_subst(rule.lhs, ren), apply_subst(rule.rhs, ren)};
    Assignment remapped;
    for (const auto& [v, e] : a) {
        auto it = ren.find(v);
        if (it != ren.end()) remapped[it->second.symbol()] = e;
    }
    return {std::move(out), std::move(remapped)};
}

// Signature and replacement map for a finished rule set: every occurring
// symbol gets an explicit entry, empty for redex symbols and change
// markers, full otherwise.
CsTrs assemble(std::vector<Rule> rules, const CLabeling& cl) {
    Signature sig;
    for (const auto& rule : rules) {
        sig.add_symbols_of(rule.lhs, variables(rule.lhs));
        sig.add_symbols_of(rule.rhs, variables(rule.rhs));
    }
    ReplacementMap mu = ReplacementMap::full(sig);
    for (const auto& [f, ar] : sig.symbols()) {
        (void)ar;
        if (cl.in_sigred(f) || is_up_symbol(f)) mu.set(f, {});
    }
    return {Trs(std::move(sig), std::move(rules)), std::move(mu)};
}

// Applies fn(f, slot, args_with_b, args_with_b2) for every one-symbol
// surrounding of the value pair (b, b2) whose labeled symbol is not a
// redex symbol; propagation stops at those.
template <typename Fn>
void for_each_wrap(const CLabeling& cl, const Signature& sig, Elem b, Elem b2, Fn fn) {
    const FiniteAlgebra& alg = cl.algebra();
    for (const auto& [f, ar] : sig.symbols()) {
        if (ar == 0) continue;
        std::size_t surround = 1;
        for (int i = 0; i < ar - 1; ++i) surround *= alg.size();
        for (int slot = 0; slot < ar; ++slot) {
            for (std::size_t s = 0; s < surround; ++s) {
                std::vector<Elem> args = alg.tuple_at(ar - 1, s);
                args.insert(args.begin() + slot, b);
                if (cl.in_sigred(cl.labeled_name(f, cl.pi(f, args)))) continue;
                std::vector<Elem> args2 = args;
                args2[slot] = b2;
                fn(f, slot, args, args2);
            }
        }
    }
}

}  // namespace

StaticExtensionResult static_context_extension(const Trs& r, const CLabeling& cl) {
    CModelReport rep = require_cmodel(r, cl);

    // Extended rules keep the hole position of their prepended context so
    // the filter below knows which symbols the context contributed.
    std::set<std::pair<Rule, Position>> extended;
    for (std::size_t i = 0; i < r.rules().size(); ++i) {
        const Rule& rule = r.rules()[i];
        const int n = *rep.rule_cdepths[i];
        std::set<std::string> avoid = variables(rule.lhs);
        for (const Context& c : enumerate_thin_contexts(r.sig(), n, avoid)) {
            Rule ext{c.fill(rule.lhs), c.fill(rule.rhs)};
            extended.insert({rename_canonical(ext), c.hole_position()});
        }
        for (int d = 0; d < n; ++d) {
            for (const Context& c : enumerate_thin_contexts(r.sig(), d, avoid)) {
                Rule ext{Term::fun(top_symbol, {c.fill(rule.lhs)}),
                         Term::fun(top_symbol, {c.fill(rule.rhs)})};
                Position hole{0};
                hole.insert(hole.end(), c.hole_position().begin(), c.hole_position().end());
                extended.insert({rename_canonical(ext), std::move(hole)});
            }
        }
    }

    std::set<std::pair<Rule, Position>> labeled;
    for (const auto& [rule, hole] : extended) {
        for (const auto& alpha :
             enumerate_assignments(variables(rule.lhs), cl.algebra().size())) {
            Rule lab{cl.label(rule.lhs, alpha), cl.label(rule.rhs, alpha)};
            labeled.insert({std::move(lab), hole});
        }
    }

    // A redex symbol below the root of the prepended context would sit at
    // a blocked position, making the rule inapplicable; drop those rules.
    std::vector<Rule> kept;
    int removed = 0;
    for (const auto& [rule, hole] : labeled) {
        bool drop = false;
        Position prefix;
        for (std::size_t d = 0; d + 1 < hole.size(); ++d) {
            prefix.push_back(hole[d]);
            if (cl.in_sigred(subterm_at(rule.lhs, prefix).symbol())) {
                drop = true;
                break;
            }
        }
        if (drop)
            ++removed;
        else
            kept.push_back(rule);
    }

    StaticExtensionResult res;
    res.extended = static_cast<int>(extended.size());
    res.labeled = static_cast<int>(labeled.size());
    res.removed = removed;
    res.cstrs = assemble(sort_and_dedup(std::move(kept)), cl);
    return res;
}

std::vector<ExtensionPair> dynamic_extension_pairs(const Trs& r, const CLabeling& cl,
                                                   const TransformOptions& opt) {
    CModelReport rep = require_cmodel(r, cl);
    const FiniteAlgebra& alg = cl.algebra();

    using Pair = std::pair<Rule, Assignment>;
    std::set<Pair> pairs;
    for (const Rule& rule : r.rules())
        for (const auto& alpha : enumerate_assignments(variables(rule.lhs), alg.size()))
            pairs.insert(canonical_pair(rule, alpha));

    auto needs_extension = [&](const Rule& rule, const Assignment& alpha) {
        if (opt.eliminate_collapsing && rule.is_collapsing()) return true;
        return alg.eval(rule.lhs, alpha) != alg.eval(rule.rhs, alpha);
    };

    // One extra round pays for collapse elimination; beyond that the
    // c-depth bound says the fixpoint must have been reached.
    const int cap = rep.trs_cdepth() + 2;
    int rounds = 0;
    for (;;) {
        std::set<Pair> next;
        bool changed = false;
        for (const auto& [rule, alpha] : pairs) {
            if (!needs_extension(rule, alpha)) {
                next.insert({rule, alpha});
                continue;
            }
            changed = true;
            std::set<std::string> avoid = variables(rule.lhs);
            for (const Context& c : enumerate_flat_contexts(r.sig(), avoid, true)) {
                for (const auto& beta : enumerate_assignments(c.vars(), alg.size())) {
                    Assignment full = alpha;
                    for (const auto& [v, e] : beta) full[v] = e;
                    Rule ext{c.fill(rule.lhs), c.fill(rule.rhs)};
                    if (cl.in_sigred(cl.label(ext.lhs, full).symbol())) continue;
                    next.insert(canonical_pair(ext, full));
                }
            }
        }
        if (!changed) break;
        pairs = std::move(next);
        if (++rounds > cap)
            throw NotACModel("dynamic context extension did not reach a fixpoint");
    }

    std::vector<ExtensionPair> out;
    out.reserve(pairs.size());
    for (auto& [rule, alpha] : pairs) out.push_back({rule, alpha});
    return out;
}

DynamicExtensionResult dynamic_context_extension(const Trs& r, const CLabeling& cl,
                                                 const TransformOptions& opt) {
    std::vector<ExtensionPair> pairs = dynamic_extension_pairs(r, cl, opt);
    std::vector<Rule> rules;
    rules.reserve(pairs.size());
    for (const auto& p : pairs)
        rules.push_back({cl.label(p.rule.lhs, p.assign), cl.label(p.rule.rhs, p.assign)});

    DynamicExtensionResult res;
    res.pair_count = static_cast<int>(pairs.size());
    res.cstrs = assemble(sort_and_dedup(std::move(rules)), cl);
    return res;
}

std::set<ValuePair> value_change_pairs(const Trs& r, const CLabeling& cl) {
    const FiniteAlgebra& alg = cl.algebra();
    std::set<ValuePair> out;
    std::vector<ValuePair> queue;
    auto push = [&](Elem a, Elem b) {
        if (a == b) return;
        if (out.insert({a, b}).second) queue.push_back({a, b});
    };

    for (const Rule& rule : r.rules())
        for (const auto& alpha : enumerate_assignments(variables(rule.lhs), alg.size()))
            push(alg.eval(rule.lhs, alpha), alg.eval(rule.rhs, alpha));

    while (!queue.empty()) {
        auto [b, b2] = queue.back();
        queue.pop_back();
        for_each_wrap(cl, r.sig(), b, b2,
                      [&](const std::string& f, int, const std::vector<Elem>& args,
                          const std::vector<Elem>& args2) {
                          push(alg.interp(f, args), alg.interp(f, args2));
                      });
    }
    return out;
}

DynamicLabelingResult dynamic_labeling(const Trs& r, const CLabeling& cl,
                                       const TransformOptions& opt) {
    require_cmodel(r, cl);
    const FiniteAlgebra& alg = cl.algebra();

    DynamicLabelingResult res;
    res.pairs = value_change_pairs(r, cl);

    std::vector<Rule> labeled;
    for (const Rule& rule : r.rules()) {
        for (const auto& alpha : enumerate_assignments(variables(rule.lhs), alg.size())) {
            auto [crule, ca] = canonical_pair(rule, alpha);
            Term lhs = cl.label(crule.lhs, ca);
            Term rhs = cl.label(crule.rhs, ca);
            Elem va = alg.eval(crule.lhs, ca);
            Elem vb = alg.eval(crule.rhs, ca);
            if (va != vb) rhs = Term::fun(cl.up_name(va, vb), {std::move(rhs)});
            labeled.push_back({std::move(lhs), std::move(rhs)});
        }
    }
    labeled = sort_and_dedup(std::move(labeled));

    std::vector<ValuePair> sources;
    if (opt.restrict_to_reachable) {
        sources.assign(res.pairs.begin(), res.pairs.end());
    } else {
        for (Elem a = 0; a < alg.size(); ++a)
            for (Elem b = 0; b < alg.size(); ++b)
                if (a != b) sources.push_back({a, b});
    }

    std::vector<Rule> sigma_rules;
    std::vector<Rule> top_rules;
    for (const auto& [b, b2] : sources) {
        for_each_wrap(cl, alg.sig(), b, b2,
                      [&](const std::string& f, int slot, const std::vector<Elem>& args,
                          const std::vector<Elem>& args2) {
                          const int ar = static_cast<int>(args.size());
                          std::vector<Term> lhs_args, rhs_args;
                          for (int i = 0; i < ar; ++i) {
                              Term v = Term::var("x" + std::to_string(i + 1));
                              lhs_args.push_back(v);
                              rhs_args.push_back(std::move(v));
                          }
                          lhs_args[slot] =
                              Term::fun(cl.up_name(b, b2), {lhs_args[slot]});
                          Term lhs = Term::fun(cl.labeled_name(f, cl.pi(f, args)),
                                               std::move(lhs_args));
                          Term rhs = Term::fun(cl.labeled_name(f, cl.pi(f, args2)),
                                               std::move(rhs_args));
                          Elem d = alg.interp(f, args);
                          Elem d2 = alg.interp(f, args2);
                          if (d != d2) rhs = Term::fun(cl.up_name(d, d2), {std::move(rhs)});
                          (f == top_symbol ? top_rules : sigma_rules)
                              .push_back({std::move(lhs), std::move(rhs)});
                      });
    }
    sigma_rules = sort_and_dedup(std::move(sigma_rules));
    top_rules = sort_and_dedup(std::move(top_rules));

    res.labeled = static_cast<int>(labeled.size());
    res.relabel_sigma = static_cast<int>(sigma_rules.size());
    res.relabel_top = static_cast<int>(top_rules.size());
    res.origins.assign(labeled.size(), RuleOrigin::Labeled);
    res.origins.insert(res.origins.end(), sigma_rules.size(), RuleOrigin::RelabelSigma);
    res.origins.insert(res.origins.end(), top_rules.size(), RuleOrigin::RelabelTop);

    std::vector<Rule> all = std::move(labeled);
    all.insert(all.end(), sigma_rules.begin(), sigma_rules.end());
    all.insert(all.end(), top_rules.begin(), top_rules.end());
    res.cstrs = assemble(std::move(all), cl);
    return res;
}

GroundExtension ground_extend(const Trs& r) {
    std::set<std::string> taken;
    for (const auto& [f, ar] : r.sig().symbols()) {
        (void)ar;
        taken.insert(f);
    }
    for (const Rule& rule : r.rules()) {
        auto vs = variables(rule.lhs);
        taken.insert(vs.begin(), vs.end());
        vs = variables(rule.rhs);
        taken.insert(vs.begin(), vs.end());
    }
    auto pick = [&taken](const std::string& base) {
        std::string cand = base;
        for (int i = 1; taken.count(cand); ++i) cand = base + std::to_string(i);
        taken.insert(cand);
        return cand;
    };

    GroundExtension out;
    out.constant = pick("0");
    out.unary = pick("s");
    Signature sig = r.sig();
    sig.add(out.constant, 0);
    sig.add(out.unary, 1);
    out.trs = Trs(std::move(sig), r.rules());
    return out;
}

LeadstoResult leadsto_paths(const std::set<ValuePair>& pairs, const CLabeling& cl) {
    const FiniteAlgebra& alg = cl.algebra();
    const Signature& sig = cl.redex_algebra().alg().sig();

    std::vector<ValuePair> nodes(pairs.begin(), pairs.end());
    std::map<ValuePair, int> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);

    std::vector<std::set<int>> adj(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for_each_wrap(cl, sig, nodes[i].first, nodes[i].second,
                      [&](const std::string& f, int, const std::vector<Elem>& args,
                          const std::vector<Elem>& args2) {
                          ValuePair target{alg.interp(f, args), alg.interp(f, args2)};
                          if (target.first == target.second) return;
                          auto it = index.find(target);
                          if (it != index.end()) adj[i].insert(it->second);
                      });
    }

    // Longest chain by depth-first search; a pair on the current stack
    // being revisited means the relation cycles.
    std::vector<int> state(nodes.size(), 0), best(nodes.size(), 0), choice(nodes.size(), -1);
    std::function<int(int)> dfs = [&](int i) -> int {
        if (state[i] == 1) {
            throw CycleDetected("value-change pair (" + alg.name(nodes[i].first) + "," +
                                alg.name(nodes[i].second) + ") leads back to itself");
        }
        if (state[i] == 2) return best[i];
        state[i] = 1;
        int b = 1;
        for (int j : adj[i]) {
            int d = 1 + dfs(j);
            if (d > b) {
                b = d;
                choice[i] = j;
            }
        }
        state[i] = 2;
        best[i] = b;
        return b;
    };

    LeadstoResult res;
    int start = -1;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        int d = dfs(static_cast<int>(i));
        if (d > res.longest) {
            res.longest = d;
            start = static_cast<int>(i);
        }
    }
    for (int i = start; i != -1; i = choice[i]) res.path.push_back(nodes[i]);
    return res;
}

}  // namespace ocs
