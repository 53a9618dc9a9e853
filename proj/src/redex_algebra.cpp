#include "ocs/redex_algebra.hpp"

#include <algorithm>

namespace ocs {

namespace {

Term bot() { return Term::fun(bot_symbol, {}); }

// Elements ordered by weight first so ⊥ comes out as element 0.
bool elem_less(const Term& a, const Term& b) {
    int wa = symbol_weight(a), wb = symbol_weight(b);
    if (wa != wb) return wa < wb;
    return Term::compare(a, b) < 0;
}

std::string display_name(const Term& t) {
    if (t.is_var()) throw NonGround("bot terms are ground");
    if (t.symbol() == bot_symbol) {
        std::string s = "bot";
        for (const auto& a : t.args()) s += display_name(a);
        return s;
    }
    std::string s = t.symbol();
    for (const auto& a : t.args()) {
        std::string inner = display_name(a);
        if (inner != "bot") s += inner;
    }
    return s;
}

}  // namespace

Term cut(const Term& t) {
    if (t.is_var()) return bot();
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(cut(a));
    return Term::fun(t.symbol(), args);
}

bool bot_match(const Term& pattern, const Term& subject) {
    if (pattern.is_var() || subject.is_var())
        throw NonGround("bot terms are ground");
    if (pattern.symbol() == bot_symbol) return true;
    if (subject.symbol() == bot_symbol) return false;
    if (pattern.symbol() != subject.symbol()) return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!bot_match(pattern.args()[i], subject.args()[i])) return false;
    return true;
}

std::optional<Term> merge(const Term& s, const Term& t) {
    if (s.is_var() || t.is_var())
        throw NonGround("bot terms are ground");
    if (s.symbol() == bot_symbol) return t;
    if (t.symbol() == bot_symbol) return s;
    if (s.symbol() != t.symbol()) return std::nullopt;
    std::vector<Term> args;
    args.reserve(s.args().size());
    for (std::size_t i = 0; i < s.args().size(); ++i) {
        auto m = merge(s.args()[i], t.args()[i]);
        if (!m) return std::nullopt;
        args.push_back(*m);
    }
    return Term::fun(s.symbol(), args);
}

int symbol_weight(const Term& t) {
    if (t.is_var()) throw NonGround("bot terms are ground");
    int w = t.symbol() == bot_symbol ? 0 : 1;
    for (const auto& a : t.args()) w += symbol_weight(a);
    return w;
}

Term shrink(const Term& t, const std::vector<Term>& pool) {
    const Term* best = nullptr;
    bool tie = false;
    for (const auto& p : pool) {
        if (!bot_match(p, t)) continue;
        if (!best || symbol_weight(p) > symbol_weight(*best)) {
            best = &p;
            tie = false;
        } else if (symbol_weight(p) == symbol_weight(*best) && !(p == *best)) {
            tie = true;
        }
    }
    if (!best)
        throw PoolNotClosed("no pool element matches " + t.to_string());
    if (tie)
        throw PoolNotClosed("ambiguous heaviest match for " + t.to_string() +
                            ", pool is not closed under merge");
    return *best;
}

RedexAlgebra::RedexAlgebra(FiniteAlgebra alg, std::map<std::string, std::vector<char>> redex_tables,
                           std::vector<Term> elem_terms)
    : alg_(std::move(alg)), redex_(std::move(redex_tables)), elem_terms_(std::move(elem_terms)) {
    for (const auto& [f, ar] : alg_.sig().symbols()) {
        std::size_t entries = 1;
        for (int i = 0; i < ar; ++i) entries *= alg_.size();
        auto it = redex_.find(f);
        if (it == redex_.end())
            redex_[f].assign(entries, 0);
        else if (it->second.size() != entries)
            throw std::runtime_error("redex table for '" + f + "' has wrong size");
    }
    if (!elem_terms_.empty() && elem_terms_.size() != static_cast<std::size_t>(alg_.size()))
        throw std::runtime_error("element term list has wrong length");
}

bool RedexAlgebra::isredex(const std::string& f, const std::vector<Elem>& args) const {
    auto it = redex_.find(f);
    if (it == redex_.end())
        throw std::runtime_error("unknown symbol '" + f + "' in redex predicate");
    return it->second[alg_.tuple_index(alg_.sig().arity(f), args)] != 0;
}

RedexAlgebra build_redex_algebra(const Trs& r, BuildMode mode) {
    const std::vector<Rule> rules =
        mode == BuildMode::LeftLinear ? r.left_linear_rules().rules() : r.rules();
    std::vector<Term> cuts;
    cuts.reserve(rules.size());
    for (const auto& rule : rules) cuts.push_back(cut(rule.lhs));

    std::set<Term> pool;
    pool.insert(bot());
    for (const auto& c : cuts)
        for (const auto& p : positions(c))
            if (!p.empty()) pool.insert(subterm_at(c, p));

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Term> cur(pool.begin(), pool.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j)
                if (auto m = merge(cur[i], cur[j]))
                    changed |= pool.insert(*m).second;
    }

    std::vector<Term> elems(pool.begin(), pool.end());
    std::sort(elems.begin(), elems.end(), elem_less);

    // Provisional names; display names are assigned after taking the core.
    std::vector<std::string> tmp_names;
    for (std::size_t i = 0; i < elems.size(); ++i)
        tmp_names.push_back("e" + std::to_string(i));
    FiniteAlgebra full(r.sig(), tmp_names);
    for (const auto& [f, ar] : r.sig().symbols()) {
        std::size_t entries = 1;
        for (int i = 0; i < ar; ++i) entries *= elems.size();
        for (std::size_t idx = 0; idx < entries; ++idx) {
            auto args = full.tuple_at(ar, idx);
            std::vector<Term> sub;
            sub.reserve(args.size());
            for (Elem e : args) sub.push_back(elems[e]);
            Term applied = Term::fun(f, sub);
            Term v = shrink(applied, elems);
            auto pos = std::find(elems.begin(), elems.end(), v);
            full.set_interp(f, args, static_cast<Elem>(pos - elems.begin()));
        }
    }

    CoreResult cr = core(full);
    std::vector<Term> kept_terms;
    for (Elem old : cr.new_to_old) kept_terms.push_back(elems[old]);

    std::vector<std::string> names;
    for (const auto& t : kept_terms) names.push_back(display_name(t));
    for (std::size_t i = 0; i < names.size(); ++i) {
        int suffix = 1;
        for (std::size_t j = 0; j < i; ++j)
            if (names[j] == names[i]) ++suffix;
        if (suffix > 1) names[i] += "_" + std::to_string(suffix);
    }

    FiniteAlgebra named(r.sig(), names);
    for (const auto& [f, ar] : r.sig().symbols()) {
        std::size_t entries = 1;
        for (int i = 0; i < ar; ++i) entries *= names.size();
        for (std::size_t idx = 0; idx < entries; ++idx) {
            auto args = named.tuple_at(ar, idx);
            named.set_interp(f, args, cr.algebra.table(f)[idx]);
        }
    }

    std::map<std::string, std::vector<char>> redex;
    for (const auto& [f, ar] : r.sig().symbols()) {
        std::size_t entries = 1;
        for (int i = 0; i < ar; ++i) entries *= names.size();
        auto& tab = redex[f];
        tab.assign(entries, 0);
        for (std::size_t idx = 0; idx < entries; ++idx) {
            auto args = named.tuple_at(ar, idx);
            std::vector<Term> sub;
            for (Elem e : args) sub.push_back(kept_terms[e]);
            Term applied = Term::fun(f, sub);
            for (const auto& c : cuts)
                if (bot_match(c, applied)) { tab[idx] = 1; break; }
        }
    }

    return RedexAlgebra(std::move(named), std::move(redex), std::move(kept_terms));
}

MinimizeResult minimize(const RedexAlgebra& a) {
    const FiniteAlgebra& alg = a.alg();
    if (!is_core(alg))
        throw std::runtime_error("minimization requires a core algebra");
    const int n = alg.size();

    // Distinguish by the redex predicate in every one-symbol context.
    auto redex_key = [&](Elem e) {
        std::vector<char> key;
        for (const auto& [f, ar] : alg.sig().symbols()) {
            if (ar == 0) continue;
            std::size_t surround = 1;
            for (int i = 0; i < ar - 1; ++i) surround *= n;
            for (int slot = 0; slot < ar; ++slot) {
                for (std::size_t s = 0; s < surround; ++s) {
                    auto rest = alg.tuple_at(ar - 1, s);
                    std::vector<Elem> args(rest.begin(), rest.begin() + slot);
                    args.push_back(e);
                    args.insert(args.end(), rest.begin() + slot, rest.end());
                    key.push_back(a.isredex(f, args) ? 1 : 0);
                }
            }
        }
        return key;
    };

    std::vector<int> cls(n, 0);
    {
        std::map<std::vector<char>, int> ids;
        for (Elem e = 0; e < n; ++e) {
            auto key = redex_key(e);
            auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
            (void)fresh;
            cls[e] = it->second;
        }
    }

    // Refine until stable under the interpretations.
    while (true) {
        std::map<std::pair<int, std::vector<int>>, int> ids;
        std::vector<int> next(n, 0);
        for (Elem e = 0; e < n; ++e) {
            std::vector<int> ctx;
            for (const auto& [f, ar] : alg.sig().symbols()) {
                if (ar == 0) continue;
                std::size_t surround = 1;
                for (int i = 0; i < ar - 1; ++i) surround *= n;
                for (int slot = 0; slot < ar; ++slot) {
                    for (std::size_t s = 0; s < surround; ++s) {
                        auto rest = alg.tuple_at(ar - 1, s);
                        std::vector<Elem> args(rest.begin(), rest.begin() + slot);
                        args.push_back(e);
                        args.insert(args.end(), rest.begin() + slot, rest.end());
                        ctx.push_back(cls[alg.interp(f, args)]);
                    }
                }
            }
            auto [it, fresh] = ids.emplace(std::make_pair(cls[e], std::move(ctx)),
                                           static_cast<int>(ids.size()));
            (void)fresh;
            next[e] = it->second;
        }
        // Class ids are assigned in first-seen element order on both sides,
        // so plain equality detects the fixpoint.
        if (next == cls) break;
        cls = std::move(next);
    }

    MinimizeResult res;
    int nclasses = *std::max_element(cls.begin(), cls.end()) + 1;
    std::vector<std::vector<Elem>> classes(nclasses);
    for (Elem e = 0; e < n; ++e) classes[cls[e]].push_back(e);
    // Order classes by smallest member; element order already puts the
    // preferred representative first.
    std::sort(classes.begin(), classes.end(),
              [](const std::vector<Elem>& x, const std::vector<Elem>& y) {
                  return x.front() < y.front();
              });
    res.classes = classes;
    res.old_to_new.assign(n, -1);
    for (int c = 0; c < nclasses; ++c)
        for (Elem e : classes[c]) res.old_to_new[e] = c;

    std::vector<std::string> names;
    std::vector<Term> terms;
    for (const auto& c : classes) {
        names.push_back(alg.name(c.front()));
        if (a.has_elem_terms()) terms.push_back(a.elem_terms()[c.front()]);
    }

    FiniteAlgebra q(alg.sig(), names);
    std::map<std::string, std::vector<char>> redex;
    for (const auto& [f, ar] : alg.sig().symbols()) {
        std::size_t entries = 1;
        for (int i = 0; i < ar; ++i) entries *= names.size();
        auto& tab = redex[f];
        tab.assign(entries, 0);
        for (std::size_t idx = 0; idx < entries; ++idx) {
            auto args = q.tuple_at(ar, idx);
            std::vector<Elem> reps;
            for (Elem c : args) reps.push_back(classes[c].front());
            q.set_interp(f, args, res.old_to_new[alg.interp(f, reps)]);
            tab[idx] = a.isredex(f, reps) ? 1 : 0;
        }
    }
    res.algebra = RedexAlgebra(std::move(q), std::move(redex), std::move(terms));
    return res;
}

bool in_language(const RedexAlgebra& a, const Term& t) {
    if (t.is_var())
        throw NonGround("redex language membership needs a ground term");
    std::vector<Elem> vals;
    vals.reserve(t.args().size());
    for (const auto& sub : t.args()) {
        if (sub.is_var())
            throw NonGround("redex language membership needs a ground term");
        vals.push_back(a.alg().eval_ground(sub));
    }
    return a.isredex(t.symbol(), vals);
}

}  // namespace ocs
