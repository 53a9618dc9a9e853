#include "ocs/term.hpp"

#include <algorithm>
#include <cassert>

namespace ocs {

const std::string top_symbol = "⊤";          // ⊤
const std::string bot_symbol = "⊥";          // ⊥
const std::string Context::hole_symbol = "□";  // □

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::var(const std::string& name) {
    auto node = std::make_shared<Node>();
    node->is_var = true;
    node->sym = name;
    node->size = 1;
    node->hash = hash_combine(0x5bd1, std::hash<std::string>{}(name));
    return Term(std::move(node));
}

Term Term::fun(const std::string& name, std::vector<Term> args) {
    auto node = std::make_shared<Node>();
    node->is_var = false;
    node->sym = name;
    node->size = 1;
    node->hash = hash_combine(0xfa11, std::hash<std::string>{}(name));
    for (const Term& a : args) {
        node->size += a.size();
        node->hash = hash_combine(node->hash, a.hash());
    }
    node->args = std::move(args);
    return Term(std::move(node));
}

bool Term::operator==(const Term& other) const {
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    if (node_->hash != other.node_->hash || node_->size != other.node_->size) return false;
    if (node_->is_var != other.node_->is_var || node_->sym != other.node_->sym) return false;
    if (node_->args.size() != other.node_->args.size()) return false;
    for (std::size_t i = 0; i < node_->args.size(); ++i)
        if (node_->args[i] != other.node_->args[i]) return false;
    return true;
}

int Term::compare(const Term& a, const Term& b) {
    if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
    if (int c = a.symbol().compare(b.symbol()); c != 0) return c < 0 ? -1 : 1;
    if (a.args().size() != b.args().size()) return a.args().size() < b.args().size() ? -1 : 1;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
    return 0;
}

std::string Term::to_string() const {
    if (!node_) return "<null>";
    if (is_var() || args().empty()) return symbol();
    std::string out = symbol();
    out += '(';
    for (std::size_t i = 0; i < args().size(); ++i) {
        if (i) out += ',';
        out += args()[i].to_string();
    }
    out += ')';
    return out;
}

std::string position_to_string(const Position& p) {
    if (p.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(p[i] + 1);
    }
    return out;
}

bool position_is_prefix(const Position& p, const Position& q) {
    if (p.size() > q.size()) return false;
    return std::equal(p.begin(), p.end(), q.begin());
}

void Signature::add(const std::string& name, int arity) {
    auto [it, inserted] = arity_.emplace(name, arity);
    if (!inserted && it->second != arity)
        throw std::runtime_error("symbol '" + name + "' used with arities " +
                                 std::to_string(it->second) + " and " + std::to_string(arity));
}

int Signature::arity(const std::string& name) const {
    auto it = arity_.find(name);
    if (it == arity_.end()) throw std::runtime_error("unknown symbol '" + name + "'");
    return it->second;
}

std::vector<std::string> Signature::constants() const {
    std::vector<std::string> out;
    for (const auto& [name, ar] : arity_)
        if (ar == 0) out.push_back(name);
    return out;
}

void Signature::add_symbols_of(const Term& t, const std::set<std::string>& vars) {
    if (t.is_var()) return;
    if (vars.count(t.symbol()))
        throw IllFormedRule("variable '" + t.symbol() + "' used as a function symbol");
    add(t.symbol(), static_cast<int>(t.args().size()));
    for (const Term& a : t.args()) add_symbols_of(a, vars);
}

bool Rule::operator<(const Rule& other) const {
    if (int c = Term::compare(lhs, other.lhs); c != 0) return c < 0;
    return Term::compare(rhs, other.rhs) < 0;
}

std::string Rule::to_string() const { return lhs.to_string() + " -> " + rhs.to_string(); }

namespace {

void check_over_sig(const Term& t, const Signature& sig, const Rule& rule) {
    if (t.is_var()) return;
    if (!sig.contains(t.symbol()))
        throw IllFormedRule("unknown symbol '" + t.symbol() + "' in rule " + rule.to_string());
    if (sig.arity(t.symbol()) != static_cast<int>(t.args().size()))
        throw IllFormedRule("symbol '" + t.symbol() + "' applied to " +
                            std::to_string(t.args().size()) + " arguments, declared arity " +
                            std::to_string(sig.arity(t.symbol())) + ", in rule " + rule.to_string());
    for (const Term& a : t.args()) check_over_sig(a, sig, rule);
}

}  // namespace

Trs::Trs(Signature sig, std::vector<Rule> rules) : sig_(std::move(sig)), rules_(std::move(rules)) {
    for (const Rule& rule : rules_) {
        if (rule.lhs.empty() || rule.rhs.empty())
            throw IllFormedRule("rule with empty side");
        if (rule.lhs.is_var())
            throw IllFormedRule("left-hand side is a variable in rule " + rule.to_string());
        check_over_sig(rule.lhs, sig_, rule);
        check_over_sig(rule.rhs, sig_, rule);
        std::set<std::string> lv = variables(rule.lhs);
        for (const std::string& v : variables(rule.rhs))
            if (!lv.count(v))
                throw IllFormedRule("variable '" + v + "' of the right-hand side does not occur on the left in rule " +
                                    rule.to_string());
    }
}

bool Trs::is_left_linear() const {
    return std::all_of(rules_.begin(), rules_.end(),
                       [](const Rule& r) { return is_linear(r.lhs); });
}

Trs Trs::left_linear_rules() const {
    std::vector<Rule> out;
    for (const Rule& r : rules_)
        if (is_linear(r.lhs)) out.push_back(r);
    return Trs(sig_, std::move(out));
}

ReplacementMap ReplacementMap::full(const Signature& sig) {
    ReplacementMap mu;
    for (const auto& [name, ar] : sig.symbols()) {
        std::set<int> all;
        for (int i = 1; i <= ar; ++i) all.insert(i);
        mu.mu_[name] = std::move(all);
    }
    return mu;
}

void ReplacementMap::set(const std::string& name, std::set<int> positions) {
    mu_[name] = std::move(positions);
}

std::set<int> ReplacementMap::at(const std::string& name, int arity) const {
    auto it = mu_.find(name);
    if (it != mu_.end()) return it->second;
    std::set<int> all;
    for (int i = 1; i <= arity; ++i) all.insert(i);
    return all;
}

namespace {

int count_holes(const Term& t) {
    if (t.is_var()) return 0;
    if (t.symbol() == Context::hole_symbol) return 1;
    int n = 0;
    for (const Term& a : t.args()) n += count_holes(a);
    return n;
}

bool find_hole(const Term& t, Position& pos) {
    if (t.is_var()) return false;
    if (t.symbol() == Context::hole_symbol) return true;
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        pos.push_back(static_cast<int>(i));
        if (find_hole(t.args()[i], pos)) return true;
        pos.pop_back();
    }
    return false;
}

}  // namespace

Context::Context(Term skeleton) : skeleton_(std::move(skeleton)) {
    if (count_holes(skeleton_) != 1)
        throw std::runtime_error("context must contain exactly one hole: " + skeleton_.to_string());
    find_hole(skeleton_, hole_pos_);
}

Context Context::hole() { return Context(Term::fun(hole_symbol)); }

Term Context::fill(const Term& t) const { return replace_at(skeleton_, hole_pos_, t); }

Context Context::compose(const Context& inner) const { return Context(fill(inner.skeleton())); }

std::set<std::string> Context::vars() const { return variables(skeleton_); }

std::vector<Position> positions(const Term& t) {
    std::vector<Position> out;
    Position cur;
    auto walk = [&](auto&& self, const Term& s) -> void {
        out.push_back(cur);
        for (std::size_t i = 0; i < s.args().size(); ++i) {
            cur.push_back(static_cast<int>(i));
            self(self, s.args()[i]);
            cur.pop_back();
        }
    };
    walk(walk, t);
    return out;
}

const Term& subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (int i : p) {
        if (cur->is_var() || i < 0 || i >= static_cast<int>(cur->args().size()))
            throw std::out_of_range("position " + position_to_string(p) + " not in " + t.to_string());
        cur = &cur->args()[i];
    }
    return *cur;
}

Term replace_at(const Term& t, const Position& p, const Term& s) {
    if (p.empty()) return s;
    if (t.is_var() || p.front() < 0 || p.front() >= static_cast<int>(t.args().size()))
        throw std::out_of_range("position " + position_to_string(p) + " not in " + t.to_string());
    std::vector<Term> args = t.args();
    Position rest(p.begin() + 1, p.end());
    args[p.front()] = replace_at(args[p.front()], rest, s);
    return Term::fun(t.symbol(), std::move(args));
}

Context context_at(const Term& t, const Position& p) {
    return Context(replace_at(t, p, Term::fun(Context::hole_symbol)));
}

std::set<std::string> variables(const Term& t) {
    std::set<std::string> out;
    auto walk = [&](auto&& self, const Term& s) -> void {
        if (s.is_var()) {
            out.insert(s.symbol());
            return;
        }
        for (const Term& a : s.args()) self(self, a);
    };
    walk(walk, t);
    return out;
}

bool is_ground(const Term& t) {
    if (t.is_var()) return false;
    return std::all_of(t.args().begin(), t.args().end(), is_ground);
}

namespace {

bool linear_walk(const Term& t, std::set<std::string>& seen) {
    if (t.is_var()) return seen.insert(t.symbol()).second;
    return std::all_of(t.args().begin(), t.args().end(),
                       [&](const Term& a) { return linear_walk(a, seen); });
}

}  // namespace

bool is_linear(const Term& t) {
    std::set<std::string> seen;
    return linear_walk(t, seen);
}

Term apply_subst(const Term& t, const Substitution& sigma) {
    if (t.is_var()) {
        auto it = sigma.find(t.symbol());
        return it == sigma.end() ? t : it->second;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(apply_subst(a, sigma));
    return Term::fun(t.symbol(), std::move(args));
}

namespace {

bool match_walk(const Term& pattern, const Term& subject, Substitution& sigma) {
    if (pattern.is_var()) {
        auto [it, inserted] = sigma.emplace(pattern.symbol(), subject);
        return inserted || it->second == subject;
    }
    if (subject.is_var() || pattern.symbol() != subject.symbol() ||
        pattern.args().size() != subject.args().size())
        return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!match_walk(pattern.args()[i], subject.args()[i], sigma)) return false;
    return true;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
    Substitution sigma;
    if (match_walk(pattern, subject, sigma)) return sigma;
    return std::nullopt;
}

bool is_redex(const Trs& r, const Term& t) {
    if (t.is_var()) return false;
    return std::any_of(r.rules().begin(), r.rules().end(),
                       [&](const Rule& rule) { return match(rule.lhs, t).has_value(); });
}

std::vector<Position> redex_positions(const Trs& r, const Term& t) {
    std::vector<Position> out;
    for (const Position& p : positions(t))
        if (is_redex(r, subterm_at(t, p))) out.push_back(p);
    return out;
}

std::vector<Position> outermost_redex_positions(const Trs& r, const Term& t) {
    std::vector<Position> all = redex_positions(r, t);
    std::vector<Position> out;
    for (const Position& p : all) {
        bool covered = std::any_of(all.begin(), all.end(), [&](const Position& q) {
            return q.size() < p.size() && position_is_prefix(q, p);
        });
        if (!covered) out.push_back(p);
    }
    return out;
}

std::vector<Step> rewrite_steps_at(const Trs& r, const Term& t, const Position& p) {
    std::vector<Step> out;
    const Term& sub = subterm_at(t, p);
    for (std::size_t i = 0; i < r.rules().size(); ++i) {
        if (auto sigma = match(r.rules()[i].lhs, sub)) {
            Term contracted = apply_subst(r.rules()[i].rhs, *sigma);
            out.push_back({p, static_cast<int>(i), replace_at(t, p, contracted)});
        }
    }
    return out;
}

namespace {

std::vector<Step> steps_at_positions(const Trs& r, const Term& t, const std::vector<Position>& ps) {
    std::vector<Step> out;
    for (const Position& p : ps) {
        std::vector<Step> here = rewrite_steps_at(r, t, p);
        out.insert(out.end(), here.begin(), here.end());
    }
    return out;
}

}  // namespace

std::vector<Step> rewrite_steps(const Trs& r, const Term& t) {
    return steps_at_positions(r, t, positions(t));
}

std::vector<Step> outermost_steps(const Trs& r, const Term& t) {
    return steps_at_positions(r, t, outermost_redex_positions(r, t));
}

std::vector<Term> outermost_successors(const Trs& r, const Term& t) {
    std::vector<Term> out;
    for (const Step& s : outermost_steps(r, t)) out.push_back(s.result);
    return out;
}

std::vector<Position> mu_positions(const ReplacementMap& mu, const Term& t) {
    std::vector<Position> out;
    Position cur;
    auto walk = [&](auto&& self, const Term& s) -> void {
        out.push_back(cur);
        if (s.is_var()) return;
        std::set<int> allowed = mu.at(s.symbol(), static_cast<int>(s.args().size()));
        for (int i : allowed) {
            cur.push_back(i - 1);
            self(self, s.args()[i - 1]);
            cur.pop_back();
        }
    };
    walk(walk, t);
    return out;
}

std::vector<Step> cs_steps(const CsTrs& r, const Term& t) {
    return steps_at_positions(r.trs, t, mu_positions(r.mu, t));
}

std::vector<Term> cs_successors(const CsTrs& r, const Term& t) {
    std::vector<Term> out;
    for (const Step& s : cs_steps(r, t)) out.push_back(s.result);
    return out;
}

std::vector<Context> enumerate_flat_contexts(const Signature& sig,
                                             const std::set<std::string>& avoid,
                                             bool include_top) {
    std::vector<Context> out;
    for (const auto& [name, ar] : sig.symbols()) {
        if (ar == 0 || name == top_symbol) continue;
        for (int slot = 0; slot < ar; ++slot) {
            FreshNameSession fresh(avoid);
            std::vector<Term> args;
            for (int i = 0; i < ar; ++i)
                args.push_back(i == slot ? Term::fun(Context::hole_symbol)
                                         : Term::var(fresh.fresh()));
            out.push_back(Context(Term::fun(name, std::move(args))));
        }
    }
    if (include_top)
        out.push_back(Context(Term::fun(top_symbol, {Term::fun(Context::hole_symbol)})));
    return out;
}

std::vector<Context> enumerate_thin_contexts(const Signature& sig, int depth,
                                             const std::set<std::string>& avoid) {
    std::vector<Context> out;
    if (depth == 0) {
        out.push_back(Context::hole());
        return out;
    }
    for (const Context& outer : enumerate_thin_contexts(sig, depth - 1, avoid)) {
        // Extend at the hole with one more flat layer; variable names restart
        // per context, numbered along the spine.
        std::set<std::string> used = outer.vars();
        used.insert(avoid.begin(), avoid.end());
        for (const auto& [name, ar] : sig.symbols()) {
            if (ar == 0 || name == top_symbol) continue;
            for (int slot = 0; slot < ar; ++slot) {
                FreshNameSession fresh(used);
                std::vector<Term> args;
                for (int i = 0; i < ar; ++i)
                    args.push_back(i == slot ? Term::fun(Context::hole_symbol)
                                             : Term::var(fresh.fresh("y")));
                out.push_back(outer.compose(Context(Term::fun(name, std::move(args)))));
            }
        }
    }
    return out;
}

void FreshNameSession::reserve(const std::set<std::string>& names) {
    used_.insert(names.begin(), names.end());
}

std::string FreshNameSession::fresh(const std::string& base) {
    for (;;) {
        std::string cand = base + std::to_string(++counter_);
        if (used_.insert(cand).second) return cand;
    }
}

namespace {

void collect_rename(const Term& t, Substitution& map, int& next) {
    if (t.is_var()) {
        if (!map.count(t.symbol()))
            map.emplace(t.symbol(), Term::var("x" + std::to_string(++next)));
        return;
    }
    for (const Term& a : t.args()) collect_rename(a, map, next);
}

}  // namespace

Rule rename_canonical(const Rule& rule) {
    Substitution map;
    int next = 0;
    collect_rename(rule.lhs, map, next);
    collect_rename(rule.rhs, map, next);
    return {apply_subst(rule.lhs, map), apply_subst(rule.rhs, map)};
}

std::vector<Rule> sort_and_dedup(std::vector<Rule> rules) {
    for (Rule& r : rules) r = rename_canonical(r);
    std::sort(rules.begin(), rules.end());
    rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
    return rules;
}

std::vector<Term> enumerate_ground_terms(const Signature& sig, int max_size) {
    if (sig.constants().empty())
        throw std::runtime_error("cannot enumerate ground terms: signature has no constants");
    // by_size[s] holds all ground terms of exactly size s, in canonical order.
    std::vector<std::vector<Term>> by_size(max_size + 1);
    for (int s = 1; s <= max_size; ++s) {
        for (const auto& [name, ar] : sig.symbols()) {
            if (ar == 0) {
                if (s == 1) by_size[s].push_back(Term::fun(name));
                continue;
            }
            if (s < ar + 1) continue;
            // Distribute s-1 among ar arguments, each at least 1.
            std::vector<Term> partial;
            auto fill = [&](auto&& self, int slot, int budget) -> void {
                if (slot == ar) {
                    if (budget == 0) by_size[s].push_back(Term::fun(name, partial));
                    return;
                }
                int reserve_rest = ar - slot - 1;
                for (int k = 1; k + reserve_rest <= budget; ++k) {
                    for (const Term& t : by_size[k]) {
                        partial.push_back(t);
                        self(self, slot + 1, budget - k);
                        partial.pop_back();
                    }
                }
            };
            fill(fill, 0, s - 1);
        }
        std::sort(by_size[s].begin(), by_size[s].end());
    }
    std::vector<Term> out;
    for (int s = 1; s <= max_size; ++s)
        out.insert(out.end(), by_size[s].begin(), by_size[s].end());
    return out;
}

}  // namespace ocs
