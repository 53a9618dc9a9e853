#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocs {

// First-order terms over a single-sorted signature. Terms are immutable and
// share structure; copying a Term copies a pointer.
class Term {
public:
    Term() = default;

    static Term var(const std::string& name);
    static Term fun(const std::string& name, std::vector<Term> args = {});

    bool empty() const { return node_ == nullptr; }
    bool is_var() const { return node_->is_var; }
    bool is_fun() const { return !node_->is_var; }

    // Variable name or function symbol, depending on the node kind.
    const std::string& symbol() const { return node_->sym; }
    const std::vector<Term>& args() const { return node_->args; }

    // Number of nodes (function symbols plus variable occurrences).
    int size() const { return node_->size; }
    std::size_t hash() const { return node_->hash; }

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }

    // Total order: variables before applications, then by symbol name, then
    // by arguments left to right. Used for deterministic output everywhere.
    static int compare(const Term& a, const Term& b);
    bool operator<(const Term& other) const { return compare(*this, other) < 0; }

    std::string to_string() const;

private:
    struct Node {
        bool is_var;
        std::string sym;
        std::vector<Term> args;
        int size;
        std::size_t hash;
    };
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// A position is a path from the root: the i-th entry selects the (1-based
// counting in print form, 0-based here) argument to descend into.
using Position = std::vector<int>;

std::string position_to_string(const Position& p);
bool position_is_prefix(const Position& p, const Position& q);

using Substitution = std::map<std::string, Term>;

class Signature {
public:
    // Throws std::runtime_error when the symbol exists with another arity.
    void add(const std::string& name, int arity);
    bool contains(const std::string& name) const { return arity_.count(name) != 0; }
    int arity(const std::string& name) const;
    const std::map<std::string, int>& symbols() const { return arity_; }
    std::vector<std::string> constants() const;
    bool empty() const { return arity_.empty(); }

    // Registers all function symbols of t; variables are the names in vars.
    void add_symbols_of(const Term& t, const std::set<std::string>& vars);

private:
    std::map<std::string, int> arity_;
};

struct IllFormedRule : std::runtime_error {
    explicit IllFormedRule(const std::string& what) : std::runtime_error(what) {}
};

struct Rule {
    Term lhs;
    Term rhs;

    bool operator==(const Rule& other) const { return lhs == other.lhs && rhs == other.rhs; }
    bool operator!=(const Rule& other) const { return !(*this == other); }
    bool operator<(const Rule& other) const;
    std::string to_string() const;
    bool is_collapsing() const { return rhs.is_var(); }
};

class Trs {
public:
    Trs() = default;
    // Validates each rule: lhs not a variable, Var(rhs) subset of Var(lhs),
    // all function symbols known with consistent arity. Throws IllFormedRule.
    Trs(Signature sig, std::vector<Rule> rules);

    const Signature& sig() const { return sig_; }
    const std::vector<Rule>& rules() const { return rules_; }

    bool is_left_linear() const;
    // The subsystem of rules with linear left-hand side, over the same signature.
    Trs left_linear_rules() const;

private:
    Signature sig_;
    std::vector<Rule> rules_;
};

// Replacement map mu: per function symbol, the set of argument indices
// (1-based) below which rewriting is allowed.
class ReplacementMap {
public:
    ReplacementMap() = default;
    static ReplacementMap full(const Signature& sig);

    void set(const std::string& name, std::set<int> positions);
    // Unknown symbols default to the full set of arguments.
    std::set<int> at(const std::string& name, int arity) const;
    bool has_entry(const std::string& name) const { return mu_.count(name) != 0; }
    const std::map<std::string, std::set<int>>& entries() const { return mu_; }

private:
    std::map<std::string, std::set<int>> mu_;
};

struct CsTrs {
    Trs trs;
    ReplacementMap mu;
};

// A context is a term containing exactly one occurrence of the hole symbol.
class Context {
public:
    static const std::string hole_symbol;  // the 0-ary hole

    explicit Context(Term skeleton);  // throws std::runtime_error unless exactly one hole
    static Context hole();

    const Term& skeleton() const { return skeleton_; }
    const Position& hole_position() const { return hole_pos_; }
    int depth() const { return static_cast<int>(hole_pos_.size()); }

    Term fill(const Term& t) const;
    Context compose(const Context& inner) const;  // this[inner]
    std::set<std::string> vars() const;

    bool operator==(const Context& other) const { return skeleton_ == other.skeleton_; }
    std::string to_string() const { return skeleton_.to_string(); }

private:
    Term skeleton_;
    Position hole_pos_;
};

// Reserved symbol names used by the transformations. These cannot appear in
// parsed input (the tokenizer only accepts ASCII identifiers).
extern const std::string top_symbol;  // the fresh top marker
extern const std::string bot_symbol;  // the cut constant of redex algebras

// --- basic term operations ---

std::vector<Position> positions(const Term& t);                     // preorder
const Term& subterm_at(const Term& t, const Position& p);           // throws std::out_of_range
Term replace_at(const Term& t, const Position& p, const Term& s);
Context context_at(const Term& t, const Position& p);

std::set<std::string> variables(const Term& t);
bool is_ground(const Term& t);
bool is_linear(const Term& t);

Term apply_subst(const Term& t, const Substitution& sigma);
std::optional<Substitution> match(const Term& pattern, const Term& subject);

// --- rewriting ---

struct Step {
    Position pos;
    int rule_index;
    Term result;
};

bool is_redex(const Trs& r, const Term& t);
std::vector<Position> redex_positions(const Trs& r, const Term& t);
// Redex positions with no redex strictly above them.
std::vector<Position> outermost_redex_positions(const Trs& r, const Term& t);

std::vector<Step> rewrite_steps_at(const Trs& r, const Term& t, const Position& p);
std::vector<Step> rewrite_steps(const Trs& r, const Term& t);
std::vector<Step> outermost_steps(const Trs& r, const Term& t);
std::vector<Term> outermost_successors(const Trs& r, const Term& t);

std::vector<Position> mu_positions(const ReplacementMap& mu, const Term& t);
std::vector<Step> cs_steps(const CsTrs& r, const Term& t);
std::vector<Term> cs_successors(const CsTrs& r, const Term& t);

// --- context enumeration ---

// All contexts f(x1,..,hole,..,xn) for symbols of arity >= 1, every hole slot,
// with fresh pairwise distinct variables avoiding the given set. Symbols in
// name order, slots left to right; a top context is appended when requested.
std::vector<Context> enumerate_flat_contexts(const Signature& sig,
                                             const std::set<std::string>& avoid,
                                             bool include_top);

// All contexts of exactly the given depth with at most one function symbol
// per depth (the spine above the hole); remaining argument slots hold fresh
// pairwise distinct canonical variables avoiding the given set.
std::vector<Context> enumerate_thin_contexts(const Signature& sig, int depth,
                                             const std::set<std::string>& avoid = {});

// --- misc ---

class FreshNameSession {
public:
    FreshNameSession() = default;
    explicit FreshNameSession(std::set<std::string> used) : used_(std::move(used)) {}
    void reserve(const std::set<std::string>& names);
    std::string fresh(const std::string& base = "w");

private:
    std::set<std::string> used_;
    int counter_ = 0;
};

// Renames variables to x1, x2, ... in order of first occurrence (lhs before
// rhs, preorder). Makes structural equality coincide with equality modulo
// renaming, which the rule-set deduplication relies on.
Rule rename_canonical(const Rule& rule);

std::vector<Rule> sort_and_dedup(std::vector<Rule> rules);

// All ground terms over sig of size <= max_size, smallest first, then in
// canonical term order. Throws std::runtime_error when sig has no constants.
std::vector<Term> enumerate_ground_terms(const Signature& sig, int max_size);

}  // namespace ocs

template <>
struct std::hash<ocs::Term> {
    std::size_t operator()(const ocs::Term& t) const { return t.hash(); }
};
