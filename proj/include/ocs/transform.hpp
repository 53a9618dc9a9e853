#pragma once

#include <set>
#include <utility>
#include <vector>

#include "ocs/labeling.hpp"

namespace ocs {

struct TransformOptions {
    // Also extend pairs whose rule collapses to a bare variable, so the
    // output contains no collapsing rules. Off by default: collapsing
    // rules are harmless for the termination argument and extending them
    // inflates the output.
    bool eliminate_collapsing = false;
    // Generate relabeling rules only for value changes that rewrite steps
    // can actually cause, instead of for every pair of distinct elements.
    bool restrict_to_reachable = true;
};

// A chain of propagating value changes revisited a pair; cannot happen
// over a genuine c-model and indicates an inconsistent input algebra.
struct CycleDetected : std::runtime_error {
    explicit CycleDetected(const std::string& what) : std::runtime_error(what) {}
};

struct StaticExtensionResult {
    CsTrs cstrs;
    int extended = 0;  // rules after context prepending
    int labeled = 0;   // after labeling over all assignments
    int removed = 0;   // dropped for a redex symbol inside the context
};

// Prepends to each rule every thin context of exactly its c-depth, and the
// top marker over every thin context of smaller depth, labels the results
// over all assignments, and drops rules whose prepended context contains a
// redex symbol below its root. Arguments of redex symbols are mu-blocked.
StaticExtensionResult static_context_extension(const Trs& r, const CLabeling& cl);

struct ExtensionPair {
    Rule rule;
    Assignment assign;  // total on the variables of rule.lhs

    bool operator==(const ExtensionPair& o) const {
        return rule == o.rule && assign == o.assign;
    }
    bool operator<(const ExtensionPair& o) const {
        if (rule != o.rule) return rule < o.rule;
        return assign < o.assign;
    }
};

// Least fixpoint of on-demand prepending: pairs whose sides evaluate
// differently (or that collapse to a variable, when enabled) are replaced
// by all one-symbol extensions whose labeled root is not a redex symbol.
std::vector<ExtensionPair> dynamic_extension_pairs(const Trs& r, const CLabeling& cl,
                                                   const TransformOptions& opt = {});

struct DynamicExtensionResult {
    CsTrs cstrs;
    int pair_count = 0;
};

DynamicExtensionResult dynamic_context_extension(const Trs& r, const CLabeling& cl,
                                                 const TransformOptions& opt = {});

using ValuePair = std::pair<Elem, Elem>;

// All (old value, new value) pairs a rewrite step can produce, closed
// under propagation through symbols outside sigred. Never contains
// diagonal pairs.
std::set<ValuePair> value_change_pairs(const Trs& r, const CLabeling& cl);

enum class RuleOrigin { Labeled, RelabelSigma, RelabelTop };

struct DynamicLabelingResult {
    CsTrs cstrs;
    std::vector<RuleOrigin> origins;  // parallel to cstrs.trs.rules()
    std::set<ValuePair> pairs;        // value changes the relabel rules cover
    int labeled = 0;
    int relabel_sigma = 0;
    int relabel_top = 0;
};

// Labels each rule per assignment, marking a changed root value with a
// unary change marker, and adds relabeling rules that move the marker
// upward one symbol at a time, re-labeling the symbol passed through.
DynamicLabelingResult dynamic_labeling(const Trs& r, const CLabeling& cl,
                                       const TransformOptions& opt = {});

struct GroundExtension {
    Trs trs;
    std::string constant;
    std::string unary;
};

// Extends the signature with a fresh constant and a fresh unary symbol,
// keeping the rules. Termination results on ground terms of the extended
// system cover open terms of the original one.
GroundExtension ground_extend(const Trs& r);

struct LeadstoResult {
    int longest = 0;              // pairs visited on the longest chain
    std::vector<ValuePair> path;  // a chain realizing it
};

// Longest chain of value-change pairs connected by one-symbol propagation
// within the given set; bounded by the TRS c-depth for a c-model. Throws
// CycleDetected when the propagation relation is cyclic.
LeadstoResult leadsto_paths(const std::set<ValuePair>& pairs, const CLabeling& cl);

}  // namespace ocs
