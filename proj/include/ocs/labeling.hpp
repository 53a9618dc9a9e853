#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ocs/redex_algebra.hpp"

namespace ocs {

// Label carried by a function symbol occurrence: nothing, a mark, or the
// tuple of algebra values of its arguments.
enum class LabelKind { Empty, Mark, Tuple };

struct Label {
    LabelKind kind = LabelKind::Empty;
    std::vector<Elem> values;  // set only for Tuple

    bool operator==(const Label& o) const {
        return kind == o.kind && values == o.values;
    }
    bool operator!=(const Label& o) const { return !(*this == o); }
};

enum class LabelingMode { Minimal, Maximal };

// Thrown when a symbol or element name would make labeled names ambiguous.
struct BadSymbolName : std::runtime_error {
    explicit BadSymbolName(const std::string& what) : std::runtime_error(what) {}
};

// A redex algebra paired with a labeling scheme and the set sigred of
// labeled symbols that rewriting may not proceed beneath.  The algebra
// exposed by algebra() is the redex algebra's, extended with the unary
// root marker so that whole-term labelings can evaluate it.
class CLabeling {
public:
    // Marks a symbol (f*) exactly where the redex predicate holds.
    // sigred contains the marked version of every symbol.
    static CLabeling minimal(const RedexAlgebra& ra);

    // Labels every symbol with its full argument tuple (f^a,b).  sigred
    // contains the labeled symbols whose tuple satisfies the redex
    // predicate.  The root marker is labeled too but never enters sigred.
    static CLabeling maximal(const RedexAlgebra& ra);

    LabelingMode mode() const { return mode_; }
    const FiniteAlgebra& algebra() const { return alg_; }
    const RedexAlgebra& redex_algebra() const { return ra_; }

    // Label of fun at an occurrence whose arguments evaluate to args.
    Label pi(const std::string& fun, const std::vector<Elem>& args) const;

    std::string labeled_name(const std::string& fun, const Label& lab) const;
    std::string up_name(Elem from, Elem to) const;

    // Splits a labeled name back into base symbol and label.
    std::optional<std::pair<std::string, Label>> decompose(const std::string& name) const;
    std::optional<std::pair<Elem, Elem>> up_values(const std::string& name) const;

    // Homomorphic labeling of t under the assignment alpha; alpha must
    // cover Var(t).  Variables stay unlabeled.
    Term label(const Term& t, const Assignment& alpha) const;

    const std::set<std::string>& sigred() const { return sigred_; }
    bool in_sigred(const std::string& name) const { return sigred_.count(name) != 0; }

    // Shrinking sigred is always allowed; returns whether name was present.
    bool remove_from_sigred(const std::string& name);

    // Growing sigred is only accepted when every ground term up to the
    // given size whose labeling is rooted in the enlarged set really is a
    // redex of r.  Returns false (and leaves sigred unchanged) otherwise.
    bool add_to_sigred(const std::string& name, const Trs& r, int term_size_bound);

private:
    CLabeling(LabelingMode mode, const RedexAlgebra& ra);

    LabelingMode mode_;
    RedexAlgebra ra_;
    FiniteAlgebra alg_;
    std::set<std::string> sigred_;
    // Every labeled name this labeling can produce, for decomposition.
    std::map<std::string, std::pair<std::string, Label>> by_name_;
};

bool is_up_symbol(const std::string& name);

// Strips labels and change markers, recovering the original term.
Term erase_labels(const Term& t);

struct ClassifyResult {
    bool sound = true;
    bool complete = true;
    std::optional<Term> sound_witness;     // sigred-rooted labeling, not a redex
    std::optional<Term> complete_witness;  // redex not labeled into sigred
};

// Checks soundness and completeness of the labeling against r over all
// ground terms up to max_term_size.  A pass is evidence up to the bound,
// not a proof.
ClassifyResult classify(const CLabeling& cl, const Trs& r, int max_term_size);

}  // namespace ocs
