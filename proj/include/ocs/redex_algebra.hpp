#pragma once

#include "ocs/algebra.hpp"

namespace ocs {

struct PoolNotClosed : std::runtime_error {
    explicit PoolNotClosed(const std::string& what) : std::runtime_error(what) {}
};
struct NonGround : std::runtime_error {
    explicit NonGround(const std::string& what) : std::runtime_error(what) {}
};

// Bot terms are ground terms over a signature extended with the nullary
// placeholder ⊥, standing for an arbitrary unknown subterm.

// Replaces every variable of t by ⊥.
Term cut(const Term& t);

// True when every ground instance of the subject is matched by the pattern,
// reading ⊥ in the pattern as a wildcard. A non-⊥ pattern position over a ⊥
// subject fails: the subject does not determine the instance there.
bool bot_match(const Term& pattern, const Term& subject);

// Most specific common generalization refinement: combines two bot terms by
// letting ⊥ absorb the other side. nullopt on a symbol clash.
std::optional<Term> merge(const Term& s, const Term& t);

// Number of non-⊥ symbol occurrences.
int symbol_weight(const Term& t);

// The unique heaviest pool element matching t. Throws PoolNotClosed when the
// heaviest match is ambiguous, which cannot happen for merge-closed pools.
Term shrink(const Term& t, const std::vector<Term>& pool);

// Which rules feed the construction: only the left-linear ones, or all rules
// (cutting non-linear left-hand sides loses the equality constraints).
enum class BuildMode { LeftLinear, Full };

// A finite algebra together with a redex predicate per symbol and, for
// constructed instances, the bot term each element stands for.
class RedexAlgebra {
public:
    RedexAlgebra() = default;
    RedexAlgebra(FiniteAlgebra alg, std::map<std::string, std::vector<char>> redex_tables,
                 std::vector<Term> elem_terms = {});

    const FiniteAlgebra& alg() const { return alg_; }
    bool isredex(const std::string& f, const std::vector<Elem>& args) const;
    const std::map<std::string, std::vector<char>>& redex_tables() const { return redex_; }

    bool has_elem_terms() const { return !elem_terms_.empty(); }
    const std::vector<Term>& elem_terms() const { return elem_terms_; }

private:
    FiniteAlgebra alg_;
    std::map<std::string, std::vector<char>> redex_;
    std::vector<Term> elem_terms_;
};

// Builds the redex algebra of a TRS: the domain is the merge closure of the
// proper subterms of the cut left-hand sides plus ⊥, restricted to its core;
// f applied to elements shrinks f of their terms back into the pool, and the
// redex predicate tests the cut left-hand sides against the applied term.
RedexAlgebra build_redex_algebra(const Trs& r, BuildMode mode);

// Coarsest congruence that the redex predicate cannot tell apart, as a
// quotient algebra. Classes are listed by their smallest member, which also
// names the class. Requires a core input algebra.
struct MinimizeResult {
    RedexAlgebra algebra;
    std::vector<Elem> old_to_new;
    std::vector<std::vector<Elem>> classes;
};
MinimizeResult minimize(const RedexAlgebra& a);

// Evaluates a ground term bottom-up and applies the redex predicate at the
// root. Throws NonGround on variables.
bool in_language(const RedexAlgebra& a, const Term& t);

}  // namespace ocs
