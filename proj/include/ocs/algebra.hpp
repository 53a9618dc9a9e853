#pragma once

#include <optional>

#include "ocs/term.hpp"

namespace ocs {

// Elements of a finite algebra are dense indices into its element table.
using Elem = int;
using Assignment = std::map<std::string, Elem>;

struct NotACModel : std::runtime_error {
    explicit NotACModel(const std::string& what) : std::runtime_error(what) {}
};
struct EmptyCore : std::runtime_error {
    explicit EmptyCore(const std::string& what) : std::runtime_error(what) {}
};
struct SymbolClash : std::runtime_error {
    explicit SymbolClash(const std::string& what) : std::runtime_error(what) {}
};

// A finite algebra over a signature: a finite carrier plus one total function
// per symbol. Interpretations are stored as flat tables indexed mixed-radix.
class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    FiniteAlgebra(Signature sig, std::vector<std::string> element_names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& element_names() const { return names_; }
    const std::string& name(Elem e) const { return names_.at(e); }
    std::optional<Elem> element_by_name(const std::string& n) const;
    const Signature& sig() const { return sig_; }

    void set_interp(const std::string& f, const std::vector<Elem>& args, Elem result);
    Elem interp(const std::string& f, const std::vector<Elem>& args) const;
    const std::vector<Elem>& table(const std::string& f) const { return tables_.at(f); }

    // Throws std::runtime_error naming the first missing entry.
    void check_total() const;

    // Evaluates a term; throws std::runtime_error on a variable missing from
    // the assignment or an uninterpreted symbol.
    Elem eval(const Term& t, const Assignment& alpha) const;
    Elem eval_ground(const Term& t) const;

    std::size_t tuple_index(int arity, const std::vector<Elem>& args) const;
    std::vector<Elem> tuple_at(int arity, std::size_t index) const;

private:
    Signature sig_;
    std::vector<std::string> names_;
    std::map<std::string, std::vector<Elem>> tables_;
};

// All assignments for the given variables over a domain of the given size,
// in lexicographic order (variables in name order).
std::vector<Assignment> enumerate_assignments(const std::set<std::string>& vars, int domain_size);

// The subalgebra of elements reachable as values of ground terms, with the
// mapping between old and new element indices. Throws EmptyCore when the
// signature has no constants (no ground terms exist).
struct CoreResult {
    FiniteAlgebra algebra;
    std::vector<Elem> old_to_new;  // -1 for dropped elements
    std::vector<Elem> new_to_old;
};
CoreResult core(const FiniteAlgebra& a);
bool is_core(const FiniteAlgebra& a);

// Least n such that wrapping both sides of the rule in any n contexts yields
// equal values under every assignment, computed by propagating value pairs
// one symbol at a time. nullopt when the propagation cycles without reaching
// the diagonal (the algebra is not a c-model for this rule).
std::optional<int> rule_cdepth(const FiniteAlgebra& a, const Rule& rule);

struct CModelReport {
    std::vector<std::optional<int>> rule_cdepths;
    bool is_cmodel() const;
    // Maximum rule c-depth; only meaningful when is_cmodel().
    int trs_cdepth() const;
};
CModelReport check_cmodel(const FiniteAlgebra& a, const Trs& r);

// Adds the top marker as a fresh unary symbol interpreted as the constant
// function to element 0. Throws SymbolClash if the signature already has it.
FiniteAlgebra extend_with_top(const FiniteAlgebra& a);

}  // namespace ocs
