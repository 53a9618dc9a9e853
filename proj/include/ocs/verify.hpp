#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ocs/transform.hpp"

namespace ocs {

// Every left-hand side that is non-linear is an instance of some linear
// left-hand side of the same system.
bool is_quasi_left_linear(const Trs& r);

struct SimulationReport {
    int seeds = 0;
    int steps = 0;     // outermost steps checked
    int failures = 0;
    std::optional<Term> failure_source;  // first unsimulated step, unlabeled
    std::optional<Term> failure_target;
    std::map<int, int> m_histogram;      // relabel steps used per simulated step
    bool ok() const { return failures == 0; }
};

// Checks that each outermost step s -> t between ground seeds is matched
// by exactly one mu-step from lab(top(s)) to lab(top(t)).
SimulationReport check_cxtext_simulation(const Trs& r, const CLabeling& cl,
                                         const CsTrs& out, const std::vector<Term>& seeds);

// Checks that each outermost step is matched by one labeled-rule mu-step
// followed by at most trs-c-depth many relabeling mu-steps, recording how
// many were needed in the histogram.
SimulationReport check_dynlab_simulation(const Trs& r, const CLabeling& cl,
                                         const CsTrs& out, const std::vector<Term>& seeds);

struct ReverseReport {
    int seeds = 0;
    int mu_steps = 0;
    int failures = 0;
    std::optional<Term> witness_source;  // labeled term the failing mu-step left
    std::optional<Term> witness_target;  // and the labeled term it produced
    bool ok() const { return failures == 0; }
};

// Checks that every mu-step from a correctly labeled image erases to an
// outermost step of r and lands on a correctly labeled image again.
ReverseReport check_reverse_simulation(const Trs& r, const CLabeling& cl,
                                       const CsTrs& out, const std::vector<Term>& seeds);

struct ExploreResult {
    bool exceeded = false;       // found a derivation of length >= max_len
    bool node_cap_hit = false;   // gave up before visiting everything
    int longest = 0;             // steps on the longest derivation (when exhausted)
    std::vector<Term> witness;   // that derivation, or the overlong one
    long nodes = 0;              // distinct terms fully explored
};

// Depth-first exploration of mu-derivations from the seeds, memoized on
// terms. A cycle counts as exceeding any bound.
ExploreResult bounded_explore(const CsTrs& cs, const std::vector<Term>& seeds,
                              int max_len, long node_cap = 100000);

struct RecognitionReport {
    int terms = 0;
    int extra = 0;    // recognized but not a redex (soundness violations)
    int missed = 0;   // redex but not recognized (completeness violations)
    std::optional<Term> extra_witness;
    std::optional<Term> missed_witness;
    bool minimized_checked = false;
    int minimized_mismatches = 0;  // minimized algebra disagreeing with ra
    std::optional<Term> minimized_witness;
    bool ok() const { return extra == 0 && missed == 0 && minimized_mismatches == 0; }
};

// Compares in_language against the matching-based redex test over all
// ground terms up to the size bound. In LeftLinear mode the reference is
// the left-linear subsystem. Also checks that the minimized algebra
// accepts exactly the same terms (skipped when ra is not core).
RecognitionReport check_recognition(const Trs& r, const RedexAlgebra& ra, BuildMode mode,
                                    int max_term_size);

}  // namespace ocs
