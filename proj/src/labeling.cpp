#include "ocs/labeling.hpp"

#include <utility>

namespace ocs {

namespace {

const std::string up_prefix = "↑";
const std::string up_arrow = "→";

// Substrings that labeled and change-marker names are built from; base
// symbol and element names must avoid them so names stay decomposable.
const std::string reserved[] = {"*", "^", ",", up_prefix, up_arrow};

void check_name_free(const std::string& name, const char* role) {
    for (const auto& r : reserved) {
        if (name.find(r) != std::string::npos)
            throw BadSymbolName(std::string(role) + " '" + name +
                                "' contains reserved character '" + r + "'");
    }
}

long tuple_count(int domain, int arity) {
    long n = 1;
    for (int i = 0; i < arity; ++i) n *= domain;
    return n;
}

}  // namespace

CLabeling::CLabeling(LabelingMode mode, const RedexAlgebra& ra)
    : mode_(mode), ra_(ra), alg_(extend_with_top(ra.alg())) {
    for (const auto& [f, ar] : alg_.sig().symbols()) {
        (void)ar;
        if (f != top_symbol) check_name_free(f, "symbol");
    }
    for (Elem e = 0; e < alg_.size(); ++e)
        check_name_free(alg_.name(e), "element");

    auto add_name = [&](const std::string& name, const std::string& base, const Label& lab) {
        auto [it, inserted] = by_name_.emplace(name, std::make_pair(base, lab));
        if (!inserted && !(it->second.first == base && it->second.second == lab))
            throw BadSymbolName("labeled name collision at '" + name + "'");
    };

    for (const auto& [f, ar] : alg_.sig().symbols()) {
        if (mode_ == LabelingMode::Minimal) {
            add_name(labeled_name(f, {LabelKind::Empty, {}}), f, {LabelKind::Empty, {}});
            if (f != top_symbol)
                add_name(labeled_name(f, {LabelKind::Mark, {}}), f, {LabelKind::Mark, {}});
        } else {
            for (long i = 0; i < tuple_count(alg_.size(), ar); ++i) {
                Label lab{LabelKind::Tuple, alg_.tuple_at(ar, i)};
                add_name(labeled_name(f, lab), f, lab);
            }
        }
    }
}

CLabeling CLabeling::minimal(const RedexAlgebra& ra) {
    CLabeling cl(LabelingMode::Minimal, ra);
    for (const auto& [f, ar] : ra.alg().sig().symbols()) {
        (void)ar;
        cl.sigred_.insert(cl.labeled_name(f, {LabelKind::Mark, {}}));
    }
    return cl;
}

CLabeling CLabeling::maximal(const RedexAlgebra& ra) {
    CLabeling cl(LabelingMode::Maximal, ra);
    for (const auto& [f, ar] : ra.alg().sig().symbols()) {
        for (long i = 0; i < tuple_count(ra.alg().size(), ar); ++i) {
            std::vector<Elem> args = ra.alg().tuple_at(ar, i);
            if (ra.isredex(f, args))
                cl.sigred_.insert(cl.labeled_name(f, {LabelKind::Tuple, args}));
        }
    }
    return cl;
}

Label CLabeling::pi(const std::string& fun, const std::vector<Elem>& args) const {
    if (mode_ == LabelingMode::Maximal) return {LabelKind::Tuple, args};
    if (fun != top_symbol && ra_.isredex(fun, args)) return {LabelKind::Mark, {}};
    return {LabelKind::Empty, {}};
}

std::string CLabeling::labeled_name(const std::string& fun, const Label& lab) const {
    switch (lab.kind) {
        case LabelKind::Empty:
            return fun;
        case LabelKind::Mark:
            return fun + "*";
        case LabelKind::Tuple: {
            if (lab.values.empty()) return fun;
            std::string out = fun + "^";
            for (std::size_t i = 0; i < lab.values.size(); ++i) {
                if (i) out += ",";
                out += alg_.name(lab.values[i]);
            }
            return out;
        }
    }
    return fun;
}

std::string CLabeling::up_name(Elem from, Elem to) const {
    return up_prefix + alg_.name(from) + up_arrow + alg_.name(to);
}

std::optional<std::pair<std::string, Label>> CLabeling::decompose(
    const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::pair<Elem, Elem>> CLabeling::up_values(const std::string& name) const {
    if (!is_up_symbol(name)) return std::nullopt;
    std::string rest = name.substr(up_prefix.size());
    auto arrow = rest.find(up_arrow);
    if (arrow == std::string::npos) return std::nullopt;
    auto from = alg_.element_by_name(rest.substr(0, arrow));
    auto to = alg_.element_by_name(rest.substr(arrow + up_arrow.size()));
    if (!from || !to) return std::nullopt;
    return std::make_pair(*from, *to);
}

namespace {

std::pair<Term, Elem> label_rec(const CLabeling& cl, const Term& t,
                                const Assignment& alpha) {
    if (t.is_var()) {
        auto it = alpha.find(t.symbol());
        if (it == alpha.end())
            throw std::runtime_error("unassigned variable '" + t.symbol() + "'");
        return {t, it->second};
    }
    std::vector<Term> args;
    std::vector<Elem> vals;
    args.reserve(t.args().size());
    vals.reserve(t.args().size());
    for (const auto& a : t.args()) {
        auto [la, v] = label_rec(cl, a, alpha);
        args.push_back(std::move(la));
        vals.push_back(v);
    }
    Term labeled = Term::fun(cl.labeled_name(t.symbol(), cl.pi(t.symbol(), vals)),
                             std::move(args));
    return {std::move(labeled), cl.algebra().interp(t.symbol(), vals)};
}

}  // namespace

Term CLabeling::label(const Term& t, const Assignment& alpha) const {
    return label_rec(*this, t, alpha).first;
}

bool CLabeling::remove_from_sigred(const std::string& name) {
    return sigred_.erase(name) != 0;
}

bool CLabeling::add_to_sigred(const std::string& name, const Trs& r,
                              int term_size_bound) {
    auto dec = decompose(name);
    if (!dec || dec->first == top_symbol) return false;
    if (sigred_.count(name)) return true;
    sigred_.insert(name);
    ClassifyResult res = classify(*this, r, term_size_bound);
    if (!res.sound) {
        sigred_.erase(name);
        return false;
    }
    return true;
}

bool is_up_symbol(const std::string& name) {
    return name.compare(0, up_prefix.size(), up_prefix) == 0;
}

Term erase_labels(const Term& t) {
    if (t.is_var()) return t;
    if (is_up_symbol(t.symbol())) {
        if (t.args().size() != 1)
            throw std::runtime_error("change marker '" + t.symbol() + "' is not unary");
        return erase_labels(t.args().front());
    }
    std::string base = t.symbol();
    if (auto pos = base.find('^'); pos != std::string::npos)
        base = base.substr(0, pos);
    else if (!base.empty() && base.back() == '*')
        base.pop_back();
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const auto& a : t.args()) args.push_back(erase_labels(a));
    return Term::fun(base, std::move(args));
}

ClassifyResult classify(const CLabeling& cl, const Trs& r, int max_term_size) {
    ClassifyResult res;
    static const Assignment empty;
    for (const Term& t : enumerate_ground_terms(r.sig(), max_term_size)) {
        Term lab = cl.label(t, empty);
        bool claimed = cl.in_sigred(lab.symbol());
        bool actual = is_redex(r, t);
        if (claimed && !actual && res.sound) {
            res.sound = false;
            res.sound_witness = t;
        }
        if (actual && !claimed && res.complete) {
            res.complete = false;
            res.complete_witness = t;
        }
        if (!res.sound && !res.complete) break;
    }
    return res;
}

}  // namespace ocs
