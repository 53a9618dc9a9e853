#include "ocs/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace ocs {

FiniteAlgebra::FiniteAlgebra(Signature sig, std::vector<std::string> element_names)
    : sig_(std::move(sig)), names_(std::move(element_names)) {
    if (names_.empty())
        throw std::runtime_error("algebra needs at least one element");
    std::set<std::string> seen;
    for (const auto& n : names_)
        if (!seen.insert(n).second)
            throw std::runtime_error("duplicate element name '" + n + "'");
    for (const auto& [f, ar] : sig_.symbols()) {
        std::size_t entries = 1;
        for (int i = 0; i < ar; ++i) entries *= names_.size();
        tables_[f].assign(entries, -1);
    }
}

std::optional<Elem> FiniteAlgebra::element_by_name(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == n) return static_cast<Elem>(i);
    return std::nullopt;
}

std::size_t FiniteAlgebra::tuple_index(int arity, const std::vector<Elem>& args) const {
    if (static_cast<int>(args.size()) != arity)
        throw std::runtime_error("argument tuple has wrong length");
    std::size_t idx = 0;
    for (Elem a : args) {
        if (a < 0 || a >= size())
            throw std::runtime_error("element index out of range");
        idx = idx * names_.size() + static_cast<std::size_t>(a);
    }
    return idx;
}

std::vector<Elem> FiniteAlgebra::tuple_at(int arity, std::size_t index) const {
    std::vector<Elem> args(arity, 0);
    for (int i = arity - 1; i >= 0; --i) {
        args[i] = static_cast<Elem>(index % names_.size());
        index /= names_.size();
    }
    return args;
}

void FiniteAlgebra::set_interp(const std::string& f, const std::vector<Elem>& args, Elem result) {
    auto it = tables_.find(f);
    if (it == tables_.end())
        throw std::runtime_error("unknown symbol '" + f + "' in interpretation");
    if (result < 0 || result >= size())
        throw std::runtime_error("interpretation result out of range for '" + f + "'");
    it->second[tuple_index(sig_.arity(f), args)] = result;
}

Elem FiniteAlgebra::interp(const std::string& f, const std::vector<Elem>& args) const {
    auto it = tables_.find(f);
    if (it == tables_.end())
        throw std::runtime_error("unknown symbol '" + f + "' in interpretation");
    Elem r = it->second[tuple_index(sig_.arity(f), args)];
    if (r < 0)
        throw std::runtime_error("missing interpretation entry for '" + f + "'");
    return r;
}

void FiniteAlgebra::check_total() const {
    for (const auto& [f, tab] : tables_) {
        for (std::size_t i = 0; i < tab.size(); ++i) {
            if (tab[i] >= 0) continue;
            std::ostringstream os;
            os << "no interpretation for " << f << "(";
            auto args = tuple_at(sig_.arity(f), i);
            for (std::size_t k = 0; k < args.size(); ++k)
                os << (k ? "," : "") << names_[args[k]];
            os << ")";
            throw std::runtime_error(os.str());
        }
    }
}

Elem FiniteAlgebra::eval(const Term& t, const Assignment& alpha) const {
    if (t.is_var()) {
        auto it = alpha.find(t.symbol());
        if (it == alpha.end())
            throw std::runtime_error("unassigned variable '" + t.symbol() + "'");
        return it->second;
    }
    std::vector<Elem> vals;
    vals.reserve(t.args().size());
    for (const auto& a : t.args()) vals.push_back(eval(a, alpha));
    return interp(t.symbol(), vals);
}

Elem FiniteAlgebra::eval_ground(const Term& t) const {
    static const Assignment empty;
    return eval(t, empty);
}

std::vector<Assignment> enumerate_assignments(const std::set<std::string>& vars, int domain_size) {
    std::vector<std::string> order(vars.begin(), vars.end());
    std::vector<Assignment> out;
    std::vector<Elem> digits(order.size(), 0);
    while (true) {
        Assignment a;
        for (std::size_t i = 0; i < order.size(); ++i) a[order[i]] = digits[i];
        out.push_back(std::move(a));
        int pos = static_cast<int>(order.size()) - 1;
        while (pos >= 0 && digits[pos] == domain_size - 1) digits[pos--] = 0;
        if (pos < 0) break;
        ++digits[pos];
    }
    return out;
}

CoreResult core(const FiniteAlgebra& a) {
    a.check_total();
    if (a.sig().constants().empty())
        throw EmptyCore("signature has no constants, so no element is the value of a ground term");
    std::vector<char> reach(a.size(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [f, ar] : a.sig().symbols()) {
            std::size_t entries = 1;
            for (int i = 0; i < ar; ++i) entries *= a.size();
            for (std::size_t idx = 0; idx < entries; ++idx) {
                auto args = a.tuple_at(ar, idx);
                bool ok = true;
                for (Elem x : args)
                    if (!reach[x]) { ok = false; break; }
                if (!ok) continue;
                Elem v = a.table(f)[idx];
                if (!reach[v]) { reach[v] = 1; changed = true; }
            }
        }
    }
    CoreResult res;
    res.old_to_new.assign(a.size(), -1);
    std::vector<std::string> names;
    for (Elem e = 0; e < a.size(); ++e) {
        if (!reach[e]) continue;
        res.old_to_new[e] = static_cast<Elem>(res.new_to_old.size());
        res.new_to_old.push_back(e);
        names.push_back(a.name(e));
    }
    res.algebra = FiniteAlgebra(a.sig(), names);
    for (const auto& [f, ar] : a.sig().symbols()) {
        std::size_t entries = 1;
        for (int i = 0; i < ar; ++i) entries *= names.size();
        for (std::size_t idx = 0; idx < entries; ++idx) {
            auto args = res.algebra.tuple_at(ar, idx);
            std::vector<Elem> old_args;
            old_args.reserve(args.size());
            for (Elem x : args) old_args.push_back(res.new_to_old[x]);
            res.algebra.set_interp(f, args, res.old_to_new[a.interp(f, old_args)]);
        }
    }
    return res;
}

bool is_core(const FiniteAlgebra& a) {
    try {
        return core(a).algebra.size() == a.size();
    } catch (const EmptyCore&) {
        return false;
    }
}

std::optional<int> rule_cdepth(const FiniteAlgebra& a, const Rule& rule) {
    a.check_total();
    using PairSet = std::set<std::pair<Elem, Elem>>;
    PairSet cur;
    for (const auto& alpha : enumerate_assignments(variables(rule.lhs), a.size()))
        cur.insert({a.eval(rule.lhs, alpha), a.eval(rule.rhs, alpha)});

    std::set<PairSet> seen;
    for (int depth = 0;; ++depth) {
        bool diagonal = true;
        for (const auto& [x, y] : cur)
            if (x != y) { diagonal = false; break; }
        if (diagonal) return depth;
        if (!seen.insert(cur).second) return std::nullopt;

        PairSet next;
        for (const auto& [x, y] : cur) {
            for (const auto& [f, ar] : a.sig().symbols()) {
                if (ar == 0) continue;
                // Wrap both components at each argument slot, with every
                // choice of surrounding elements.
                std::size_t surround = 1;
                for (int i = 0; i < ar - 1; ++i) surround *= a.size();
                for (int slot = 0; slot < ar; ++slot) {
                    for (std::size_t s = 0; s < surround; ++s) {
                        auto rest = a.tuple_at(ar - 1, s);
                        std::vector<Elem> with_x(rest.begin(), rest.begin() + slot);
                        with_x.push_back(x);
                        with_x.insert(with_x.end(), rest.begin() + slot, rest.end());
                        std::vector<Elem> with_y = with_x;
                        with_y[slot] = y;
                        next.insert({a.interp(f, with_x), a.interp(f, with_y)});
                    }
                }
            }
        }
        cur = std::move(next);
    }
}

bool CModelReport::is_cmodel() const {
    for (const auto& d : rule_cdepths)
        if (!d) return false;
    return true;
}

int CModelReport::trs_cdepth() const {
    int m = 0;
    for (const auto& d : rule_cdepths)
        if (d) m = std::max(m, *d);
    return m;
}

CModelReport check_cmodel(const FiniteAlgebra& a, const Trs& r) {
    CModelReport rep;
    rep.rule_cdepths.reserve(r.rules().size());
    for (const auto& rule : r.rules())
        rep.rule_cdepths.push_back(rule_cdepth(a, rule));
    return rep;
}

FiniteAlgebra extend_with_top(const FiniteAlgebra& a) {
    if (a.sig().contains(top_symbol))
        throw SymbolClash("signature already contains '" + std::string(top_symbol) + "'");
    Signature sig = a.sig();
    sig.add(top_symbol, 1);
    FiniteAlgebra out(sig, a.element_names());
    for (const auto& [f, ar] : a.sig().symbols()) {
        std::size_t entries = 1;
        for (int i = 0; i < ar; ++i) entries *= a.size();
        for (std::size_t idx = 0; idx < entries; ++idx)
            out.set_interp(f, out.tuple_at(ar, idx), a.table(f)[idx]);
    }
    for (Elem e = 0; e < a.size(); ++e)
        out.set_interp(top_symbol, {e}, 0);
    return out;
}

}  // namespace ocs
