#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "brc/rational.hpp"

namespace brc {

struct Variable {
    std::string name;
    int size = 0;
};

// Unordered set of variable names. Stored sorted for cheap subset/overlap checks.
class VarSet {
public:
    VarSet() = default;
    VarSet(std::initializer_list<std::string> names) : names_(names) { normalize(); }
    explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) { normalize(); }

    const std::vector<std::string>& names() const { return names_; }
    bool empty() const { return names_.empty(); }
    std::size_t size() const { return names_.size(); }
    bool contains(const std::string& n) const {
        return std::binary_search(names_.begin(), names_.end(), n);
    }
    bool disjoint_from(const VarSet& other) const {
        for (const auto& n : names_)
            if (other.contains(n)) return false;
        return true;
    }
    VarSet unite(const VarSet& other) const {
        std::vector<std::string> all = names_;
        all.insert(all.end(), other.names_.begin(), other.names_.end());
        return VarSet(std::move(all));
    }

private:
    void normalize() {
        std::sort(names_.begin(), names_.end());
        auto last = std::unique(names_.begin(), names_.end());
        names_.erase(last, names_.end());
    }
    std::vector<std::string> names_;
};

inline double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

namespace detail {
inline double prob_as_double(double p) { return p; }
inline double prob_as_double(const Rational& p) { return to_double(p); }
}  // namespace detail

// Joint probability table over a named finite variable set. Row-major with the
// last-listed variable varying fastest. T is Rational (exact) or double.
template <typename T>
class BasicPmf {
public:
    BasicPmf() = default;
    BasicPmf(std::vector<Variable> vars, std::vector<T> probs)
        : vars_(std::move(vars)), probs_(std::move(probs)) {
        std::size_t total = 1;
        for (const auto& v : vars_) {
            if (v.size < 1) throw std::invalid_argument("pmf: alphabet size must be >= 1");
            total *= static_cast<std::size_t>(v.size);
        }
        if (probs_.size() != total)
            throw std::invalid_argument("pmf: table size does not match alphabet product");
        T sum{0};
        for (const auto& p : probs_) {
            if (p < T{0}) throw std::invalid_argument("pmf: negative probability");
            sum += p;
        }
        if constexpr (std::is_same_v<T, Rational>) {
            if (sum != T{1}) throw std::invalid_argument("pmf: probabilities must sum to 1");
        } else {
            if (std::abs(sum - 1.0) > 1e-12)
                throw std::invalid_argument("pmf: probabilities must sum to 1 within 1e-12");
        }
    }

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<T>& probs() const { return probs_; }
    std::size_t table_size() const { return probs_.size(); }

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return static_cast<int>(i);
        throw std::invalid_argument("pmf: unknown variable '" + name + "'");
    }
    bool has_var(const std::string& name) const {
        for (const auto& v : vars_)
            if (v.name == name) return true;
        return false;
    }
    VarSet all_vars() const {
        std::vector<std::string> names;
        for (const auto& v : vars_) names.push_back(v.name);
        return VarSet(std::move(names));
    }

    // Outcome of flat index i for variable slot k.
    void decode(std::size_t idx, std::vector<int>& out) const {
        out.resize(vars_.size());
        for (std::size_t k = vars_.size(); k-- > 0;) {
            out[k] = static_cast<int>(idx % vars_[k].size);
            idx /= vars_[k].size;
        }
    }
    std::size_t encode(const std::vector<int>& outcome) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < vars_.size(); ++k)
            idx = idx * vars_[k].size + static_cast<std::size_t>(outcome[k]);
        return idx;
    }

    BasicPmf marginalize(const VarSet& keep) const {
        std::vector<int> slots;
        std::vector<Variable> kept;
        for (const auto& n : keep.names()) {
            int k = var_index(n);
            slots.push_back(k);
            kept.push_back(vars_[k]);
        }
        std::size_t total = 1;
        for (const auto& v : kept) total *= static_cast<std::size_t>(v.size);
        std::vector<T> table(total, T{0});
        std::vector<int> outcome;
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            decode(i, outcome);
            std::size_t j = 0;
            for (std::size_t k = 0; k < slots.size(); ++k)
                j = j * kept[k].size + static_cast<std::size_t>(outcome[slots[k]]);
            table[j] += probs_[i];
        }
        BasicPmf out;
        out.vars_ = std::move(kept);
        out.probs_ = std::move(table);
        return out;
    }

    // H(A) in bits, 0 log 0 = 0.
    double entropy(const VarSet& a) const {
        if (vars_.empty()) throw std::invalid_argument("entropy: empty distribution");
        if (a.empty()) return 0.0;
        BasicPmf m = marginalize(a);
        double h = 0.0;
        for (const auto& p : m.probs_) h -= xlog2x(detail::prob_as_double(p));
        return h;
    }

    // I(A;B|C) in bits; tiny negative round-off is clamped to zero.
    double mutual_information(const VarSet& a, const VarSet& b, const VarSet& c = {}) const {
        require_disjoint(a, b, c);
        double v = entropy(a.unite(c)) + entropy(b.unite(c)) - entropy(a.unite(b).unite(c)) -
                   entropy(c);
        if (v < 0.0) {
            if (v < -1e-9) throw std::logic_error("mutual_information: large negative value");
            v = 0.0;
        }
        return v;
    }

    // Exact conditional independence A ⟂ B | C (rational tables only):
    // P(a,b,c) P(c) == P(a,c) P(b,c) for every cell.
    bool independent_exact(const VarSet& a, const VarSet& b, const VarSet& c = {}) const
        requires std::is_same_v<T, Rational>
    {
        require_disjoint(a, b, c);
        BasicPmf abc = marginalize(a.unite(b).unite(c));
        BasicPmf ac = abc.marginalize(a.unite(c));
        BasicPmf bc = abc.marginalize(b.unite(c));
        BasicPmf pc = abc.marginalize(c);
        std::vector<int> outcome;
        std::vector<int> sub;
        for (std::size_t i = 0; i < abc.probs_.size(); ++i) {
            abc.decode(i, outcome);
            Rational lhs = abc.probs_[i] * pc.project_prob(abc, outcome, sub);
            Rational rhs = ac.project_prob(abc, outcome, sub) * bc.project_prob(abc, outcome, sub);
            if (lhs != rhs) return false;
        }
        return true;
    }

    // Markov chain A - B - C, i.e. I(A;C|B) small. In rational mode an exact
    // factorization reports a violation of exactly zero.
    double markov_violation(const VarSet& a, const VarSet& b, const VarSet& c) const {
        if constexpr (std::is_same_v<T, Rational>) {
            if (independent_exact(a, c, b)) return 0.0;
        }
        return mutual_information(a, c, b);
    }
    bool is_markov_chain(const VarSet& a, const VarSet& b, const VarSet& c, double tol) const {
        return markov_violation(a, b, c) <= tol;
    }

    BasicPmf<double> to_double() const {
        std::vector<double> table(probs_.size());
        for (std::size_t i = 0; i < probs_.size(); ++i)
            table[i] = detail::prob_as_double(probs_[i]);
        BasicPmf<double> out;
        out.vars_ = vars_;
        out.probs_ = std::move(table);
        return out;
    }

    template <typename U>
    friend class BasicPmf;

private:
    static void require_disjoint(const VarSet& a, const VarSet& b, const VarSet& c) {
        if (!a.disjoint_from(b) || !a.disjoint_from(c) || !b.disjoint_from(c))
            throw std::invalid_argument("variable sets must be pairwise disjoint");
    }

    // Probability of `outcome` (an outcome of `parent`) under this marginal of parent.
    T project_prob(const BasicPmf& parent, const std::vector<int>& outcome,
                   std::vector<int>& scratch) const {
        scratch.resize(vars_.size());
        for (std::size_t k = 0; k < vars_.size(); ++k)
            scratch[k] = outcome[parent.var_index(vars_[k].name)];
        return probs_[encode(scratch)];
    }

    std::vector<Variable> vars_;
    std::vector<T> probs_;
};

using Pmf = BasicPmf<Rational>;
using PmfD = BasicPmf<double>;

}  // namespace brc
