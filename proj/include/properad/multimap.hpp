#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "properad/graded.hpp"
#include "properad/rational.hpp"

namespace properad {

/// Degree-homogeneous linear map A^(sym n) -> A^(sym m) stored sparsely on
/// canonical symmetric-basis words. The scalar ring K is Rational or TPoly.
template <class K>
class MultiMap {
  public:
    using Row = std::map<Word, K>;

    MultiMap() = default;
    MultiMap(const GradedModule* mod, int n_in, int n_out, int degree, K zero_like = K())
        : mod_(mod), n_in_(n_in), n_out_(n_out), degree_(degree), zero_(std::move(zero_like)) {
        if (n_in_ < 0 || n_out_ < 0) throw std::invalid_argument("negative arity");
    }

    const GradedModule* module() const { return mod_; }
    int inputs() const { return n_in_; }
    int outputs() const { return n_out_; }
    int degree() const { return degree_; }
    const K& zero_like() const { return zero_; }
    const std::map<Word, Row>& rows() const { return rows_; }

    /// Adds coeff * (in_seq -> out_seq); both sequences are canonicalized with
    /// Koszul signs and terms on vanishing classes are discarded.
    void add_term(const Word& in_seq, const Word& out_seq, const K& coeff) {
        if (static_cast<int>(in_seq.size()) != n_in_ ||
            static_cast<int>(out_seq.size()) != n_out_)
            throw std::invalid_argument("arity mismatch in add_term");
        if (ScalarOps<K>::zero(coeff)) return;
        auto ci = canonicalize(*mod_, in_seq);
        auto co = canonicalize(*mod_, out_seq);
        if (!ci || !co) return;
        if (word_degree(*mod_, co->first) - word_degree(*mod_, ci->first) != degree_)
            throw std::invalid_argument("entry violates degree homogeneity");
        K val = coeff * Rational(ci->second * co->second);
        auto& cell = rows_[ci->first].try_emplace(co->first, zero_).first->second;
        cell += val;
    }

    const Row* row(const Word& canonical_in) const {
        auto it = rows_.find(canonical_in);
        return it == rows_.end() ? nullptr : &it->second;
    }

    /// Image of a canonical basis word, as out-word -> coefficient.
    Row apply(const Word& canonical_in) const {
        const Row* r = row(canonical_in);
        return r ? *r : Row{};
    }

    MultiMap& operator+=(const MultiMap& o) {
        check_shape(o);
        for (const auto& [in, row] : o.rows_)
            for (const auto& [out, c] : row) {
                auto& cell = rows_[in].try_emplace(out, zero_).first->second;
                cell += c;
            }
        return *this;
    }
    MultiMap& operator-=(const MultiMap& o) {
        check_shape(o);
        for (const auto& [in, row] : o.rows_)
            for (const auto& [out, c] : row) {
                auto& cell = rows_[in].try_emplace(out, zero_).first->second;
                cell -= c;
            }
        return *this;
    }
    friend MultiMap operator+(MultiMap a, const MultiMap& b) { return a += b; }
    friend MultiMap operator-(MultiMap a, const MultiMap& b) { return a -= b; }
    MultiMap operator-() const {
        MultiMap r = *this;
        r.scale(Rational(-1));
        return r;
    }

    void scale(const Rational& q) {
        if (sgn(q) == 0) {
            rows_.clear();
            return;
        }
        for (auto& [in, row] : rows_)
            for (auto& [out, c] : row) c = c * q;
    }
    void scale_k(const K& k) {
        for (auto& [in, row] : rows_)
            for (auto& [out, c] : row) c = c * k;
        prune();
    }

    void prune() {
        for (auto it = rows_.begin(); it != rows_.end();) {
            for (auto jt = it->second.begin(); jt != it->second.end();)
                jt = ScalarOps<K>::zero(jt->second) ? it->second.erase(jt) : std::next(jt);
            it = it->second.empty() ? rows_.erase(it) : std::next(it);
        }
    }

    bool is_zero() const {
        for (const auto& [in, row] : rows_)
            for (const auto& [out, c] : row)
                if (!ScalarOps<K>::zero(c)) return false;
        return true;
    }

    friend bool operator==(const MultiMap& a, const MultiMap& b) {
        if (a.n_in_ != b.n_in_ || a.n_out_ != b.n_out_ || a.degree_ != b.degree_) return false;
        MultiMap d = a;
        d -= b;
        return d.is_zero();
    }
    friend bool operator!=(const MultiMap& a, const MultiMap& b) { return !(a == b); }

  private:
    void check_shape(const MultiMap& o) const {
        if (n_in_ != o.n_in_ || n_out_ != o.n_out_ || degree_ != o.degree_ ||
            !(mod_ == o.mod_ || (mod_ && o.mod_ && *mod_ == *o.mod_)))
            throw std::invalid_argument("map shape mismatch");
    }

    const GradedModule* mod_ = nullptr;
    int n_in_ = 0, n_out_ = 0, degree_ = 0;
    K zero_{};
    std::map<Word, Row> rows_;
};

/// Sparse sum of tensor sequences (slot order significant) used while
/// evaluating composites; projected back to canonical words at the end.
template <class K>
using TensorSum = std::map<Word, K>;

template <class K>
void tensor_add(TensorSum<K>& sum, const Word& seq, const K& c, const K& zero_like) {
    if (ScalarOps<K>::zero(c)) return;
    auto& cell = sum.try_emplace(seq, zero_like).first->second;
    cell += c;
}

/// Symmetrized tensor representative of a canonical word.
template <class K>
TensorSum<K> lift_word(const GradedModule& mod, const Word& w, const K& zero_like) {
    TensorSum<K> out;
    for (const auto& [seq, q] : symmetrize(mod, w))
        tensor_add(out, seq, ScalarOps<K>::from_rational(q, zero_like), zero_like);
    return out;
}

/// Applies f to the cnt = f.inputs() consecutive slots starting at pos,
/// substituting the symmetrized output block in place. Picks up the operator
/// sign (-1)^{|f| * deg(prefix)}.
template <class K>
TensorSum<K> apply_at(const MultiMap<K>& f, const TensorSum<K>& terms, int pos) {
    const GradedModule& mod = *f.module();
    const K& zero = f.zero_like();
    TensorSum<K> out;
    const int cnt = f.inputs();
    const bool odd_op = f.degree() % 2 != 0;
    for (const auto& [seq, coeff] : terms) {
        int prefix_deg = 0;
        for (int j = 0; j < pos; ++j) prefix_deg += mod.degree(seq[static_cast<size_t>(j)]);
        int op_sign = (odd_op && prefix_deg % 2 != 0) ? -1 : 1;
        Word sub(seq.begin() + pos, seq.begin() + pos + cnt);
        auto canon = canonicalize(mod, sub);
        if (!canon) continue;
        const auto* row = f.row(canon->first);
        if (!row) continue;
        Word prefix(seq.begin(), seq.begin() + pos);
        Word suffix(seq.begin() + pos + cnt, seq.end());
        for (const auto& [out_word, k] : *row) {
            for (const auto& [out_seq, qw] : symmetrize(mod, out_word)) {
                Word next = prefix;
                next.insert(next.end(), out_seq.begin(), out_seq.end());
                next.insert(next.end(), suffix.begin(), suffix.end());
                Rational factor = qw * Rational(op_sign * canon->second);
                K val = coeff * k;
                val = val * factor;
                tensor_add(out, next, val, zero);
            }
        }
    }
    return out;
}

/// Rearranges slots so target j holds source perm[j], with Koszul signs.
template <class K>
TensorSum<K> tensor_reorder(const GradedModule& mod, const TensorSum<K>& terms,
                            const std::vector<int>& perm, const K& zero_like) {
    TensorSum<K> out;
    for (const auto& [seq, coeff] : terms) {
        int sign = reorder_sign(mod, seq, perm);
        Word next(perm.size());
        for (size_t j = 0; j < perm.size(); ++j) next[j] = seq[static_cast<size_t>(perm[j])];
        K val = coeff * Rational(sign);
        tensor_add(out, next, val, zero_like);
    }
    return out;
}

/// Projects tensor sequences back onto canonical words.
template <class K>
typename MultiMap<K>::Row tensor_project(const GradedModule& mod, const TensorSum<K>& terms,
                                         const K& zero_like) {
    typename MultiMap<K>::Row out;
    for (const auto& [seq, coeff] : terms) {
        auto canon = canonicalize(mod, seq);
        if (!canon) continue;
        K val = coeff * Rational(canon->second);
        if (ScalarOps<K>::zero(val)) continue;
        auto& cell = out.try_emplace(canon->first, zero_like).first->second;
        cell += val;
    }
    for (auto it = out.begin(); it != out.end();)
        it = ScalarOps<K>::zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

/// Plugs outputs I of f1 into inputs J of f2 (f1 sits above f2). The result's
/// inputs are (inputs of f1, remaining inputs of f2) and its outputs
/// (remaining outputs of f1, outputs of f2), re-symmetrized.
template <class K>
MultiMap<K> compose_subset(const MultiMap<K>& f1, const std::vector<int>& I,
                           const MultiMap<K>& f2, const std::vector<int>& J) {
    if (I.size() != J.size() || I.empty())
        throw std::invalid_argument("compose_subset needs |I| = |J| >= 1");
    const int k = static_cast<int>(I.size());
    const int m1 = f1.outputs(), n1 = f1.inputs();
    const int m2 = f2.outputs(), n2 = f2.inputs();
    for (int i = 0; i + 1 < k; ++i)
        if (I[i] >= I[i + 1] || J[i] >= J[i + 1])
            throw std::invalid_argument("I and J must be strictly increasing");
    if (I.front() < 0 || I.back() >= m1 || J.front() < 0 || J.back() >= n2)
        throw std::invalid_argument("interface subset out of range");
    const GradedModule& mod = *f1.module();
    if (!(f1.module() == f2.module() || *f1.module() == *f2.module()))
        throw std::invalid_argument("compose_subset requires a common module");

    MultiMap<K> result(&mod, n1 + n2 - k, m1 + m2 - k, f1.degree() + f2.degree(),
                       f1.zero_like());
    // permutation taking [f1out | f2 free inputs] to [kept f1out | f2 input seq]
    std::vector<int> perm;
    perm.reserve(static_cast<size_t>(m1 + n2 - k));
    std::vector<bool> in_I(static_cast<size_t>(m1), false);
    for (int i : I) in_I[static_cast<size_t>(i)] = true;
    for (int i = 0; i < m1; ++i)
        if (!in_I[static_cast<size_t>(i)]) perm.push_back(i);
    {
        int free_src = m1;
        size_t i_idx = 0;
        std::vector<bool> in_J(static_cast<size_t>(n2), false);
        for (int j : J) in_J[static_cast<size_t>(j)] = true;
        for (int j = 0; j < n2; ++j) {
            if (in_J[static_cast<size_t>(j)])
                perm.push_back(I[i_idx++]);
            else
                perm.push_back(free_src++);
        }
    }

    for (const auto& u : symmetric_basis(mod, n1 + n2 - k)) {
        auto terms = lift_word(mod, u, f1.zero_like());
        terms = apply_at(f1, terms, 0);
        if (terms.empty()) continue;
        terms = tensor_reorder(mod, terms, perm, f1.zero_like());
        terms = apply_at(f2, terms, m1 - k);
        auto classes = tensor_project(mod, terms, f1.zero_like());
        for (const auto& [w, c] : classes) result.add_term(u, w, c);
    }
    result.prune();
    return result;
}

/// Full composition after . before (all outputs of `before` into all inputs
/// of `after`); plain chaining of the stored class maps.
template <class K>
MultiMap<K> compose_full(const MultiMap<K>& after, const MultiMap<K>& before) {
    if (before.outputs() != after.inputs())
        throw std::invalid_argument("compose_full arity mismatch");
    MultiMap<K> result(before.module(), before.inputs(), after.outputs(),
                       before.degree() + after.degree(), before.zero_like());
    for (const auto& [in, row] : before.rows()) {
        for (const auto& [mid, c1] : row) {
            const auto* r2 = after.row(mid);
            if (!r2) continue;
            for (const auto& [out, c2] : *r2) result.add_term(in, out, c1 * c2);
        }
    }
    result.prune();
    return result;
}

/// Input relabeling f . sigma with Koszul signs; on graded-symmetric storage
/// this is the identity transformation.
template <class K>
MultiMap<K> act_on_inputs(const MultiMap<K>& f, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != f.inputs())
        throw std::invalid_argument("permutation size mismatch");
    MultiMap<K> result(f.module(), f.inputs(), f.outputs(), f.degree(), f.zero_like());
    for (const auto& [in, row] : f.rows()) {
        Word permuted(in.size());
        for (size_t j = 0; j < in.size(); ++j)
            permuted[j] = in[static_cast<size_t>(sigma[j])];
        int sign = reorder_sign(*f.module(), in, sigma);
        for (const auto& [out, c] : row) result.add_term(permuted, out, c * Rational(sign));
    }
    result.prune();
    return result;
}

/// Output relabeling tau^{-1} . f, likewise the identity on symmetric storage.
template <class K>
MultiMap<K> act_on_outputs(const std::vector<int>& tau, const MultiMap<K>& f) {
    if (static_cast<int>(tau.size()) != f.outputs())
        throw std::invalid_argument("permutation size mismatch");
    MultiMap<K> result(f.module(), f.inputs(), f.outputs(), f.degree(), f.zero_like());
    for (const auto& [in, row] : f.rows()) {
        for (const auto& [out, c] : row) {
            Word permuted(out.size());
            for (size_t j = 0; j < out.size(); ++j)
                permuted[j] = out[static_cast<size_t>(tau[j])];
            int sign = reorder_sign(*f.module(), out, tau);
            result.add_term(in, permuted, c * Rational(sign));
        }
    }
    result.prune();
    return result;
}

/// Leibniz extension of a (1,1)-map to A^(sym n).
template <class K>
MultiMap<K> extend_differential(const MultiMap<K>& d, int n) {
    if (d.inputs() != 1 || d.outputs() != 1)
        throw std::invalid_argument("extend_differential needs a (1,1) map");
    const GradedModule& mod = *d.module();
    MultiMap<K> result(&mod, n, n, d.degree(), d.zero_like());
    const bool odd_op = d.degree() % 2 != 0;
    for (const auto& u : symmetric_basis(mod, n)) {
        int prefix_deg = 0;
        for (int j = 0; j < n; ++j) {
            int sign = (odd_op && prefix_deg % 2 != 0) ? -1 : 1;
            const auto* row = d.row(Word{u[static_cast<size_t>(j)]});
            if (row) {
                for (const auto& [y, c] : *row) {
                    Word seq = u;
                    seq[static_cast<size_t>(j)] = y[0];
                    result.add_term(u, seq, c * Rational(sign));
                }
            }
            prefix_deg += mod.degree(u[static_cast<size_t>(j)]);
        }
    }
    result.prune();
    return result;
}

/// d_out . f - (-1)^{|f|} f . d_in with both differentials Leibniz-extended.
template <class K>
MultiMap<K> map_differential(const MultiMap<K>& f, const MultiMap<K>& d) {
    MultiMap<K> dout = compose_full(extend_differential(d, f.outputs()), f);
    MultiMap<K> din = compose_full(f, extend_differential(d, f.inputs()));
    if (f.degree() % 2 != 0)
        dout += din;
    else
        dout -= din;
    return dout;
}

/// The identity (1,1)-map of a module.
template <class K>
MultiMap<K> identity_map(const GradedModule& mod, K zero_like = K()) {
    MultiMap<K> id(&mod, 1, 1, 0, zero_like);
    for (int i = 0; i < mod.dim(); ++i)
        id.add_term(Word{i}, Word{i}, ScalarOps<K>::from_rational(Rational(1), zero_like));
    return id;
}

/// Rational -> K coefficient embedding of a whole map.
template <class K>
MultiMap<K> convert_map(const MultiMap<Rational>& f, const K& zero_like) {
    MultiMap<K> out(f.module(), f.inputs(), f.outputs(), f.degree(), zero_like);
    for (const auto& [in, row] : f.rows())
        for (const auto& [w, c] : row)
            out.add_term(in, w, ScalarOps<K>::from_rational(c, zero_like));
    return out;
}

}  // namespace properad
