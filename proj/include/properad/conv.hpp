#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "properad/combinatorics.hpp"
#include "properad/multimap.hpp"

namespace properad {

struct ConvKey {
    int m, n, g;
    auto operator<=>(const ConvKey&) const = default;
};

inline int key_weight(const ConvKey& k) { return k.m + k.n + 2 * k.g - 2; }

/// Weight-truncated family {(m,n,g) -> MultiMap} in the genus-weighted
/// convolution algebra; gauge elements additionally carry the formal unit.
template <class K>
class ConvElement {
  public:
    ConvElement() = default;
    ConvElement(const GradedModule* mod, int weight_bound, int degree, K zero_like = K())
        : mod_(mod), wbound_(weight_bound), degree_(degree), zero_(std::move(zero_like)) {}

    const GradedModule* module() const { return mod_; }
    int weight_bound() const { return wbound_; }
    int degree() const { return degree_; }
    const K& zero_like() const { return zero_; }

    bool unit() const { return unit_; }
    void set_unit(bool u) {
        if (u && degree_ != 0) throw std::invalid_argument("the unit lives in degree 0");
        unit_ = u;
    }

    bool curved() const { return curved_; }
    void set_curved(bool c) { curved_ = c; }

    const std::map<ConvKey, MultiMap<K>>& components() const { return comps_; }

    const MultiMap<K>* component(int m, int n, int g) const {
        auto it = comps_.find(ConvKey{m, n, g});
        return it == comps_.end() ? nullptr : &it->second;
    }

    /// Accumulates a component; arities and degree must match, weights above
    /// the bound are dropped (truncation).
    void add_component(int m, int n, int g, const MultiMap<K>& mm) {
        if (m < 1 || n < 0 || g < 0) throw std::invalid_argument("bad component key");
        if (mm.inputs() != n || mm.outputs() != m)
            throw std::invalid_argument("component arity mismatch");
        if (mm.degree() != degree_)
            throw std::invalid_argument("component degree differs from the element's");
        if (key_weight({m, n, g}) > wbound_) return;
        if (mm.is_zero()) return;
        auto [it, fresh] = comps_.try_emplace(ConvKey{m, n, g}, mm);
        if (!fresh) {
            it->second += mm;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    ConvElement& operator+=(const ConvElement& o) {
        check(o);
        if (unit_ && o.unit_) throw std::invalid_argument("cannot add two unital elements");
        unit_ = unit_ || o.unit_;
        for (const auto& [k, mm] : o.comps_) add_component(k.m, k.n, k.g, mm);
        return *this;
    }
    ConvElement& operator-=(const ConvElement& o) {
        check(o);
        if (o.unit_) throw std::invalid_argument("cannot subtract a unital element");
        for (const auto& [k, mm] : o.comps_) add_component(k.m, k.n, k.g, -mm);
        return *this;
    }
    friend ConvElement operator+(ConvElement a, const ConvElement& b) { return a += b; }
    friend ConvElement operator-(ConvElement a, const ConvElement& b) { return a -= b; }

    void scale(const Rational& q) {
        if (unit_) throw std::invalid_argument("cannot scale a unital element");
        for (auto& [k, mm] : comps_) mm.scale(q);
        prune();
    }

    void prune() {
        for (auto it = comps_.begin(); it != comps_.end();) {
            it->second.prune();
            it = it->second.is_zero() ? comps_.erase(it) : std::next(it);
        }
    }

    bool is_zero() const {
        if (unit_) return false;
        for (const auto& [k, mm] : comps_)
            if (!mm.is_zero()) return false;
        return true;
    }

    /// Copy truncated to a smaller weight bound.
    ConvElement truncated(int new_bound) const {
        ConvElement out(mod_, new_bound, degree_, zero_);
        out.unit_ = unit_;
        out.curved_ = curved_;
        for (const auto& [k, mm] : comps_) out.add_component(k.m, k.n, k.g, mm);
        return out;
    }

    /// Copy without the arity-(m,0) components.
    ConvElement without_kernel_components() const {
        ConvElement out(mod_, wbound_, degree_, zero_);
        out.unit_ = unit_;
        for (const auto& [k, mm] : comps_)
            if (k.n > 0) out.add_component(k.m, k.n, k.g, mm);
        return out;
    }

    friend bool operator==(const ConvElement& a, const ConvElement& b) {
        if (a.unit_ != b.unit_ || a.degree_ != b.degree_) return false;
        ConvElement d = a;
        d.unit_ = false;
        ConvElement bb = b;
        bb.unit_ = false;
        d -= bb;
        return d.is_zero();
    }
    friend bool operator!=(const ConvElement& a, const ConvElement& b) { return !(a == b); }

  private:
    void check(const ConvElement& o) const {
        if (wbound_ != o.wbound_ || degree_ != o.degree_ ||
            !(mod_ == o.mod_ || (mod_ && o.mod_ && *mod_ == *o.mod_)))
            throw std::invalid_argument("convolution element shape mismatch");
    }

    const GradedModule* mod_ = nullptr;
    int wbound_ = 0;
    int degree_ = 0;
    bool unit_ = false;
    bool curved_ = false;
    K zero_{};
    std::map<ConvKey, MultiMap<K>> comps_;
};

/// f2 * f1: one-edge-set composites of a component of f1 above a component of
/// f2, with label-subset multiplicities. The (1,1,0) components are inert
/// (the reduced decomposition has no identity vertex); the formal unit acts
/// as a strict two-sided unit.
template <class K>
ConvElement<K> star(const ConvElement<K>& f2, const ConvElement<K>& f1) {
    ConvElement<K> out(f1.module(), std::min(f1.weight_bound(), f2.weight_bound()),
                       f1.degree() + f2.degree(), f1.zero_like());
    out.set_unit(f1.unit() && f2.unit());
    if (f2.unit())
        for (const auto& [k, mm] : f1.components()) out.add_component(k.m, k.n, k.g, mm);
    if (f1.unit())
        for (const auto& [k, mm] : f2.components()) out.add_component(k.m, k.n, k.g, mm);
    const ConvKey trivial{1, 1, 0};
    for (const auto& [k1, top] : f1.components()) {
        if (k1 == trivial) continue;
        for (const auto& [k2, bottom] : f2.components()) {
            if (k2 == trivial) continue;
            if (key_weight(k1) + key_weight(k2) > out.weight_bound()) continue;
            int emax = std::min(k1.m, k2.n);
            for (int e = 1; e <= emax; ++e) {
                ConvKey kr{k1.m + k2.m - e, k1.n + k2.n - e, k1.g + k2.g + e - 1};
                std::vector<int> iface(static_cast<size_t>(e));
                for (int i = 0; i < e; ++i) iface[static_cast<size_t>(i)] = i;
                MultiMap<K> comp = compose_subset(top, iface, bottom, iface);
                Integer mult = binomial(kr.n, k1.n) * binomial(kr.m, k2.m);
                comp.scale(Rational(mult));
                out.add_component(kr.m, kr.n, kr.g, comp);
            }
        }
    }
    out.prune();
    return out;
}

/// Component-wise differential d.f -+ f.d (the unit is killed).
template <class K>
ConvElement<K> differential(const ConvElement<K>& f, const MultiMap<K>& d) {
    ConvElement<K> out(f.module(), f.weight_bound(), f.degree() - 1, f.zero_like());
    for (const auto& [k, mm] : f.components())
        out.add_component(k.m, k.n, k.g, map_differential(mm, d));
    out.prune();
    return out;
}

namespace detail {

template <class K>
struct LevelClass {
    ConvKey key;
    const MultiMap<K>* map;
    int e;      // edges consumed by each vertex of the class
    int count;  // number of vertices of the class
};

/// Composite of one y component grafted on a level of vertices below it
/// (vertices consume y's outputs; their free inputs join the result inputs).
template <class K>
MultiMap<K> composite_below(const MultiMap<K>& y,
                            const std::vector<std::pair<const MultiMap<K>*, int>>& verts,
                            int idle) {
    const GradedModule& mod = *y.module();
    int n_res = y.inputs(), m_res = idle, deg = y.degree();
    for (const auto& [v, e] : verts) {
        n_res += v->inputs() - e;
        m_res += v->outputs();
        deg += v->degree();
    }
    MultiMap<K> result(&mod, n_res, m_res, deg, y.zero_like());
    int total_free = 0;
    for (const auto& [v, e] : verts) total_free += v->inputs() - e;
    for (const auto& u : symmetric_basis(mod, n_res)) {
        auto terms = lift_word(mod, u, y.zero_like());
        terms = apply_at(y, terms, 0);
        int done = 0;
        int y_rest = y.outputs();
        int free_rest = total_free;
        // layout: [finished outputs | unconsumed y outputs | free-input blocks]
        for (const auto& [v, e] : verts) {
            if (terms.empty()) break;
            int fi = v->inputs() - e;
            int len = done + y_rest + free_rest;
            std::vector<int> perm;
            perm.reserve(static_cast<size_t>(len));
            for (int j = 0; j < done + e; ++j) perm.push_back(j);
            for (int j = 0; j < fi; ++j) perm.push_back(done + y_rest + j);
            for (int j = done + e; j < done + y_rest; ++j) perm.push_back(j);
            for (int j = done + y_rest + fi; j < len; ++j) perm.push_back(j);
            terms = tensor_reorder(mod, terms, perm, y.zero_like());
            terms = apply_at(*v, terms, done);
            done += v->outputs();
            y_rest -= e;
            free_rest -= fi;
        }
        auto classes = tensor_project(mod, terms, y.zero_like());
        for (const auto& [w, c] : classes) result.add_term(u, w, c);
    }
    result.prune();
    return result;
}

/// Composite of one y component under a level of vertices above it
/// (vertices feed y's inputs; their free outputs join the result outputs).
template <class K>
MultiMap<K> composite_above(const MultiMap<K>& y,
                            const std::vector<std::pair<const MultiMap<K>*, int>>& verts,
                            int idle) {
    const GradedModule& mod = *y.module();
    int n_res = idle, m_res = y.outputs(), deg = y.degree();
    for (const auto& [v, e] : verts) {
        n_res += v->inputs();
        m_res += v->outputs() - e;
        deg += v->degree();
    }
    MultiMap<K> result(&mod, n_res, m_res, deg, y.zero_like());
    for (const auto& u : symmetric_basis(mod, n_res)) {
        auto terms = lift_word(mod, u, y.zero_like());
        int pos = 0;
        for (const auto& [v, e] : verts) {
            terms = apply_at(*v, terms, pos);
            pos += v->outputs();
            if (terms.empty()) break;
        }
        if (terms.empty()) continue;
        // layout now: [O_1 | O_2 | ... | O_r | idle inputs]
        int total_out = 0;
        for (const auto& [v, e] : verts) total_out += v->outputs();
        std::vector<int> perm;
        perm.reserve(static_cast<size_t>(total_out + idle));
        int off = 0;
        for (const auto& [v, e] : verts) {
            for (int j = 0; j < e; ++j) perm.push_back(off + j);
            off += v->outputs();
        }
        for (int j = 0; j < idle; ++j) perm.push_back(total_out + j);
        off = 0;
        for (const auto& [v, e] : verts) {
            for (int j = e; j < v->outputs(); ++j) perm.push_back(off + j);
            off += v->outputs();
        }
        terms = tensor_reorder(mod, terms, perm, y.zero_like());
        terms = apply_at(y, terms, 0);
        auto classes = tensor_project(mod, terms, y.zero_like());
        for (const auto& [w, c] : classes) result.add_term(u, w, c);
    }
    result.prune();
    return result;
}

/// Number of distinct graftings realizing a level spec, as ordered label
/// multinomials divided by count! per vertex class. The division also covers
/// label-free classes, where it realizes the symmetric identification factors.
template <class K>
Rational level_multiplicity(bool below, const ConvKey& ky,
                            const std::vector<LevelClass<K>>& classes, int idle,
                            const ConvKey& kr) {
    std::vector<int> out_parts, in_parts;
    if (below) {
        in_parts.push_back(ky.n);
        for (const auto& cl : classes)
            for (int c = 0; c < cl.count; ++c) {
                out_parts.push_back(cl.key.m);
                in_parts.push_back(cl.key.n - cl.e);
            }
        for (int j = 0; j < idle; ++j) out_parts.push_back(1);
    } else {
        out_parts.push_back(ky.m);
        for (const auto& cl : classes)
            for (int c = 0; c < cl.count; ++c) {
                out_parts.push_back(cl.key.m - cl.e);
                in_parts.push_back(cl.key.n);
            }
        for (int j = 0; j < idle; ++j) in_parts.push_back(1);
    }
    Rational mult(multinomial(kr.m, out_parts) * multinomial(kr.n, in_parts));
    for (const auto& cl : classes)
        mult /= Rational(factorial(static_cast<unsigned>(cl.count)));
    mult /= Rational(factorial(static_cast<unsigned>(idle)));
    mult.canonicalize();
    return mult;
}

/// Enumerates level specs (class multisets) and feeds each to emit.
template <class K>
void enumerate_levels(const ConvElement<K>& X, int edge_budget, int weight_budget,
                      bool below,
                      const std::function<void(const std::vector<LevelClass<K>>&, int)>& emit) {
    std::vector<std::pair<ConvKey, const MultiMap<K>*>> cands;
    for (const auto& [k, mm] : X.components()) cands.emplace_back(k, &mm);
    std::vector<LevelClass<K>> chosen;
    // each further vertex eats >= 1 edge and has weight >= -1, so the weight
    // can drop at most by the remaining edge budget
    std::function<void(size_t, int, int)> rec = [&](size_t idx, int edges_used, int weight_used) {
        if (weight_used - (edge_budget - edges_used) > weight_budget) return;
        if (idx == cands.size()) {
            if (weight_used <= weight_budget)
                emit(chosen, edge_budget - edges_used);  // identities fill the rest
            return;
        }
        const auto& [key, mm] = cands[idx];
        int slots = below ? key.n : key.m;
        rec(idx + 1, edges_used, weight_used);
        for (int e = 1; e <= slots; ++e) {
            for (int count = 1; edges_used + count * e <= edge_budget; ++count) {
                chosen.push_back(LevelClass<K>{key, mm, e, count});
                rec(idx + 1, edges_used + count * e, weight_used + count * key_weight(key));
                chosen.pop_back();
            }
        }
    };
    rec(0, 0, 0);
}

template <class K>
ConvElement<K> level_action(const ConvElement<K>& X, const ConvElement<K>& y, bool below) {
    if (!X.unit() || X.degree() != 0)
        throw std::invalid_argument("level actions need a unital degree-0 gauge element");
    if (y.unit()) throw std::invalid_argument("level actions act on non-unital elements");
    ConvElement<K> out(y.module(), std::min(y.weight_bound(), X.weight_bound()), y.degree(),
                       y.zero_like());
    for (const auto& [ky, mmy] : y.components()) {
        int edge_budget = below ? ky.m : ky.n;
        int weight_budget = out.weight_bound() - key_weight(ky);
        enumerate_levels<K>(
            X, edge_budget, weight_budget, below,
            [&](const std::vector<detail::LevelClass<K>>& classes, int idle) {
                ConvKey kr = ky;
                for (const auto& cl : classes) {
                    kr.m += cl.count * (cl.key.m - cl.e);
                    kr.n += cl.count * (cl.key.n - cl.e);
                    kr.g += cl.count * cl.key.g + cl.count * (cl.e - 1);
                }
                if (key_weight(kr) > out.weight_bound()) return;
                Rational mult = level_multiplicity<K>(below, ky, classes, idle, kr);
                if (sgn(mult) == 0) return;
                std::vector<std::pair<const MultiMap<K>*, int>> verts;
                for (const auto& cl : classes)
                    for (int c = 0; c < cl.count; ++c) verts.emplace_back(cl.map, cl.e);
                MultiMap<K> comp = below ? composite_below(mmy, verts, idle)
                                         : composite_above(mmy, verts, idle);
                comp.scale(mult);
                out.add_component(kr.m, kr.n, kr.g, comp);
            });
    }
    out.prune();
    return out;
}

}  // namespace detail

/// X |> y: one component of y on top, a level of X components (identities
/// allowed) grafted on all of its outputs.
template <class K>
ConvElement<K> level_below(const ConvElement<K>& X, const ConvElement<K>& y) {
    return detail::level_action(X, y, /*below=*/true);
}

/// y <| X: mirror action, the level of X components feeds all inputs of y.
template <class K>
ConvElement<K> level_above(const ConvElement<K>& y, const ConvElement<K>& X) {
    return detail::level_action(X, y, /*below=*/false);
}

/// Maurer-Cartan residual del(alpha) + alpha * alpha.
template <class K>
ConvElement<K> mc_residual(const ConvElement<K>& alpha, const MultiMap<K>& d) {
    if (alpha.degree() != -1)
        throw std::invalid_argument("Maurer-Cartan elements have degree -1");
    if (alpha.unit()) throw std::invalid_argument("Maurer-Cartan elements carry no unit");
    ConvElement<K> out = differential(alpha, d);
    out += star(alpha, alpha);
    out.prune();
    return out;
}

/// Residual of the infinity-isotopy equation for 1+f between alpha and beta:
/// beta <| (1+f) - (1+f) |> alpha + del(1+f); zero iff 1+f is an isotopy.
template <class K>
ConvElement<K> check_infinity_isotopy(const ConvElement<K>& alpha, const ConvElement<K>& beta,
                                      const ConvElement<K>& f, const MultiMap<K>& d) {
    if (alpha.degree() != -1 || beta.degree() != -1)
        throw std::invalid_argument("structures must have degree -1");
    if (f.degree() != 0 || f.unit())
        throw std::invalid_argument("the isotopy part must be degree 0 without unit");
    ConvElement<K> X = f;
    X.set_unit(true);
    ConvElement<K> out = level_above(beta, X);
    out -= level_below(X, alpha);
    out += differential(f, d);
    out.prune();
    return out;
}

}  // namespace properad
