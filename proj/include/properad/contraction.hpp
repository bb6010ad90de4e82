#pragma once

#include <memory>
#include <string>
#include <vector>

#include "properad/multimap.hpp"

namespace properad {

/// Linear (1,1)-map between possibly different modules; contraction data only.
struct Lin {
    const GradedModule* src = nullptr;
    const GradedModule* dst = nullptr;
    int degree = 0;
    std::map<int, std::map<int, Rational>> cols;  // src index -> dst index -> coeff

    void add(int src_i, int dst_i, const Rational& c) {
        if (dst->degree(dst_i) - src->degree(src_i) != degree)
            throw std::invalid_argument("linear map entry violates its degree");
        auto& cell = cols[src_i][dst_i];
        cell += c;
        if (sgn(cell) == 0) cols[src_i].erase(dst_i);
    }

    std::map<int, Rational> apply(int src_i) const {
        auto it = cols.find(src_i);
        return it == cols.end() ? std::map<int, Rational>{} : it->second;
    }

    bool is_zero() const {
        for (const auto& [i, col] : cols)
            for (const auto& [j, c] : col)
                if (sgn(c) != 0) return false;
        return true;
    }
};

Lin lin_identity(const GradedModule& mod);
Lin lin_compose(const Lin& after, const Lin& before);
Lin lin_sub(const Lin& a, const Lin& b);

MultiMap<Rational> lin_to_multimap(const Lin& endo);

/// Deformation retract with side conditions: p i = id, i p - id = d h + h d,
/// h i = 0, p h = 0, h h = 0. Modules are shared so the maps' module
/// pointers stay valid across copies.
struct Contraction {
    std::shared_ptr<GradedModule> big;    // (A, d)
    std::shared_ptr<GradedModule> small;  // (H, d_H)
    Lin d_big;                            // degree -1 endomorphism of A
    Lin d_small;                          // degree -1 endomorphism of H
    Lin incl;                             // i : H -> A, degree 0
    Lin proj;                             // p : A -> H, degree 0
    Lin h;                                // A -> A, degree +1
};

struct ConditionReport {
    std::string name;
    bool ok;
    std::string witness;  // first failing basis element, empty when ok
};

std::vector<ConditionReport> validate_contraction(const Contraction& c);
bool all_ok(const std::vector<ConditionReport>& checks);

/// The symmetric homotopy h_n = sum_k (id^(k-1) (x) h (x) (ip)^(n-k)),
/// averaged over the symmetric group; degree +1 endomorphism of A^(sym n).
MultiMap<Rational> symmetric_homotopy(const Contraction& c, int n);

/// Slot-wise n-th power of a (1,1)-endomorphism on the symmetric power.
MultiMap<Rational> tensor_power_map(const MultiMap<Rational>& f, int n);

/// A = span{x deg 1, y deg 0}, d x = y, h y = -x, contracting onto 0.
Contraction contraction_two_dim();

/// Same acyclic pair plus a surviving degree-0 generator z, contracting onto span{z}.
Contraction contraction_three_dim();

}  // namespace properad
