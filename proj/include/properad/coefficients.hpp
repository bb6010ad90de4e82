#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "properad/combinatorics.hpp"
#include "properad/rational.hpp"

namespace properad {

/// Memoized grafting counts; shared by everything that walks towers.
class TCache {
  public:
    const Integer& get(int m, int i, int g, int p);

  private:
    std::map<std::array<int, 4>, Integer> memo_;
};

struct CoeffKey {
    int m, n, g;
    auto operator<=>(const CoeffKey&) const = default;
};

inline int weight_of(int m, int n, int g) { return m + n + 2 * g - 2; }

/// Exact-rational coefficient family indexed by (outputs m, inputs n, genus g).
struct CoeffTable {
    enum class Kind { A, C };

    Kind kind = Kind::A;
    int weight_bound = 0;
    std::string index_set_convention;  // "n" for A, "seed:g1=1,|I1|>=1" for C
    std::map<CoeffKey, Rational> entries;

    bool has(int m, int n, int g) const { return entries.count({m, n, g}) != 0; }
    const Rational& at(int m, int n, int g) const;
    void set(int m, int n, int g, const Rational& v);
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Solves the universal A recursion by induction on the weight m+n+2g-2,
/// seeding (1,0,0) -> 1. Throws if a leading coefficient is not 1.
CoeffTable a_recursive(int weight_bound, TCache& tc);

/// Left-hand side of the A recursion at (m,n,g); zero on a consistent table.
Rational a_recursion_residual(const CoeffTable& a, int m, int n, int g, TCache& tc);

/// Signed tower sum for A with an explicit index-set size (the block
/// partitions run over a set of that many labels). Requires m+n+2g >= 2.
Rational a_closed(int m, int n, int g, int index_set_size, TCache& tc);

/// Index-set size offset (relative to n) selected by matching a_closed to the
/// recursion seeds; returns 0, i.e. the n-element convention.
int fix_index_set_offset(TCache& tc);

/// Solves the simplified C recursion (right-hand side (-1)^{m+n+1} for g = 1,
/// zero for g >= 2) over m,n,g >= 1 by weight induction.
CoeffTable c_recursive(int weight_bound, TCache& tc);

/// LHS - RHS of the simplified C recursion at (m,n,g); zero on a consistent table.
Rational c_recursion_residual(const CoeffTable& c, int m, int n, int g, TCache& tc);

/// Signed seeded tower sum for C (top level carries the g = 1 right-hand side
/// as the factor (-1)^{p_1+|I_1|+1}). Requires m,n,g >= 1.
Rational c_closed(int m, int n, int g, TCache& tc);

/// D(m,n,g) = sum binom(n,l) A^{g2}_{p,l} T(m, n-l+1, g-g2, p).
/// Throws std::out_of_range naming the key if the A table is too small.
Rational d_value(int m, int n, int g, const CoeffTable& a, TCache& tc);

/// Q(m,n,g) via the multinomial sum; defined for m,n,g >= 1.
Rational q_value(int m, int n, int g, const CoeffTable& a, TCache& tc);

/// Q(m,n,g) as sum_{n'} (-1)^{n'-1} binom(n,n') D(m, n-n', g-1).
Rational q_value_via_d(int m, int n, int g, const CoeffTable& a, TCache& tc);

/// Genus-0 closed form A^0_{m,l} = (-1)^{m+l-1} (m-1)! m^l.
Rational genus0_a(int m, int l);

/// Signed count of leveled decompositions: the brute-force route to A.
/// Every level is counted by direct enumeration (set partitions, input label
/// assignments, edge compositions, genus compositions), never by the closed
/// grafting formula. Aborts with BudgetExceeded past node_budget enumerated
/// configurations.
Rational leveled_graph_oracle_a(int m, int n, int g, std::int64_t node_budget);

}  // namespace properad
