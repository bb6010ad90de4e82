#pragma once

#include <functional>
#include <vector>

#include "properad/rational.hpp"

namespace properad {

/// Binomial coefficient, 0 outside the Pascal triangle (k < 0 or k > n or n < 0).
Integer binomial(long n, long k);

/// n! / (c_1! ... c_r!) for a weak composition c of n.
Integer multinomial(long n, const std::vector<int>& parts);

/// Stirling number of the second kind: partitions of an m-set into k non-empty blocks.
Integer stirling2(int m, int k);

/// All partitions of {0..m-1} into k non-empty blocks, blocks ordered by least element.
std::vector<std::vector<std::vector<int>>> set_partitions(int m, int k);

/// All (k,l)-shuffles of [0..k+l) as permutation vectors sigma (slot i carries sigma[i]).
/// A shuffle keeps 0..k-1 and k..k+l-1 in relative order.
std::vector<std::vector<int>> shuffles(int k, int l);

/// Positive compositions of n into k parts, lexicographic.
std::vector<std::vector<int>> compositions(int n, int k);

/// Weak (non-negative) compositions of n into k parts, lexicographic.
std::vector<std::vector<int>> weak_compositions(int n, int k);

/// Count of ways to graft p symmetric outputs onto a level of one-dimensional
/// properad vertices producing m labelled outputs, i labelled inputs and a
/// genus increase of g. Closed form via Stirling numbers and binomials.
Integer grafting_count(int m, int i, int g, int p);

/// Same count by direct enumeration of set partitions, input assignments,
/// positive edge compositions and weak genus compositions. Test oracle.
Integer grafting_count_enumerated(int m, int i, int g, int p);

/// One summand index of the tower sums behind the universal coefficients:
/// an ordered partition of the input label set into k possibly-empty blocks,
/// a genus split, and an output-count chain (p[0] = 1, p[k] = m).
struct XiIndex {
    std::vector<std::vector<int>> blocks;  // k blocks over {0..n_set_size-1}
    std::vector<int> genus;                // g_1..g_k, sums to g
    std::vector<int> p;                    // p_0..p_k with p_0 = 1, p_k = m

    int k() const { return static_cast<int>(blocks.size()); }
    bool valid(int m, int n_set_size, int g) const;
};

/// All XiIndex values for the given key, deterministic order
/// (block assignment, then genus split, then p-chain, each lexicographic).
std::vector<XiIndex> enumerate_xi(int m, int n_set_size, int g, int k);

/// Size-collapsed tower iteration used by the closed coefficient formulas:
/// visits (block sizes c, genus split gs, chain p, multinomial weight) for every
/// tower shape; label choices are folded into the multinomial weight.
/// When seeded is true the towers are the ones of the C coefficients
/// (c[0] >= 1 and gs[0] == 1, no non-triviality constraint on level 1);
/// otherwise the A conventions apply (non-trivial every level).
void for_each_tower(int m, int n_set_size, int g, int k, bool seeded,
                    const std::function<void(const std::vector<int>& c,
                                             const std::vector<int>& gs,
                                             const std::vector<int>& p,
                                             const Integer& weight)>& fn);

}  // namespace properad
