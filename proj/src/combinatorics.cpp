#include "properad/combinatorics.hpp"

#include <stdexcept>

namespace properad {

Integer binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer multinomial(long n, const std::vector<int>& parts) {
    Integer r = 1;
    long rest = n;
    for (int c : parts) {
        if (c < 0) return 0;
        r *= binomial(rest, c);
        rest -= c;
    }
    if (rest != 0) return 0;
    return r;
}

Integer stirling2(int m, int k) {
    if (m < 0 || k < 0) return 0;
    if (m == 0 && k == 0) return 1;
    if (m == 0 || k == 0 || k > m) return 0;
    std::vector<Integer> row(static_cast<size_t>(k) + 1);
    row[0] = 1;  // S(0,0)
    for (int n = 1; n <= m; ++n) {
        for (int j = std::min(n, k); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

std::vector<std::vector<std::vector<int>>> set_partitions(int m, int k) {
    std::vector<std::vector<std::vector<int>>> out;
    if (m < 0 || k < 0 || k > m) return out;
    if (m == 0) {
        if (k == 0) out.push_back({});
        return out;
    }
    // assign[i] = block of element i; block labels first-seen so blocks are
    // ordered by least element.
    std::vector<int> assign(m, 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (m - i < k - used) return;
        if (i == m) {
            if (used != k) return;
            std::vector<std::vector<int>> blocks(k);
            for (int e = 0; e < m; ++e) blocks[assign[e]].push_back(e);
            out.push_back(std::move(blocks));
            return;
        }
        for (int b = 0; b <= used && b < k; ++b) {
            assign[i] = b;
            rec(i + 1, used + (b == used ? 1 : 0));
        }
    };
    rec(0, 0);
    return out;
}

std::vector<std::vector<int>> shuffles(int k, int l) {
    std::vector<std::vector<int>> out;
    if (k < 0 || l < 0) return out;
    int n = k + l;
    // choose the slot set carrying 0..k-1
    std::vector<int> pick(k);
    std::function<void(int, int)> rec = [&](int start, int chosen) {
        if (chosen == k) {
            std::vector<int> sigma(n);
            std::vector<bool> taken(n, false);
            for (int j = 0; j < k; ++j) {
                sigma[pick[j]] = j;
                taken[pick[j]] = true;
            }
            int next = k;
            for (int s = 0; s < n; ++s)
                if (!taken[s]) sigma[s] = next++;
            out.push_back(std::move(sigma));
            return;
        }
        for (int s = start; s <= n - (k - chosen); ++s) {
            pick[chosen] = s;
            rec(s + 1, chosen + 1);
        }
    };
    rec(0, 0);
    return out;
}

std::vector<std::vector<int>> compositions(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || n < k) return out;
    if (k == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(k);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k - 1) {
            if (left >= 1) {
                cur[pos] = left;
                out.push_back(cur);
            }
            return;
        }
        for (int v = 1; v <= left - (k - pos - 1); ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, n);
    return out;
}

std::vector<std::vector<int>> weak_compositions(int n, int k) {
    std::vector<std::vector<int>> out;
    if (n < 0 || k < 0) return out;
    if (k == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(k);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, n);
    return out;
}

Integer grafting_count(int m, int i, int g, int p) {
    if (m < 1 || i < 0 || g < 0 || p < 1) return 0;
    Integer total = 0;
    for (int k = std::max(1, p - g); k <= p; ++k) {
        Integer s = stirling2(m, k);
        if (s == 0) continue;
        Integer ki;
        mpz_ui_pow_ui(ki.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(i));
        total += s * ki * binomial(p - 1, k - 1) * binomial(g - p + 2 * k - 1, k - 1);
    }
    return total;
}

Integer grafting_count_enumerated(int m, int i, int g, int p) {
    if (m < 1 || i < 0 || g < 0 || p < 1) return 0;
    Integer total = 0;
    for (int k = std::max(1, p - g); k <= p; ++k) {
        auto parts = set_partitions(m, k);
        if (parts.empty()) continue;
        // input labels: every function {0..i-1} -> {0..k-1}
        long assignments = 0;
        std::vector<int> f(i, 0);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == i) {
                ++assignments;
                return;
            }
            for (int b = 0; b < k; ++b) {
                f[pos] = b;
                rec(pos + 1);
            }
        };
        rec(0);
        auto edges = compositions(p, k);
        auto genera = weak_compositions(g - p + k, k);
        total += Integer(static_cast<long>(parts.size())) * assignments *
                 static_cast<long>(edges.size()) * static_cast<long>(genera.size());
    }
    return total;
}

bool XiIndex::valid(int m, int n_set_size, int g) const {
    int kk = k();
    if (kk < 1) return false;
    if (static_cast<int>(genus.size()) != kk) return false;
    if (static_cast<int>(p.size()) != kk + 1) return false;
    if (p.front() != 1 || p.back() != m) return false;
    std::vector<bool> seen(n_set_size, false);
    int covered = 0;
    for (const auto& b : blocks)
        for (int e : b) {
            if (e < 0 || e >= n_set_size || seen[e]) return false;
            seen[e] = true;
            ++covered;
        }
    if (covered != n_set_size) return false;
    int gsum = 0;
    for (int j = 1; j <= kk; ++j) {
        if (genus[j - 1] < 0 || p[j] < 1) return false;
        gsum += genus[j - 1];
        // non-trivial level
        if (p[j] - p[j - 1] + static_cast<int>(blocks[j - 1].size()) + 2 * genus[j - 1] < 1)
            return false;
        // chain feasibility 1 <= p_1 <= p_2+g_2 <= ... <= m+g_2+...+g_k
        if (j >= 2 && p[j - 1] > p[j] + genus[j - 1]) return false;
    }
    return gsum == g;
}

namespace {

// Enumerates the p-chains p_1..p_{k-1} (p_0 = 1, p_k = m fixed) compatible
// with block sizes c and genus split gs: chain feasibility p_{j-1} <= p_j + g_j
// and level weight p_j - p_{j-1} + c_j + 2 g_j >= 1 for every level, except
// that the top level is exempt from the weight constraint when it is a seed.
// Bounds are propagated while recursing so only admissible chains are visited.
void chains_rec(int m, const std::vector<int>& c, const std::vector<int>& gs,
                const std::vector<int>& g_suffix, bool seeded, std::vector<int>& p, int j,
                const std::function<void(const std::vector<int>&)>& emit) {
    int k = static_cast<int>(c.size());
    if (j == k) {
        bool last_is_seed = seeded && k == 1;
        if (!last_is_seed && p[k] - p[k - 1] + c[k - 1] + 2 * gs[k - 1] < 1) return;
        emit(p);
        return;
    }
    bool level_is_seed = seeded && j == 1;
    int lo = std::max(1, p[j - 1] - gs[j - 1]);
    if (!level_is_seed) lo = std::max(lo, p[j - 1] + 1 - c[j - 1] - 2 * gs[j - 1]);
    int hi = m + g_suffix[j];
    for (int v = lo; v <= hi; ++v) {
        p[j] = v;
        chains_rec(m, c, gs, g_suffix, seeded, p, j + 1, emit);
    }
}

std::vector<int> suffix_sums(const std::vector<int>& gs) {
    int k = static_cast<int>(gs.size());
    std::vector<int> s(k + 1, 0);  // s[j] = g_{j+1} + ... + g_k
    for (int j = k - 1; j >= 1; --j) s[j] = s[j + 1] + gs[j];
    return s;
}

}  // namespace

std::vector<XiIndex> enumerate_xi(int m, int n_set_size, int g, int k) {
    std::vector<XiIndex> out;
    if (m < 1 || n_set_size < 0 || g < 0 || k < 1) return out;
    std::vector<int> assign(n_set_size, 0);
    std::function<void(int)> blocks_rec = [&](int e) {
        if (e == n_set_size) {
            std::vector<std::vector<int>> blocks(k);
            std::vector<int> c(k, 0);
            for (int x = 0; x < n_set_size; ++x) {
                blocks[assign[x]].push_back(x);
                ++c[assign[x]];
            }
            for (auto& gs : weak_compositions(g, k)) {
                auto sfx = suffix_sums(gs);
                std::vector<int> p(k + 1);
                p[0] = 1;
                p[k] = m;
                chains_rec(m, c, gs, sfx, /*seeded=*/false, p, 1,
                           [&](const std::vector<int>& chain) {
                               out.push_back(XiIndex{blocks, gs, chain});
                           });
            }
            return;
        }
        for (int b = 0; b < k; ++b) {
            assign[e] = b;
            blocks_rec(e + 1);
        }
    };
    blocks_rec(0);
    return out;
}

void for_each_tower(int m, int n_set_size, int g, int k, bool seeded,
                    const std::function<void(const std::vector<int>&, const std::vector<int>&,
                                             const std::vector<int>&, const Integer&)>& fn) {
    if (m < 1 || n_set_size < 0 || g < 0 || k < 1) return;
    for (auto& c : weak_compositions(n_set_size, k)) {
        if (seeded && c[0] < 1) continue;
        Integer weight = multinomial(n_set_size, c);
        for (auto& gs : weak_compositions(g, k)) {
            if (seeded && gs[0] != 1) continue;
            auto sfx = suffix_sums(gs);
            std::vector<int> p(k + 1);
            p[0] = 1;
            p[k] = m;
            chains_rec(m, c, gs, sfx, seeded, p, 1,
                       [&](const std::vector<int>& chain) { fn(c, gs, chain, weight); });
        }
    }
}

}  // namespace properad
