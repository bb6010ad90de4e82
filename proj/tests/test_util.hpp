#pragma once

#include <memory>
#include <algorithm>
#include <random>

#include "properad/conv.hpp"

namespace properad::testutil {

/// Mixed-degree module for engine tests: two even, one odd, one degree -1.
inline std::shared_ptr<GradedModule> engine_module() {
    return std::make_shared<GradedModule>(std::vector<std::string>{"a", "b", "c", "w"},
                                          std::vector<int>{0, 0, 1, -1});
}

inline Rational random_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(-2, 2);
    return Rational(dist(rng));
}

/// Sparse random degree-homogeneous map; roughly half the admissible cells stay empty.
inline MultiMap<Rational> random_map(const GradedModule& mod, int n_in, int n_out, int degree,
                                     std::mt19937_64& rng) {
    MultiMap<Rational> f(&mod, n_in, n_out, degree);
    std::uniform_int_distribution<int> keep(0, 2);
    for (const auto& in : symmetric_basis(mod, n_in))
        for (const auto& out : symmetric_basis(mod, n_out)) {
            if (word_degree(mod, out) - word_degree(mod, in) != degree) continue;
            if (keep(rng) == 0) continue;
            f.add_term(in, out, random_coeff(rng));
        }
    f.prune();
    return f;
}

/// Random homogeneous convolution element supported on a few keys.
inline ConvElement<Rational> random_element(const GradedModule& mod, int W, int degree,
                                            int max_keys, std::mt19937_64& rng) {
    ConvElement<Rational> x(&mod, W, degree);
    std::vector<ConvKey> keys;
    for (int m = 1; m <= W + 1; ++m)
        for (int n = 0; n <= W + 1; ++n)
            for (int g = 0; g <= W / 2; ++g) {
                ConvKey k{m, n, g};
                int w = key_weight(k);
                if (w >= 1 && w <= W) keys.push_back(k);
            }
    std::shuffle(keys.begin(), keys.end(), rng);
    int count = std::min<int>(max_keys, static_cast<int>(keys.size()));
    for (int i = 0; i < count; ++i) {
        auto mm = random_map(mod, keys[i].n, keys[i].m, degree, rng);
        if (!mm.is_zero()) x.add_component(keys[i].m, keys[i].n, keys[i].g, mm);
    }
    return x;
}

}  // namespace properad::testutil
