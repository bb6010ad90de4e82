#include "properad/graded.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace properad {

GradedModule::GradedModule(std::vector<std::string> names, std::vector<int> degrees)
    : names_(std::move(names)), degrees_(std::move(degrees)) {
    if (names_.size() != degrees_.size())
        throw std::invalid_argument("basis names and degrees differ in length");
    for (size_t i = 0; i < names_.size(); ++i)
        for (size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate basis name '" + names_[i] + "'");
}

int GradedModule::index(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
        if (names_[static_cast<size_t>(i)] == name) return i;
    throw std::invalid_argument("unknown basis name '" + name + "'");
}

int word_degree(const GradedModule& mod, const Word& w) {
    int d = 0;
    for (int i : w) d += mod.degree(i);
    return d;
}

std::optional<std::pair<Word, int>> canonicalize(const GradedModule& mod, const Word& w) {
    Word out = w;
    int sign = 1;
    // insertion sort, accumulating the graded transposition signs
    for (size_t i = 1; i < out.size(); ++i) {
        for (size_t j = i; j > 0 && out[j] < out[j - 1]; --j) {
            if (mod.odd(out[j]) && mod.odd(out[j - 1])) sign = -sign;
            std::swap(out[j], out[j - 1]);
        }
    }
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i] == out[i - 1] && mod.odd(out[i])) return std::nullopt;
    return std::make_pair(std::move(out), sign);
}

int reorder_sign(const GradedModule& mod, const Word& w, const std::vector<int>& perm) {
    int sign = 1;
    for (size_t a = 0; a < perm.size(); ++a)
        for (size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b] && mod.odd(w[perm[a]]) && mod.odd(w[perm[b]])) sign = -sign;
    return sign;
}

std::vector<Word> symmetric_basis(const GradedModule& mod, int n) {
    std::vector<Word> out;
    if (n < 0) return out;
    Word cur;
    std::function<void(int, int)> rec = [&](int min_idx, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int i = min_idx; i < mod.dim(); ++i) {
            if (mod.odd(i) && !cur.empty() && cur.back() == i) continue;
            cur.push_back(i);
            rec(i, left - 1);
            cur.pop_back();
        }
    };
    rec(0, n);
    return out;
}

std::vector<std::pair<Word, Rational>> symmetrize(const GradedModule& mod, const Word& w) {
    std::vector<std::pair<Word, Rational>> out;
    int n = static_cast<int>(w.size());
    if (n == 0) {
        out.emplace_back(Word{}, Rational(1));
        return out;
    }
    Integer stab = 1;
    {
        int run = 1;
        for (int i = 1; i <= n; ++i) {
            if (i < n && w[i] == w[i - 1]) {
                ++run;
            } else {
                stab *= factorial(static_cast<unsigned>(run));
                run = 1;
            }
        }
    }
    Rational base(stab, factorial(static_cast<unsigned>(n)));
    base.canonicalize();

    // distinct rearrangements, sign accumulated as letters are drawn from the
    // sorted remainder (each draw moves the letter past the ones before it)
    Word remaining = w;
    Word cur;
    std::function<void(int)> rec = [&](int sign) {
        if (remaining.empty()) {
            Rational coeff = base * sign;
            out.emplace_back(cur, coeff);
            return;
        }
        for (size_t i = 0; i < remaining.size(); ++i) {
            if (i > 0 && remaining[i] == remaining[i - 1]) continue;
            int s = sign;
            if (mod.odd(remaining[i]))
                for (size_t j = 0; j < i; ++j)
                    if (mod.odd(remaining[j])) s = -s;
            int letter = remaining[i];
            cur.push_back(letter);
            remaining.erase(remaining.begin() + static_cast<long>(i));
            rec(s);
            remaining.insert(remaining.begin() + static_cast<long>(i), letter);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

}  // namespace properad
