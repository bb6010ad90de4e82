#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "properad/rational.hpp"

namespace properad {

/// Finite graded module with a named, ordered basis and integer homological degrees.
class GradedModule {
  public:
    GradedModule() = default;
    GradedModule(std::vector<std::string> names, std::vector<int> degrees);

    int dim() const { return static_cast<int>(degrees_.size()); }
    int degree(int i) const { return degrees_.at(i); }
    bool odd(int i) const { return degrees_.at(i) % 2 != 0; }
    const std::string& name(int i) const { return names_.at(i); }
    int index(const std::string& name) const;
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& degrees() const { return degrees_; }

    friend bool operator==(const GradedModule& a, const GradedModule& b) {
        return a.names_ == b.names_ && a.degrees_ == b.degrees_;
    }

  private:
    std::vector<std::string> names_;
    std::vector<int> degrees_;
};

/// A word is a sequence of basis indices; canonical words are sorted and
/// carry no repeated odd generator (those classes vanish in char 0).
using Word = std::vector<int>;

int word_degree(const GradedModule& mod, const Word& w);

/// Sorts a tensor word into its canonical representative. Returns the sign
/// picked up from the graded transpositions, or nullopt when the class is
/// zero (an odd generator repeats).
std::optional<std::pair<Word, int>> canonicalize(const GradedModule& mod, const Word& w);

/// Koszul sign of rearranging `w` so that target slot j holds w[perm[j]].
int reorder_sign(const GradedModule& mod, const Word& w, const std::vector<int>& perm);

/// Canonical basis words of the n-th graded-symmetric power, lexicographic.
std::vector<Word> symmetric_basis(const GradedModule& mod, int n);

/// Distinct permutations r of a canonical word with the rational weights of the
/// symmetrization section: s([w]) = sum_r weight(r) * r with
/// weight(r) = (|stab(w)| / n!) * koszul_sign(w -> r).
std::vector<std::pair<Word, Rational>> symmetrize(const GradedModule& mod, const Word& w);

}  // namespace properad
