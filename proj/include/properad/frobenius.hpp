#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "properad/coefficients.hpp"
#include "properad/conv.hpp"

namespace properad {

/// Chain complex with a candidate Frobenius bialgebra structure.
struct FrobInstance {
    std::string name;
    std::shared_ptr<GradedModule> module;
    MultiMap<Rational> d;      // (1,1), degree -1
    MultiMap<Rational> mu;     // 2 inputs -> 1 output, degree 0
    MultiMap<Rational> delta;  // 1 input -> 2 outputs, degree 0
};

struct AxiomReport {
    std::string name;
    bool ok;
    std::string witness;
};

/// Per-axiom pass/fail with the first failing basis tuple. Commutativity and
/// cocommutativity hold by graded-symmetric storage; associativity and
/// coassociativity are checked on tensors, compatibility on symmetric words.
std::vector<AxiomReport> check_axioms(const FrobInstance& F);
bool axioms_pass(const std::vector<AxiomReport>& checks);

/// Memoizes the one-dimensional-properad composites mu^g_{m,n} of an instance.
class FrobCalculus {
  public:
    explicit FrobCalculus(const FrobInstance& F);

    const FrobInstance& instance() const { return *inst_; }
    const MultiMap<Rational>& mu_gmn(int m, int n, int g);

    /// Gauge element 1 + sum mu^g_{m,n} up to the weight bound.
    ConvElement<Rational> build_theta(int W);

    /// The differential as the (1,1,0)-component of a degree -1 element.
    ConvElement<Rational> delta_element(int W) const;

  private:
    const FrobInstance* inst_;
    std::map<std::array<int, 3>, MultiMap<Rational>> memo_;
};

/// One-shot composite of top above d above bottom: top's first output runs
/// through d into bottom's first input, the next `extra_edges` top outputs run
/// directly into bottom's inputs 1..extra_edges, the rest stay free. Keeping
/// the whole chain in one tensor pipeline preserves which strand carries d;
/// chaining stored symmetric-power maps would smear it over the other slots.
MultiMap<Rational> dee_composite(const MultiMap<Rational>& top, const MultiMap<Rational>& d,
                                 const MultiMap<Rational>& bottom, int extra_edges);

/// Hierarchy from the closed three-sum formula with coefficient tables.
ConvElement<Rational> hierarchy_closed(const FrobInstance& F, const CoeffTable& a_table,
                                       const CoeffTable& c_table, int W);

/// Hierarchy as the unique degree -1 solution of del(Theta) = Theta |> nu,
/// solved weight by weight; throws if the final residual does not vanish.
ConvElement<Rational> hierarchy_solve(const FrobInstance& F, int W);

/// Genus-0 hierarchy assembled with the explicit closed-form coefficients
/// (-1)^{m+l-1} (m-1)! m^l and (-1)^{m+n-1} (m-2)! (m-1)^l.
ConvElement<Rational> genus0_structure(const FrobInstance& F, int W);

/// Shipped instances.
FrobInstance instance_e2();
FrobInstance instance_coalgebra();
FrobInstance instance_nd4();
std::vector<FrobInstance> shipped_instances();

struct InstanceSearchOutcome {
    std::optional<FrobInstance> found;  // axiom-passing, mu != 0 != delta, d != 0
    long configurations_tested = 0;
};

/// Brute-force hunt over structure constants in {-1,0,1} on small modules.
InstanceSearchOutcome search_full_instance(long budget = 2'000'000);

}  // namespace properad
