#pragma once

#include <map>
#include <utility>

#include "properad/conv.hpp"
#include "properad/frobenius.hpp"

namespace properad {

/// Degree-0 twisting data over the nilpotent extension Q[t]/(t^N): either a
/// single element (entries at (m,g) = (1,0)) or a family {a^g_m} of tensors.
/// Every coefficient must be divisible by t.
class TwistData {
  public:
    TwistData(const GradedModule* mod, int order, int weight_bound);

    int order() const { return order_; }
    const GradedModule* module() const { return elem_.module(); }

    /// Adds coeff * word to the (m,g) entry; word is a degree-0 element of
    /// the m-th symmetric power, coeff a t-multiple.
    void add(int m, int g, const Word& word, const TPoly& coeff);

    bool is_single_element() const;

    /// The gauge element 1 + sum_{m,g} a^g_m with entries as (m,0,g)-components.
    const ConvElement<TPoly>& gauge() const { return elem_; }

    TwistData& operator+=(const TwistData& o);
    friend TwistData operator+(TwistData a, const TwistData& b) { return a += b; }
    TwistData negated() const;

  private:
    int order_;
    ConvElement<TPoly> elem_;
};

/// Rational structure embedded into the order-N scalar extension.
ConvElement<TPoly> extend_scalars(const ConvElement<Rational>& x, int order);

/// Per-(m,g) value of sum_n nu_{m,n,g} evaluated on n copies of the single
/// element a (the curvature the gauge action of 1+a produces); alpha should
/// carry its differential as the (1,1,0)-component.
std::map<std::pair<int, int>, MultiMap<TPoly>::Row> mc_equations_residual(
    const ConvElement<TPoly>& alpha, const TwistData& a);

/// Gauge action alpha <| (1 + a). When every arity-(m,0) component of the
/// result vanishes the kernel components are stripped; otherwise they are
/// kept and the result is tagged curved.
ConvElement<TPoly> twist(const ConvElement<TPoly>& alpha, const TwistData& a);

/// Same action for a family of tensors {a^g_m}.
ConvElement<TPoly> generalized_twist(const ConvElement<TPoly>& alpha, const TwistData& family);

/// The arity-(m,0) components of alpha, keyed by (m,g); empty iff the
/// structure is non-curved.
std::map<std::pair<int, int>, MultiMap<TPoly>::Row> kernel_components(
    const ConvElement<TPoly>& alpha);

}  // namespace properad
