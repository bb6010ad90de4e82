#include "properad/twisting.hpp"

namespace properad {

TwistData::TwistData(const GradedModule* mod, int order, int weight_bound)
    : order_(order), elem_(mod, weight_bound, 0, TPoly(order)) {
    elem_.set_unit(false);
}

void TwistData::add(int m, int g, const Word& word, const TPoly& coeff) {
    if (m < 1 || g < 0) throw std::invalid_argument("twist entries need m >= 1, g >= 0");
    if (static_cast<int>(word.size()) != m)
        throw std::invalid_argument("twist entry word length must equal m");
    if (coeff.order() != order_) throw std::invalid_argument("twist entry order mismatch");
    if (!coeff.is_zero() && coeff.valuation() < 1)
        throw std::invalid_argument("twist entries must be divisible by t");
    MultiMap<TPoly> mm(elem_.module(), 0, m, 0, TPoly(order_));
    mm.add_term(Word{}, word, coeff);
    elem_.add_component(m, 0, g, mm);
}

bool TwistData::is_single_element() const {
    for (const auto& [k, mm] : elem_.components())
        if (!(k.m == 1 && k.g == 0)) return false;
    return true;
}

TwistData& TwistData::operator+=(const TwistData& o) {
    if (order_ != o.order_) throw std::invalid_argument("twist data order mismatch");
    for (const auto& [k, mm] : o.elem_.components()) elem_.add_component(k.m, k.n, k.g, mm);
    return *this;
}

TwistData TwistData::negated() const {
    TwistData out = *this;
    out.elem_.scale(Rational(-1));
    return out;
}

ConvElement<TPoly> extend_scalars(const ConvElement<Rational>& x, int order) {
    ConvElement<TPoly> out(x.module(), x.weight_bound(), x.degree(), TPoly(order));
    out.set_unit(x.unit());
    for (const auto& [k, mm] : x.components())
        out.add_component(k.m, k.n, k.g, convert_map(mm, TPoly(order)));
    return out;
}

std::map<std::pair<int, int>, MultiMap<TPoly>::Row> mc_equations_residual(
    const ConvElement<TPoly>& alpha, const TwistData& a) {
    if (!a.is_single_element())
        throw std::invalid_argument("mc_equations_residual takes a single element");
    const GradedModule& mod = *alpha.module();
    const int order = a.order();
    const TPoly zero(order);

    // powers of a as canonical word combinations; a is concentrated in
    // degree 0, so appending letters picks up no signs, and the t-valuation
    // makes the powers vanish past the truncation order
    const MultiMap<TPoly>* a_map = nullptr;
    for (const auto& [k, mm] : a.gauge().components())
        if (k.m == 1 && k.n == 0 && k.g == 0) a_map = &mm;
    MultiMap<TPoly>::Row a_value;
    if (a_map) a_value = a_map->apply(Word{});

    std::vector<MultiMap<TPoly>::Row> powers;  // powers[n] = class of a^(sym n)
    powers.push_back({{Word{}, TPoly(order, Rational(1))}});
    for (int n = 1;; ++n) {
        MultiMap<TPoly>::Row next;
        for (const auto& [w, c] : powers.back()) {
            for (const auto& [x, cx] : a_value) {
                Word seq = w;
                seq.push_back(x[0]);
                auto canon = canonicalize(mod, seq);
                if (!canon) continue;
                TPoly val = c * cx;
                val = val * Rational(canon->second);
                if (val.is_zero()) continue;
                auto& cell = next.try_emplace(canon->first, zero).first->second;
                cell += val;
            }
        }
        for (auto it = next.begin(); it != next.end();)
            it = it->second.is_zero() ? next.erase(it) : std::next(it);
        if (next.empty()) break;
        powers.push_back(std::move(next));
    }

    std::map<std::pair<int, int>, MultiMap<TPoly>::Row> out;
    for (const auto& [k, mm] : alpha.components()) {
        if (k.n < 1 || k.n >= static_cast<int>(powers.size())) continue;
        for (const auto& [w, c] : powers[static_cast<size_t>(k.n)]) {
            for (const auto& [y, cy] : mm.apply(w)) {
                TPoly val = c * cy;
                if (val.is_zero()) continue;
                auto& cell =
                    out[{k.m, k.g}].try_emplace(y, zero).first->second;
                cell += val;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        for (auto jt = it->second.begin(); jt != it->second.end();)
            jt = jt->second.is_zero() ? it->second.erase(jt) : std::next(jt);
        it = it->second.empty() ? out.erase(it) : std::next(it);
    }
    return out;
}

ConvElement<TPoly> generalized_twist(const ConvElement<TPoly>& alpha, const TwistData& family) {
    ConvElement<TPoly> gauge = family.gauge();
    gauge.set_unit(true);
    ConvElement<TPoly> result = level_above(alpha, gauge);
    bool curved = false;
    for (const auto& [k, mm] : result.components())
        if (k.n == 0 && !mm.is_zero()) curved = true;
    if (!curved) return result.without_kernel_components();
    result.set_curved(true);
    return result;
}

ConvElement<TPoly> twist(const ConvElement<TPoly>& alpha, const TwistData& a) {
    if (!a.is_single_element())
        throw std::invalid_argument("twist takes a single element; use generalized_twist");
    return generalized_twist(alpha, a);
}

std::map<std::pair<int, int>, MultiMap<TPoly>::Row> kernel_components(
    const ConvElement<TPoly>& alpha) {
    std::map<std::pair<int, int>, MultiMap<TPoly>::Row> out;
    for (const auto& [k, mm] : alpha.components()) {
        if (k.n != 0 || mm.is_zero()) continue;
        out[{k.m, k.g}] = mm.apply(Word{});
    }
    return out;
}

}  // namespace properad
