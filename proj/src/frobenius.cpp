#include "properad/frobenius.hpp"

namespace properad {

namespace {

std::string word_str(const GradedModule& mod, const Word& w) {
    std::string s = "(";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += mod.name(w[i]);
    }
    return s + ")";
}

using Terms = TensorSum<Rational>;

Terms single(const Word& seq) { return Terms{{seq, Rational(1)}}; }

bool terms_equal(const Terms& a, const Terms& b) {
    Terms d = a;
    for (const auto& [seq, c] : b) {
        auto& cell = d[seq];
        cell -= c;
    }
    for (const auto& [seq, c] : d)
        if (sgn(c) != 0) return false;
    return true;
}

}  // namespace

std::vector<AxiomReport> check_axioms(const FrobInstance& F) {
    std::vector<AxiomReport> out;
    const GradedModule& mod = *F.module;

    {
        auto dd = compose_full(F.d, F.d);
        AxiomReport r{"d squares to zero", true, ""};
        if (!dd.is_zero()) {
            r.ok = false;
            r.witness = word_str(mod, dd.rows().begin()->first);
        }
        out.push_back(r);
    }
    out.push_back({"d has degree -1", F.d.degree() == -1, F.d.degree() == -1 ? "" : "degree"});
    out.push_back({"mu graded-commutative", true, "by graded-symmetric storage"});
    out.push_back({"delta graded-cocommutative", true, "by graded-symmetric storage"});

    {
        // tensor-level associativity mu(mu(x,y),z) = mu(x,mu(y,z))
        AxiomReport r{"mu associative", true, ""};
        for (int x = 0; x < mod.dim() && r.ok; ++x)
            for (int y = 0; y < mod.dim() && r.ok; ++y)
                for (int z = 0; z < mod.dim() && r.ok; ++z) {
                    Word w{x, y, z};
                    auto left = apply_at(F.mu, apply_at(F.mu, single(w), 0), 0);
                    auto right = apply_at(F.mu, apply_at(F.mu, single(w), 1), 0);
                    if (!terms_equal(left, right)) {
                        r.ok = false;
                        r.witness = word_str(mod, w);
                    }
                }
        out.push_back(r);
    }
    {
        // tensor-level coassociativity (delta (x) id) delta = (id (x) delta) delta
        AxiomReport r{"delta coassociative", true, ""};
        for (int x = 0; x < mod.dim() && r.ok; ++x) {
            Word w{x};
            auto once = apply_at(F.delta, single(w), 0);
            auto left = apply_at(F.delta, once, 0);
            auto right = apply_at(F.delta, once, 1);
            if (!terms_equal(left, right)) {
                r.ok = false;
                r.witness = word_str(mod, w);
            }
        }
        out.push_back(r);
    }
    {
        // Frobenius compatibility on symmetric words:
        // delta . mu = (one-edge composite of delta above mu), both routings
        AxiomReport r{"frobenius compatibility", true, ""};
        if (F.mu.is_zero() || F.delta.is_zero()) {
            out.push_back(r);
        } else {
            MultiMap<Rational> lhs = compose_subset(F.mu, {0}, F.delta, {0});
            MultiMap<Rational> mid1 = compose_subset(F.delta, {0}, F.mu, {1});
            MultiMap<Rational> mid2 = compose_subset(F.delta, {1}, F.mu, {0});
            if (!(lhs == mid1) || !(lhs == mid2)) {
                r.ok = false;
                MultiMap<Rational> diff = lhs - mid1;
                diff.prune();
                r.witness =
                    diff.is_zero() ? "routing asymmetry" : word_str(mod, diff.rows().begin()->first);
            }
            out.push_back(r);
        }
    }
    return out;
}

bool axioms_pass(const std::vector<AxiomReport>& checks) {
    for (const auto& r : checks)
        if (!r.ok) return false;
    return true;
}

FrobCalculus::FrobCalculus(const FrobInstance& F) : inst_(&F) {}

const MultiMap<Rational>& FrobCalculus::mu_gmn(int m, int n, int g) {
    if (m < 1 || n < 1 || g < 0) throw std::invalid_argument("mu_gmn requires m,n >= 1, g >= 0");
    std::array<int, 3> key{m, n, g};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    const GradedModule& mod = *inst_->module;
    MultiMap<Rational> value;
    if (m == 1 && n == 1 && g == 0) {
        value = identity_map<Rational>(mod);
    } else if (m > 1) {
        // prepend one coproduct below the first output
        const MultiMap<Rational>& rest = mu_gmn(m - 1, n, g);
        value = rest.is_zero() || inst_->delta.is_zero()
                    ? MultiMap<Rational>(&mod, n, m, 0)
                    : compose_subset(rest, {0}, inst_->delta, {0});
    } else if (g > 0) {
        const MultiMap<Rational>& rest = mu_gmn(1, n, g - 1);
        if (rest.is_zero() || inst_->mu.is_zero() || inst_->delta.is_zero()) {
            value = MultiMap<Rational>(&mod, n, 1, 0);
        } else {
            MultiMap<Rational> handle = compose_subset(inst_->delta, {0, 1}, inst_->mu, {0, 1});
            value = compose_full(handle, rest);
        }
    } else {
        // m == 1, g == 0, n > 1: one more product on top of the first input
        const MultiMap<Rational>& rest = mu_gmn(1, n - 1, 0);
        value = rest.is_zero() || inst_->mu.is_zero()
                    ? MultiMap<Rational>(&mod, n, 1, 0)
                    : compose_subset(rest, {0}, inst_->mu, {0});
    }
    return memo_.emplace(key, std::move(value)).first->second;
}

ConvElement<Rational> FrobCalculus::build_theta(int W) {
    ConvElement<Rational> theta(inst_->module.get(), W, 0);
    theta.set_unit(true);
    for (int w = 1; w <= W; ++w) {
        int total = w + 2;
        for (int m = 1; m <= total - 1; ++m)
            for (int g = 0; m + 2 * g <= total - 1; ++g) {
                int n = total - m - 2 * g;
                if (n < 1) continue;
                const auto& mm = mu_gmn(m, n, g);
                if (!mm.is_zero()) theta.add_component(m, n, g, mm);
            }
    }
    return theta;
}

ConvElement<Rational> FrobCalculus::delta_element(int W) const {
    ConvElement<Rational> out(inst_->module.get(), W, -1);
    out.add_component(1, 1, 0, inst_->d);
    return out;
}

MultiMap<Rational> dee_composite(const MultiMap<Rational>& top, const MultiMap<Rational>& d,
                                 const MultiMap<Rational>& bottom, int extra_edges) {
    const GradedModule& mod = *top.module();
    const int mt = top.outputs(), nt = top.inputs();
    const int mb = bottom.outputs(), nb = bottom.inputs();
    const int edges = 1 + extra_edges;  // one strand through d plus direct ones
    if (extra_edges < 0 || edges > mt || edges > nb)
        throw std::invalid_argument("dee_composite interface too large");
    const int kept = mt - edges;
    const int n_res = nt + nb - edges;
    const int m_res = kept + mb;
    MultiMap<Rational> result(&mod, n_res, m_res, top.degree() + d.degree() + bottom.degree());
    for (const auto& u : symmetric_basis(mod, n_res)) {
        auto terms = lift_word(mod, u, Rational());
        terms = apply_at(top, terms, 0);
        terms = apply_at(d, terms, 0);
        if (terms.empty()) continue;
        // layout: [d-out, top-out 1..mt-1, bottom frees]; feed bottom with
        // (d-out, top-out 1..extra, frees), keep top-out extra+1..mt-1
        std::vector<int> perm;
        perm.reserve(static_cast<size_t>(mt + nb - edges));
        for (int j = edges; j < mt; ++j) perm.push_back(j);
        for (int j = 0; j < edges; ++j) perm.push_back(j);
        for (int j = 0; j < nb - edges; ++j) perm.push_back(mt + j);
        terms = tensor_reorder(mod, terms, perm, Rational());
        terms = apply_at(bottom, terms, kept);
        auto classes = tensor_project(mod, terms, Rational());
        for (const auto& [w, c] : classes) result.add_term(u, w, c);
    }
    result.prune();
    return result;
}

ConvElement<Rational> hierarchy_closed(const FrobInstance& F, const CoeffTable& a_table,
                                       const CoeffTable& c_table, int W) {
    FrobCalculus calc(F);
    const GradedModule& mod = *F.module;
    ConvElement<Rational> nu(F.module.get(), W, -1);
    if (F.d.is_zero()) return nu;

    for (int w = 1; w <= W; ++w) {
        int total = w + 2;
        for (int m = 1; m <= total - 1; ++m) {
            for (int g = 0; m + 2 * g <= total - 1; ++g) {
                int n = total - m - 2 * g;
                if (n < 1 || m + n + g < 3) continue;

                // type A: mu^{g1}_{1,k} above d above mu^{g2}_{m,l+1}
                for (int g2 = 0; g2 <= g; ++g2) {
                    int g1 = g - g2;
                    for (int k = 1; k <= n; ++k) {
                        int l = n - k;
                        if (!a_table.has(m, l, g2)) continue;
                        Rational coeff = a_table.at(m, l, g2) * Rational(binomial(n, k));
                        if (sgn(coeff) == 0) continue;
                        const auto& below = calc.mu_gmn(m, l + 1, g2);
                        const auto& above = calc.mu_gmn(1, k, g1);
                        if (below.is_zero() || above.is_zero()) continue;
                        MultiMap<Rational> term = dee_composite(above, F.d, below, 0);
                        term.scale(coeff);
                        nu.add_component(m, n, g, term);
                    }
                }

                // type B: mu^0_{2,k} above d above mu^{g}_{m-1,l+1}, one free output
                if (m >= 2) {
                    for (int k = 1; k <= n; ++k) {
                        int l = n - k;
                        if (!a_table.has(m - 1, l, g)) continue;
                        Rational coeff = a_table.at(m - 1, l, g) * Rational(binomial(n, k)) *
                                         Rational(m) * Rational((k % 2 == 1) ? 1 : -1);
                        if (sgn(coeff) == 0) continue;
                        const auto& below = calc.mu_gmn(m - 1, l + 1, g);
                        const auto& above = calc.mu_gmn(2, k, 0);
                        if (below.is_zero() || above.is_zero()) continue;
                        MultiMap<Rational> term = dee_composite(above, F.d, below, 0);
                        term.scale(coeff);
                        nu.add_component(m, n, g, term);
                    }
                }

                // type C: mu^0_{g+1,n} saturating mu^0_{m,g+1} with d on one strand
                if (g >= 1 && c_table.has(m, n, g)) {
                    Rational coeff = c_table.at(m, n, g);
                    if (sgn(coeff) != 0) {
                        const auto& below = calc.mu_gmn(m, g + 1, 0);
                        const auto& above = calc.mu_gmn(g + 1, n, 0);
                        if (!below.is_zero() && !above.is_zero()) {
                            MultiMap<Rational> term = dee_composite(above, F.d, below, g);
                            term.scale(coeff);
                            nu.add_component(m, n, g, term);
                        }
                    }
                }
            }
        }
    }
    nu.prune();
    (void)mod;
    return nu;
}

ConvElement<Rational> hierarchy_solve(const FrobInstance& F, int W) {
    FrobCalculus calc(F);
    ConvElement<Rational> theta = calc.build_theta(W);
    ConvElement<Rational> dtheta = differential(theta, F.d);
    ConvElement<Rational> nu(F.module.get(), W, -1);
    for (int w = 0; w <= W; ++w) {
        ConvElement<Rational> residual = dtheta - level_below(theta, nu);
        for (const auto& [k, mm] : residual.components())
            if (key_weight(k) == w) nu.add_component(k.m, k.n, k.g, mm);
    }
    ConvElement<Rational> final_residual = dtheta - level_below(theta, nu);
    if (!final_residual.is_zero())
        throw std::logic_error("gauge equation residual did not vanish at the weight bound");
    return nu;
}

ConvElement<Rational> genus0_structure(const FrobInstance& F, int W) {
    FrobCalculus calc(F);
    ConvElement<Rational> nu(F.module.get(), W, -1);
    if (F.d.is_zero()) return nu;
    for (int w = 1; w <= W; ++w) {
        int n_total = w + 2;
        for (int m = 1; m <= n_total - 1; ++m) {
            int n = n_total - m;
            if (n < 1 || m + n < 3) continue;
            for (int k = 1; k <= n; ++k) {
                int l = n - k;
                {
                    // (-1)^{m+l-1} (m-1)! m^l
                    Integer pw;
                    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(m),
                                  static_cast<unsigned long>(l));
                    Rational coeff(factorial(static_cast<unsigned>(m - 1)) * pw);
                    if ((m + l) % 2 == 0) coeff = -coeff;
                    coeff *= Rational(binomial(n, k));
                    const auto& below = calc.mu_gmn(m, l + 1, 0);
                    const auto& above = calc.mu_gmn(1, k, 0);
                    if (!below.is_zero() && !above.is_zero()) {
                        MultiMap<Rational> term = dee_composite(above, F.d, below, 0);
                        term.scale(coeff);
                        nu.add_component(m, n, 0, term);
                    }
                }
                if (m >= 2) {
                    // (-1)^{m+n-1} (m-2)! (m-1)^l
                    Integer pw;
                    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(m - 1),
                                  static_cast<unsigned long>(l));
                    Rational coeff(factorial(static_cast<unsigned>(m - 2)) * pw);
                    if ((m + n) % 2 == 0) coeff = -coeff;
                    coeff *= Rational(binomial(n, k)) * Rational(m);
                    const auto& below = calc.mu_gmn(m - 1, l + 1, 0);
                    const auto& above = calc.mu_gmn(2, k, 0);
                    if (!below.is_zero() && !above.is_zero()) {
                        MultiMap<Rational> term = dee_composite(above, F.d, below, 0);
                        term.scale(coeff);
                        nu.add_component(m, n, 0, term);
                    }
                }
            }
        }
    }
    nu.prune();
    return nu;
}

namespace {

FrobInstance make_instance(const std::string& name, std::vector<std::string> names,
                           std::vector<int> degrees) {
    FrobInstance F;
    F.name = name;
    F.module = std::make_shared<GradedModule>(std::move(names), std::move(degrees));
    F.d = MultiMap<Rational>(F.module.get(), 1, 1, -1);
    F.mu = MultiMap<Rational>(F.module.get(), 2, 1, 0);
    F.delta = MultiMap<Rational>(F.module.get(), 1, 2, 0);
    return F;
}

}  // namespace

FrobInstance instance_e2() {
    FrobInstance F = make_instance("e2", {"e0", "e1"}, {0, 1});
    F.mu.add_term({0, 0}, {0}, 1);
    F.mu.add_term({0, 1}, {1}, 1);
    F.d.add_term({1}, {0}, 1);
    return F;
}

FrobInstance instance_coalgebra() {
    FrobInstance F = make_instance("coalgebra", {"e0", "e1"}, {0, 1});
    F.delta.add_term({0}, {0, 0}, 1);
    F.delta.add_term({1}, {0, 1}, 1);
    F.delta.add_term({1}, {1, 0}, 1);
    F.d.add_term({1}, {0}, 1);
    return F;
}

FrobInstance instance_nd4() {
    FrobInstance F = make_instance("nd4", {"e0", "f0", "e1", "q1"}, {0, 0, 1, -1});
    for (int i = 0; i < 4; ++i) F.mu.add_term({0, i}, {i}, 1);  // e0 is the unit
    F.d.add_term({2}, {0}, 1);                                  // d e1 = e0
    F.d.add_term({1}, {3}, 1);                                  // d f0 = q1
    return F;
}

std::vector<FrobInstance> shipped_instances() {
    return {instance_e2(), instance_coalgebra(), instance_nd4()};
}

InstanceSearchOutcome search_full_instance(long budget) {
    InstanceSearchOutcome out;
    const int vals[3] = {0, 1, -1};
    // degree-0 pair (e0, f0) plus one odd generator; e0 kept as the unit of mu
    auto module = std::make_shared<GradedModule>(std::vector<std::string>{"e0", "f0", "e1"},
                                                 std::vector<int>{0, 0, 1});
    for (int ff_e : vals)
        for (int ff_f : vals)
            for (int fe : vals)
                for (int de0 : vals)
                    for (int de1 : vals)
                        for (int c00 : vals)
                            for (int c0f : vals)
                                for (int cff : vals)
                                    for (int cf0 : vals)
                                        for (int cf0f : vals)
                                            for (int cfff : vals)
                                                for (int ce : vals)
                                                    for (int cef : vals) {
                                                        if (out.configurations_tested++ > budget)
                                                            return out;
                                                        FrobInstance F;
                                                        F.name = "search";
                                                        F.module = module;
                                                        F.d = MultiMap<Rational>(module.get(), 1,
                                                                                 1, -1);
                                                        F.mu = MultiMap<Rational>(module.get(), 2,
                                                                                  1, 0);
                                                        F.delta = MultiMap<Rational>(module.get(),
                                                                                     1, 2, 0);
                                                        for (int i = 0; i < 3; ++i)
                                                            F.mu.add_term({0, i}, {i}, 1);
                                                        F.mu.add_term({1, 1}, {0}, ff_e);
                                                        F.mu.add_term({1, 1}, {1}, ff_f);
                                                        F.mu.add_term({1, 2}, {2}, fe);
                                                        F.d.add_term({2}, {0}, de0);
                                                        F.d.add_term({2}, {1}, de1);
                                                        F.delta.add_term({0}, {0, 0}, c00);
                                                        F.delta.add_term({0}, {0, 1}, c0f);
                                                        F.delta.add_term({0}, {1, 1}, cff);
                                                        F.delta.add_term({1}, {0, 0}, cf0);
                                                        F.delta.add_term({1}, {0, 1}, cf0f);
                                                        F.delta.add_term({1}, {1, 1}, cfff);
                                                        F.delta.add_term({2}, {0, 2}, ce);
                                                        F.delta.add_term({2}, {1, 2}, cef);
                                                        if (F.d.is_zero() || F.mu.is_zero() ||
                                                            F.delta.is_zero())
                                                            continue;
                                                        if (axioms_pass(check_axioms(F))) {
                                                            out.found = F;
                                                            return out;
                                                        }
                                                    }
    return out;
}

}  // namespace properad
