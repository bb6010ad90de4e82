#include "properad/contraction.hpp"

namespace properad {

Lin lin_identity(const GradedModule& mod) {
    Lin id{&mod, &mod, 0, {}};
    for (int i = 0; i < mod.dim(); ++i) id.add(i, i, 1);
    return id;
}

Lin lin_compose(const Lin& after, const Lin& before) {
    if (before.dst != after.src && !(*before.dst == *after.src))
        throw std::invalid_argument("lin_compose module mismatch");
    Lin out{before.src, after.dst, before.degree + after.degree, {}};
    for (const auto& [i, col] : before.cols)
        for (const auto& [j, c1] : col)
            for (const auto& [k, c2] : after.apply(j)) out.add(i, k, c1 * c2);
    return out;
}

Lin lin_sub(const Lin& a, const Lin& b) {
    Lin out = a;
    for (const auto& [i, col] : b.cols)
        for (const auto& [j, c] : col) out.add(i, j, -c);
    return out;
}

MultiMap<Rational> lin_to_multimap(const Lin& endo) {
    if (endo.src != endo.dst && !(*endo.src == *endo.dst))
        throw std::invalid_argument("only endomorphisms convert to MultiMap");
    MultiMap<Rational> out(endo.src, 1, 1, endo.degree);
    for (const auto& [i, col] : endo.cols)
        for (const auto& [j, c] : col) out.add_term(Word{i}, Word{j}, c);
    return out;
}

namespace {

ConditionReport check_zero(const std::string& name, const Lin& l, const GradedModule& src) {
    for (const auto& [i, col] : l.cols)
        for (const auto& [j, c] : col)
            if (sgn(c) != 0) return {name, false, src.name(i)};
    return {name, true, ""};
}

}  // namespace

std::vector<ConditionReport> validate_contraction(const Contraction& c) {
    std::vector<ConditionReport> out;
    out.push_back(check_zero("d_big squares to zero", lin_compose(c.d_big, c.d_big), *c.big));
    out.push_back(
        check_zero("d_small squares to zero", lin_compose(c.d_small, c.d_small), *c.small));
    out.push_back(check_zero(
        "p i = id", lin_sub(lin_compose(c.proj, c.incl), lin_identity(*c.small)), *c.small));
    Lin lhs = lin_sub(lin_compose(c.incl, c.proj), lin_identity(*c.big));
    Lin rhs = lin_compose(c.d_big, c.h);
    for (const auto& [i, col] : lin_compose(c.h, c.d_big).cols)
        for (const auto& [j, q] : col) rhs.add(i, j, q);
    out.push_back(check_zero("i p - id = d h + h d", lin_sub(lhs, rhs), *c.big));
    out.push_back(check_zero("h i = 0", lin_compose(c.h, c.incl), *c.small));
    out.push_back(check_zero("p h = 0", lin_compose(c.proj, c.h), *c.big));
    out.push_back(check_zero("h h = 0", lin_compose(c.h, c.h), *c.big));
    return out;
}

bool all_ok(const std::vector<ConditionReport>& checks) {
    for (const auto& r : checks)
        if (!r.ok) return false;
    return true;
}

MultiMap<Rational> symmetric_homotopy(const Contraction& c, int n) {
    if (n < 1) throw std::invalid_argument("symmetric_homotopy needs n >= 1");
    const GradedModule& mod = *c.big;
    MultiMap<Rational> hmap = lin_to_multimap(c.h);
    MultiMap<Rational> pi = lin_to_multimap(lin_compose(c.incl, c.proj));
    MultiMap<Rational> out(&mod, n, n, 1);
    for (const auto& u : symmetric_basis(mod, n)) {
        for (int k = 1; k <= n; ++k) {
            auto terms = lift_word(mod, u, Rational());
            terms = apply_at(hmap, terms, k - 1);
            for (int j = k; j < n && !terms.empty(); ++j) terms = apply_at(pi, terms, j);
            auto classes = tensor_project(mod, terms, Rational());
            for (const auto& [w, q] : classes) out.add_term(u, w, q);
        }
    }
    out.prune();
    return out;
}

MultiMap<Rational> tensor_power_map(const MultiMap<Rational>& f, int n) {
    if (f.inputs() != 1 || f.outputs() != 1)
        throw std::invalid_argument("tensor_power_map needs a (1,1) map");
    const GradedModule& mod = *f.module();
    MultiMap<Rational> out(&mod, n, n, f.degree() * n);
    for (const auto& u : symmetric_basis(mod, n)) {
        auto terms = lift_word(mod, u, Rational());
        for (int j = 0; j < n && !terms.empty(); ++j) terms = apply_at(f, terms, j);
        auto classes = tensor_project(mod, terms, Rational());
        for (const auto& [w, q] : classes) out.add_term(u, w, q);
    }
    out.prune();
    return out;
}

Contraction contraction_two_dim() {
    Contraction c;
    c.big = std::make_shared<GradedModule>(std::vector<std::string>{"x", "y"},
                                           std::vector<int>{1, 0});
    c.small = std::make_shared<GradedModule>(std::vector<std::string>{}, std::vector<int>{});
    c.d_big = Lin{c.big.get(), c.big.get(), -1, {}};
    c.d_big.add(0, 1, 1);  // d x = y
    c.d_small = Lin{c.small.get(), c.small.get(), -1, {}};
    c.incl = Lin{c.small.get(), c.big.get(), 0, {}};
    c.proj = Lin{c.big.get(), c.small.get(), 0, {}};
    c.h = Lin{c.big.get(), c.big.get(), 1, {}};
    c.h.add(1, 0, -1);  // h y = -x
    return c;
}

Contraction contraction_three_dim() {
    Contraction c;
    c.big = std::make_shared<GradedModule>(std::vector<std::string>{"x", "y", "z"},
                                           std::vector<int>{1, 0, 0});
    c.small = std::make_shared<GradedModule>(std::vector<std::string>{"zbar"},
                                             std::vector<int>{0});
    c.d_big = Lin{c.big.get(), c.big.get(), -1, {}};
    c.d_big.add(0, 1, 1);
    c.d_small = Lin{c.small.get(), c.small.get(), -1, {}};
    c.incl = Lin{c.small.get(), c.big.get(), 0, {}};
    c.incl.add(0, 2, 1);
    c.proj = Lin{c.big.get(), c.small.get(), 0, {}};
    c.proj.add(2, 0, 1);
    c.h = Lin{c.big.get(), c.big.get(), 1, {}};
    c.h.add(1, 0, -1);
    return c;
}

}  // namespace properad
