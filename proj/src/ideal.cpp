#include "varcert/ideal.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace varcert {

namespace {

// Remainder of f under multivariate division by divisors (monic not required).
Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& divisors,
                  const TermOrder& ord) {
    Polynomial h = f;
    Polynomial remainder(f.nvars());
    while (!h.is_zero()) {
        const auto& [lm, lc] = h.leading_term(ord);
        bool divided = false;
        for (const Polynomial& g : divisors) {
            const auto& [glm, glc] = g.leading_term(ord);
            if (glm.divides(lm)) {
                Monomial q = lm.quotient(glm);
                h = h - g.scaled(lc / glc) * Polynomial::term(f.nvars(), q, Rational(1));
                divided = true;
                break;
            }
        }
        if (!divided) {
            remainder.add_term(lm, lc);
            Polynomial lt = Polynomial::term(f.nvars(), lm, lc);
            h = h - lt;
        }
    }
    return remainder;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& ord) {
    const auto& [fm, fc] = f.leading_term(ord);
    const auto& [gm, gc] = g.leading_term(ord);
    Monomial l = fm.lcm(gm);
    Polynomial a = Polynomial::term(f.nvars(), l.quotient(fm), 1 / fc);
    Polynomial b = Polynomial::term(f.nvars(), l.quotient(gm), 1 / gc);
    return f * a - g * b;
}

}  // namespace

GroebnerContext groebner(std::vector<Polynomial> gens, TermOrder order) {
    GroebnerContext ctx;
    ctx.order = order;
    ctx.generators = gens;
    size_t nvars = order.priority.size();
    if (nvars == 0) throw std::invalid_argument("groebner: empty variable set");
    for (const auto& g : gens)
        if (g.nvars() != nvars) throw std::invalid_argument("groebner: generator ring mismatch");
    ctx.nvars = nvars;

    std::vector<Polynomial> basis;
    for (const auto& g : gens)
        if (!g.is_zero()) basis.push_back(g.monic(order));

    struct Pair {
        size_t i, j;
        Monomial lcm;
    };
    auto pair_less = [&](const Pair& a, const Pair& b) {
        auto c = order.compare(a.lcm, b.lcm);
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    std::vector<Pair> pairs;
    auto push_pairs_for = [&](size_t j) {
        const Monomial& mj = basis[j].leading_term(order).first;
        for (size_t i = 0; i < j; ++i) {
            const Monomial& mi = basis[i].leading_term(order).first;
            Monomial l = mi.lcm(mj);
            // Buchberger's coprimality criterion
            if (l.degree() == mi.degree() + mj.degree()) continue;
            pairs.push_back({i, j, std::move(l)});
        }
    };
    for (size_t j = 0; j < basis.size(); ++j) push_pairs_for(j);

    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
        Pair p = *it;
        pairs.erase(it);
        Polynomial s = s_polynomial(basis[p.i], basis[p.j], order);
        Polynomial r = reduce(s, basis, order);
        if (r.is_zero()) continue;
        basis.push_back(r.monic(order));
        push_pairs_for(basis.size() - 1);
    }

    // auto-reduction: drop elements whose leading monomial is divisible by
    // another, then reduce every tail against the rest
    std::vector<Polynomial> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        const Monomial& mi = basis[i].leading_term(order).first;
        bool redundant = false;
        for (size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            const Monomial& mj = basis[j].leading_term(order).first;
            if (mj.divides(mi) && !(mi == mj && j > i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Polynomial> others;
            for (size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Polynomial r = reduce(minimal[i], others, order);
            if (r.is_zero()) {
                minimal.erase(minimal.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
            r = r.monic(order);
            if (!(r == minimal[i])) {
                minimal[i] = r;
                changed = true;
            }
        }
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Polynomial& a, const Polynomial& b) {
        return order.less(a.leading_term(order).first, b.leading_term(order).first);
    });
    ctx.basis = std::move(minimal);
    for (const auto& b : ctx.basis) ctx.leading_monomials.push_back(b.leading_term(order).first);
    return ctx;
}

Polynomial normal_form(const Polynomial& f, const GroebnerContext& ctx) {
    if (f.nvars() != ctx.nvars) throw std::invalid_argument("normal_form: ring mismatch");
    if (ctx.basis.empty()) return f;
    return reduce(f, ctx.basis, ctx.order);
}

bool ideal_member(const Polynomial& f, const GroebnerContext& ctx) {
    return normal_form(f, ctx).is_zero();
}

std::vector<Monomial> standard_monomials(const GroebnerContext& ctx, int d) {
    if (d < 0) throw std::invalid_argument("standard_monomials: d must be >= 0");
    std::vector<Monomial> out;
    Monomial cur(ctx.nvars);
    std::function<void(size_t, int)> rec = [&](size_t var, int remaining) {
        if (var == ctx.nvars) {
            for (const Monomial& lm : ctx.leading_monomials)
                if (lm.divides(cur)) return;
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur.exps[var] = static_cast<uint32_t>(e);
            rec(var + 1, remaining - e);
        }
        cur.exps[var] = 0;
    };
    rec(0, d);
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return ctx.order.less(a, b); });
    return out;
}

int dimension(const GroebnerContext& ctx) {
    if (ctx.is_unit_ideal()) throw EmptySchemeError();
    size_t n = ctx.nvars;
    // S is independent iff no leading monomial has support inside S
    int best = 0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool independent = true;
        for (const Monomial& lm : ctx.leading_monomials) {
            bool inside = true;
            for (size_t v = 0; v < n; ++v) {
                if (lm.exps[v] > 0 && !(mask & (1u << v))) {
                    inside = false;
                    break;
                }
            }
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;
}

}  // namespace varcert
