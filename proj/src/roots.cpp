#include "varcert/roots.hpp"

#include <algorithm>

namespace varcert {

int unipoly_degree(const UniPoly& p) {
    for (size_t i = p.size(); i-- > 0;)
        if (rat_sign(p[i]) != 0) return static_cast<int>(i);
    return -1;
}

Rational unipoly_eval(const UniPoly& p, const Rational& t) {
    Rational acc(0);
    for (size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
    return acc;
}

UniPoly unipoly_derivative(const UniPoly& p) {
    UniPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
    return d;
}

namespace {

UniPoly trim(UniPoly p) {
    while (!p.empty() && rat_sign(p.back()) == 0) p.pop_back();
    return p;
}

UniPoly unipoly_rem(UniPoly a, const UniPoly& b) {
    a = trim(a);
    int db = unipoly_degree(b);
    while (true) {
        int da = unipoly_degree(a);
        if (da < db) break;
        Rational f = a[da] / b[db];
        int shift = da - db;
        for (int i = 0; i <= db; ++i) a[i + shift] -= f * b[i];
        a = trim(a);
    }
    return a;
}

UniPoly unipoly_div_exact(const UniPoly& a_in, const UniPoly& b) {
    UniPoly rem = trim(a_in);
    int db = unipoly_degree(b);
    int da = unipoly_degree(rem);
    UniPoly q(da >= db ? static_cast<size_t>(da - db) + 1 : 1, Rational(0));
    while (true) {
        int dr = unipoly_degree(rem);
        if (dr < db) break;
        Rational f = rem[dr] / b[db];
        q[dr - db] = f;
        for (int i = 0; i <= db; ++i) rem[i + dr - db] -= f * b[i];
        rem = trim(rem);
    }
    return trim(q);
}

UniPoly unipoly_gcd(UniPoly a, UniPoly b) {
    a = trim(a);
    b = trim(b);
    while (unipoly_degree(b) >= 0) {
        UniPoly r = unipoly_rem(a, b);
        a = b;
        b = r;
    }
    if (unipoly_degree(a) >= 0) {
        Rational lc = a[unipoly_degree(a)];
        for (auto& c : a) c /= lc;
    }
    return a;
}

UniPoly squarefree_part(const UniPoly& p) {
    UniPoly q = trim(p);
    if (unipoly_degree(q) <= 0) return q;
    UniPoly g = unipoly_gcd(q, unipoly_derivative(q));
    if (unipoly_degree(g) <= 0) return q;
    return unipoly_div_exact(q, g);
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
    std::vector<UniPoly> s;
    s.push_back(trim(p));
    s.push_back(trim(unipoly_derivative(p)));
    while (unipoly_degree(s.back()) > 0) {
        UniPoly r = unipoly_rem(s[s.size() - 2], s.back());
        for (auto& c : r) c = -c;
        r = trim(r);
        if (unipoly_degree(r) < 0) break;
        s.push_back(std::move(r));
    }
    return s;
}

int sign_changes(const std::vector<UniPoly>& s, const Rational& t) {
    int changes = 0, prev = 0;
    for (const auto& q : s) {
        int sg = rat_sign(unipoly_eval(q, t));
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++changes;
        prev = sg;
    }
    return changes;
}

// roots of the square-free p in the half-open interval (lo, hi]
int roots_between(const std::vector<UniPoly>& sturm, const Rational& lo, const Rational& hi) {
    return sign_changes(sturm, lo) - sign_changes(sturm, hi);
}

std::vector<RootInterval> isolate(const UniPoly& sf, const std::vector<UniPoly>& sturm) {
    std::vector<RootInterval> out;
    int deg = unipoly_degree(sf);
    if (deg <= 0) return out;
    Rational bound(1);
    for (int i = 0; i < deg; ++i) {
        Rational r = abs(sf[i] / sf[deg]);
        if (r > bound) bound = r;
    }
    bound += 1;
    std::vector<RootInterval> stack{{-bound, bound}};
    while (!stack.empty()) {
        RootInterval iv = stack.back();
        stack.pop_back();
        int count = roots_between(sturm, iv.lo, iv.hi);
        if (count <= 0) continue;
        if (count == 1) {
            out.push_back(iv);
            continue;
        }
        Rational mid = (iv.lo + iv.hi) / 2;
        stack.push_back({iv.lo, mid});
        stack.push_back({mid, iv.hi});
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const UniPoly& p_in) {
    UniPoly sf = squarefree_part(p_in);
    if (unipoly_degree(sf) <= 0) return {};
    auto sturm = sturm_sequence(sf);
    return isolate(sf, sturm);
}

std::vector<Rational> rational_roots(const UniPoly& p, const mpz_class& den_cap) {
    std::vector<Rational> out;
    UniPoly sf = squarefree_part(p);
    if (unipoly_degree(sf) < 0) return out;  // zero polynomial; caller decides
    if (unipoly_degree(sf) == 0) return out;
    auto sturm = sturm_sequence(sf);
    // a rational with denominator <= cap is unique in an interval narrower
    // than 1/cap^2, so refine that far and test the simplest candidate
    Rational width_target = Rational(1) / Rational(2 * den_cap * den_cap);
    for (auto iv : isolate(sf, sturm)) {
        while (iv.hi - iv.lo > width_target) {
            Rational mid = (iv.lo + iv.hi) / 2;
            if (rat_sign(unipoly_eval(sf, mid)) == 0) {
                out.push_back(mid);
                break;
            }
            if (roots_between(sturm, iv.lo, mid) == 1)
                iv.hi = mid;
            else
                iv.lo = mid;
        }
        if (!(iv.hi - iv.lo > width_target)) {
            Rational cand = simplest_in_interval(iv.lo, iv.hi);
            if (cand.get_den() <= den_cap && rat_sign(unipoly_eval(sf, cand)) == 0)
                out.push_back(cand);
            else if (rat_sign(unipoly_eval(sf, iv.hi)) == 0 && iv.hi.get_den() <= den_cap)
                out.push_back(iv.hi);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace varcert
