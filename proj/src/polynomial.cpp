#include "varcert/polynomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace varcert {

uint32_t Monomial::degree() const {
    uint32_t d = 0;
    for (uint32_t e : exps) d += e;
    return d;
}

bool Monomial::divides(const Monomial& m) const {
    if (exps.size() != m.exps.size()) return false;
    for (size_t i = 0; i < exps.size(); ++i)
        if (exps[i] > m.exps[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
    Monomial r(*this);
    for (size_t i = 0; i < exps.size(); ++i) r.exps[i] += m.exps[i];
    return r;
}

Monomial Monomial::quotient(const Monomial& m) const {
    Monomial r(*this);
    for (size_t i = 0; i < exps.size(); ++i) r.exps[i] -= m.exps[i];
    return r;
}

Monomial Monomial::lcm(const Monomial& m) const {
    Monomial r(*this);
    for (size_t i = 0; i < exps.size(); ++i) r.exps[i] = std::max(r.exps[i], m.exps[i]);
    return r;
}

TermOrder TermOrder::lex(size_t nvars) {
    TermOrder o;
    o.kind = OrderKind::Lex;
    o.priority.resize(nvars);
    std::iota(o.priority.begin(), o.priority.end(), 0);
    return o;
}

TermOrder TermOrder::grevlex(size_t nvars) {
    TermOrder o;
    o.kind = OrderKind::GrevLex;
    o.priority.resize(nvars);
    std::iota(o.priority.begin(), o.priority.end(), 0);
    return o;
}

std::strong_ordering TermOrder::compare(const Monomial& a, const Monomial& b) const {
    if (kind == OrderKind::Lex) {
        for (int v : priority) {
            if (a.exps[v] != b.exps[v])
                return a.exps[v] < b.exps[v] ? std::strong_ordering::less
                                             : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }
    uint32_t da = a.degree(), db = b.degree();
    if (da != db) return da < db ? std::strong_ordering::less : std::strong_ordering::greater;
    // equal degree: smaller exponent on the least variable wins
    for (auto it = priority.rbegin(); it != priority.rend(); ++it) {
        int v = *it;
        if (a.exps[v] != b.exps[v])
            return a.exps[v] > b.exps[v] ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

bool canonical_monomial_less(const Monomial& a, const Monomial& b) {
    uint32_t da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (size_t i = a.exps.size(); i-- > 0;) {
        if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
    }
    return false;
}

Polynomial Polynomial::constant(size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    if (rat_sign(c) != 0) p.terms_.emplace_back(Monomial(nvars), c);
    return p;
}

Polynomial Polynomial::variable(size_t nvars, size_t i) {
    if (i >= nvars) throw std::invalid_argument("variable index out of range");
    Monomial m(nvars);
    m.exps[i] = 1;
    Polynomial p(nvars);
    p.terms_.emplace_back(std::move(m), Rational(1));
    return p;
}

Polynomial Polynomial::term(size_t nvars, Monomial m, const Rational& c) {
    if (m.nvars() != nvars) throw std::invalid_argument("monomial/ring mismatch");
    Polynomial p(nvars);
    if (rat_sign(c) != 0) p.terms_.emplace_back(std::move(m), c);
    return p;
}

std::optional<int> Polynomial::total_degree() const {
    if (terms_.empty()) return std::nullopt;
    uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return static_cast<int>(d);
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto& t, const Monomial& k) {
                                   return canonical_monomial_less(t.first, k);
                               });
    if (it != terms_.end() && it->first == m) return it->second;
    return Rational(0);
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (m.nvars() != nvars_) throw std::invalid_argument("monomial/ring mismatch");
    if (rat_sign(c) == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto& t, const Monomial& k) {
                                   return canonical_monomial_less(t.first, k);
                               });
    if (it != terms_.end() && it->first == m) {
        it->second += c;
        if (rat_sign(it->second) == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {m, c});
    }
}

Polynomial Polynomial::operator+(const Polynomial& g) const {
    if (nvars_ != g.nvars_) throw std::invalid_argument("ring mismatch in +");
    Polynomial r(nvars_);
    r.terms_.reserve(terms_.size() + g.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < g.terms_.size()) {
        if (terms_[i].first == g.terms_[j].first) {
            Rational c = terms_[i].second + g.terms_[j].second;
            if (rat_sign(c) != 0) r.terms_.emplace_back(terms_[i].first, c);
            ++i, ++j;
        } else if (canonical_monomial_less(terms_[i].first, g.terms_[j].first)) {
            r.terms_.push_back(terms_[i++]);
        } else {
            r.terms_.push_back(g.terms_[j++]);
        }
    }
    while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
    while (j < g.terms_.size()) r.terms_.push_back(g.terms_[j++]);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& g) const { return *this + (-g); }

Polynomial Polynomial::operator*(const Polynomial& g) const {
    if (nvars_ != g.nvars_) throw std::invalid_argument("ring mismatch in *");
    std::map<Monomial, Rational, decltype(&canonical_monomial_less)> acc(
        &canonical_monomial_less);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : g.terms_) {
            Monomial m = ma * mb;
            auto [it, fresh] = acc.try_emplace(std::move(m), ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    }
    Polynomial r(nvars_);
    for (auto& [m, c] : acc)
        if (rat_sign(c) != 0) r.terms_.emplace_back(m, c);
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(nvars_);
    if (rat_sign(c) == 0) return r;
    r.terms_ = terms_;
    for (auto& [m, k] : r.terms_) k *= c;
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = Polynomial::constant(nvars_, Rational(1));
    Polynomial base(*this);
    while (e > 0) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("dimension mismatch in eval");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < nvars_; ++i) {
            for (uint32_t e = 0; e < m.exps[i]; ++e) t *= point[i];
        }
        acc += t;
    }
    return acc;
}

double Polynomial::eval_double(const std::vector<double>& point) const {
    double acc = 0;
    for (const auto& [m, c] : terms_) {
        double t = rat_to_double(c);
        for (size_t i = 0; i < nvars_; ++i) {
            for (uint32_t e = 0; e < m.exps[i]; ++e) t *= point[i];
        }
        acc += t;
    }
    return acc;
}

Polynomial Polynomial::translated(const std::vector<Rational>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("dimension mismatch in translate");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        Polynomial t = Polynomial::constant(nvars_, c);
        for (size_t i = 0; i < nvars_; ++i) {
            if (m.exps[i] == 0) continue;
            Polynomial shifted =
                Polynomial::variable(nvars_, i) + Polynomial::constant(nvars_, point[i]);
            t = t * shifted.pow(m.exps[i]);
        }
        r = r + t;
    }
    return r;
}

Polynomial Polynomial::derivative(size_t var) const {
    if (var >= nvars_) throw std::invalid_argument("derivative: variable out of range");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m.exps[var] == 0) continue;
        Monomial d = m;
        d.exps[var] -= 1;
        r.add_term(d, c * Rational(m.exps[var]));
    }
    return r;
}

const std::pair<Monomial, Rational>& Polynomial::leading_term(const TermOrder& ord) const {
    if (terms_.empty()) throw std::invalid_argument("leading_term of zero polynomial");
    size_t best = 0;
    for (size_t i = 1; i < terms_.size(); ++i) {
        if (ord.less(terms_[best].first, terms_[i].first)) best = i;
    }
    return terms_[best];
}

Polynomial Polynomial::monic(const TermOrder& ord) const {
    const Rational& lc = leading_term(ord).second;
    return scaled(1 / lc);
}

Polynomial Polynomial::integer_normalized() const {
    if (terms_.empty()) return *this;
    mpz_class den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        den_lcm = den_lcm / g * c.get_den();
    }
    Polynomial r = scaled(Rational(den_lcm));
    mpz_class content = 0;
    for (const auto& [m, c] : r.terms_) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), c.get_num().get_mpz_t());
        content = g;
    }
    if (content != 0) r = r.scaled(Rational(1, content));
    if (rat_sign(r.terms_.back().second) < 0) r = -r;
    return r;
}

std::string to_string(const Monomial& m, const std::vector<std::string>& vars) {
    std::string s;
    for (size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (m.exps[i] > 1) s += "^" + std::to_string(m.exps[i]);
    }
    return s.empty() ? "1" : s;
}

std::string to_string(const Polynomial& f, const std::vector<std::string>& vars) {
    if (f.is_zero()) return "0";
    std::string s;
    // print leading canonical term first
    const auto& ts = f.terms();
    for (size_t idx = ts.size(); idx-- > 0;) {
        const auto& [m, c] = ts[idx];
        Rational a = c;
        bool first = s.empty();
        if (rat_sign(a) < 0) {
            s += first ? "-" : " - ";
            a = -a;
        } else if (!first) {
            s += " + ";
        }
        std::string ms = to_string(m, vars);
        if (ms == "1") {
            s += rat_to_string(a);
        } else if (a == 1) {
            s += ms;
        } else {
            s += rat_to_string(a) + "*" + ms;
        }
    }
    return s;
}

}  // namespace varcert
