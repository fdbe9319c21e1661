#include "varcert/jet.hpp"

namespace varcert {

Jet::Jet(int m, std::vector<Rational> coeffs) : order(m), c(std::move(coeffs)) {
    if (m < 1) throw std::invalid_argument("jet order must be >= 1");
    if (c.size() != static_cast<size_t>(m))
        throw std::invalid_argument("jet coefficient count must equal the order");
}

Jet Jet::constant(int m, const Rational& a) {
    Jet j(m);
    j.c[0] = a;
    return j;
}

Jet Jet::eps(int m) {
    if (m < 2) throw std::invalid_argument("eps needs order >= 2");
    Jet j(m);
    j.c[1] = 1;
    return j;
}

bool Jet::is_zero() const {
    for (const auto& a : c)
        if (rat_sign(a) != 0) return false;
    return true;
}

Jet Jet::operator+(const Jet& b) const {
    if (order != b.order) throw std::invalid_argument("jet order mismatch in +");
    Jet r(order);
    for (int i = 0; i < order; ++i) r.c[i] = c[i] + b.c[i];
    return r;
}

Jet Jet::operator-(const Jet& b) const {
    if (order != b.order) throw std::invalid_argument("jet order mismatch in -");
    Jet r(order);
    for (int i = 0; i < order; ++i) r.c[i] = c[i] - b.c[i];
    return r;
}

Jet Jet::operator*(const Jet& b) const {
    if (order != b.order) throw std::invalid_argument("jet order mismatch in *");
    Jet r(order);
    for (int i = 0; i < order; ++i) {
        if (rat_sign(c[i]) == 0) continue;
        for (int j = 0; i + j < order; ++j) {
            if (rat_sign(b.c[j]) == 0) continue;
            r.c[i + j] += c[i] * b.c[j];
        }
    }
    return r;
}

Jet Jet::scaled(const Rational& k) const {
    Jet r(order);
    for (int i = 0; i < order; ++i) r.c[i] = c[i] * k;
    return r;
}

Jet Jet::pow(unsigned e) const {
    Jet r = Jet::constant(order, Rational(1));
    Jet base = *this;
    while (e > 0) {
        if (e & 1u) r = r * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return r;
}

std::optional<std::pair<int, Rational>> Jet::leading() const {
    for (int i = 0; i < order; ++i)
        if (rat_sign(c[i]) != 0) return std::make_pair(i, c[i]);
    return std::nullopt;
}

bool Jet::nonneg() const {
    auto l = leading();
    return !l || rat_sign(l->second) > 0;
}

Jet Jet::truncated(int m2) const {
    if (m2 < 1 || m2 > order) throw std::invalid_argument("bad truncation order");
    Jet r(m2);
    for (int i = 0; i < m2; ++i) r.c[i] = c[i];
    return r;
}

Jet Jet::negated_parameter() const {
    Jet r(*this);
    for (int i = 1; i < order; i += 2) r.c[i] = -r.c[i];
    return r;
}

ArcHom::ArcHom(std::vector<Rational> point, std::vector<Jet> imgs)
    : basepoint(std::move(point)), images(std::move(imgs)) {
    if (basepoint.size() != images.size())
        throw std::invalid_argument("arc: one image jet per variable required");
    if (images.empty()) throw std::invalid_argument("arc: empty variable set");
    order = images[0].order;
    for (size_t i = 0; i < images.size(); ++i) {
        if (images[i].order != order) throw std::invalid_argument("arc: mixed jet orders");
        if (images[i].c[0] != basepoint[i])
            throw std::invalid_argument("arc: image constant term must equal the basepoint");
    }
}

ArcHom ArcHom::constant_arc(const std::vector<Rational>& point, int m) {
    std::vector<Jet> imgs;
    imgs.reserve(point.size());
    for (const auto& p : point) imgs.push_back(Jet::constant(m, p));
    return ArcHom(point, std::move(imgs));
}

Jet arc_apply(const ArcHom& arc, const Polynomial& f) {
    if (f.nvars() != arc.nvars()) throw std::invalid_argument("arc_apply: dimension mismatch");
    int m = arc.order;
    // cache powers of each image jet up to the largest exponent used
    std::vector<std::vector<Jet>> powers(arc.nvars());
    for (size_t v = 0; v < arc.nvars(); ++v)
        powers[v].push_back(Jet::constant(m, Rational(1)));
    Jet acc(m);
    for (const auto& [mon, coeff] : f.terms()) {
        Jet t = Jet::constant(m, coeff);
        for (size_t v = 0; v < arc.nvars(); ++v) {
            uint32_t e = mon.exps[v];
            if (e == 0) continue;
            while (powers[v].size() <= e)
                powers[v].push_back(powers[v].back() * arc.images[v]);
            t = t * powers[v][e];
        }
        acc = acc + t;
    }
    return acc;
}

bool arc_is_valid(const ArcHom& arc, const GroebnerContext& ctx) {
    if (arc.nvars() != ctx.nvars) return false;
    for (const auto& g : ctx.generators) {
        if (g.is_zero()) continue;
        if (!arc_apply(arc, g).is_zero()) return false;
    }
    return true;
}

ArcHom arc_negate_parameter(const ArcHom& arc) {
    std::vector<Jet> imgs;
    imgs.reserve(arc.images.size());
    for (const auto& j : arc.images) imgs.push_back(j.negated_parameter());
    return ArcHom(arc.basepoint, std::move(imgs));
}

ArcHom arc_truncate(const ArcHom& arc, int m2) {
    std::vector<Jet> imgs;
    imgs.reserve(arc.images.size());
    for (const auto& j : arc.images) imgs.push_back(j.truncated(m2));
    return ArcHom(arc.basepoint, std::move(imgs));
}

}  // namespace varcert
