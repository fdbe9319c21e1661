#include "varcert/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace varcert {

std::string rat_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Rational> rat_from_string(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::string t(s);
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        // decimal literal: shift the point out
        std::string digits = t.substr(0, dot) + t.substr(dot + 1);
        size_t frac_len = t.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
        for (size_t i = 0; i < digits.size(); ++i) {
            char c = digits[i];
            if (i == 0 && (c == '-' || c == '+')) continue;
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        }
        mpz_class num;
        if (num.set_str(digits, 10) != 0) return std::nullopt;
        mpz_class den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    mpq_class q;
    if (q.set_str(t, 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return Rational(q);
}

Rational rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: not finite");
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    q.canonicalize();
    return q;
}

static Rational simplest_positive(const Rational& lo, const Rational& hi) {
    // 0 < lo <= hi
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    Rational zq(z);
    if (lo == zq) return lo;
    if (Rational(z + 1) <= hi) return Rational(z + 1);
    Rational f = simplest_positive(1 / (hi - zq), 1 / (lo - zq));
    return zq + 1 / f;
}

Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_in_interval: empty interval");
    if (rat_sign(lo) <= 0 && rat_sign(hi) >= 0) return Rational(0);
    if (rat_sign(hi) < 0) return -simplest_positive(-hi, -lo);
    return simplest_positive(lo, hi);
}

std::optional<Rational> round_rational(const Rational& x, const Rational& radius,
                                       const mpz_class& denominator_cap) {
    Rational r = simplest_in_interval(x - radius, x + radius);
    if (r.get_den() > denominator_cap) return std::nullopt;
    return r;
}

}  // namespace varcert
