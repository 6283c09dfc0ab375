#include "edsw/ratexpr.hpp"

#include "edsw/config.hpp"
#include "edsw/errors.hpp"

#include <algorithm>

namespace edsw {

RatExpr::RatExpr(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.chart(), 1)) {}

RatExpr::RatExpr(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    ensure_same_chart(num_.chart(), den_.chart());
    if (den_.is_zero())
        throw PoleError("zero denominator");
    normalize();
}

void RatExpr::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.chart(), 1);
        return;
    }
    // cancel common monomial factor
    Mono lo(num_.chart()->nsyms(), 0);
    bool first = true;
    auto scan = [&](const Poly& p) {
        for (const auto& [m, c] : p.terms()) {
            if (first) {
                lo = m;
                first = false;
            } else {
                for (std::size_t i = 0; i < lo.size(); ++i)
                    lo[i] = std::min(lo[i], m[i]);
            }
        }
    };
    scan(num_);
    scan(den_);
    bool any = std::any_of(lo.begin(), lo.end(), [](std::uint32_t e) { return e != 0; });
    if (any) {
        Poly shift(num_.chart());
        shift.add_term(lo, Rat(1));
        num_ = *Poly::div_exact(num_, shift);
        den_ = *Poly::div_exact(den_, shift);
    }
    if (auto c = den_.as_constant()) {
        num_ = num_ * (Rat(1) / *c);
        den_ = Poly::constant(num_.chart(), 1);
        return;
    }
    // size guard: the reduction is a performance knob, so skip it when the
    // gcd itself would dominate
    if (config::gcd_reduction() &&
        num_.terms().size() * den_.terms().size() <= 20000) {
        Poly g = Poly::gcd(num_, den_);
        if (!g.as_constant()) {
            num_ = *Poly::div_exact(num_, g);
            den_ = *Poly::div_exact(den_, g);
        }
    }
    // deterministic scale: primitive denominator with positive leading term
    Rat k = den_.content();
    if (den_.lead_sign() < 0)
        k = -k;
    if (k != 1) {
        Rat inv = Rat(1) / k;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
    if (auto c = den_.as_constant()) {
        num_ = num_ * (Rat(1) / *c);
        den_ = Poly::constant(num_.chart(), 1);
    }
}

std::optional<Rat> RatExpr::as_constant() const {
    auto n = num_.as_constant();
    auto d = den_.as_constant();
    if (n && d)
        return *n / *d;
    return std::nullopt;
}

bool RatExpr::is_polynomial() const {
    return den_.as_constant().has_value();
}

bool RatExpr::depends_on(std::size_t sym) const {
    return num_.depends_on(sym) || den_.depends_on(sym);
}

RatExpr RatExpr::operator-() const {
    RatExpr r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatExpr operator+(const RatExpr& a, const RatExpr& b) {
    return RatExpr(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatExpr operator-(const RatExpr& a, const RatExpr& b) {
    return RatExpr(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatExpr operator*(const RatExpr& a, const RatExpr& b) {
    return RatExpr(a.num_ * b.num_, a.den_ * b.den_);
}

RatExpr operator/(const RatExpr& a, const RatExpr& b) {
    if (b.is_zero())
        throw PoleError("division by the zero expression");
    return RatExpr(a.num_ * b.den_, a.den_ * b.num_);
}

RatExpr RatExpr::pow(long e) const {
    if (e == 0)
        return RatExpr::constant(chart(), 1);
    if (is_zero()) {
        if (e > 0)
            return *this;
        throw PoleError("zero expression raised to a negative power");
    }
    std::uint32_t n = static_cast<std::uint32_t>(e < 0 ? -e : e);
    RatExpr r;
    if (e > 0) {
        r.num_ = num_.pow(n);
        r.den_ = den_.pow(n);
    } else {
        r.num_ = den_.pow(n);
        r.den_ = num_.pow(n);
    }
    return RatExpr(std::move(r.num_), std::move(r.den_));
}

RatExpr RatExpr::pderiv(std::size_t sym) const {
    // (n/d)' = (n'd - n d')/d^2
    return RatExpr(num_.derivative(sym) * den_ - num_ * den_.derivative(sym), den_ * den_);
}

RatExpr RatExpr::pderiv(std::string_view name) const {
    auto idx = chart()->find(name);
    if (!idx)
        throw UnknownIdentifier(std::string(name));
    return pderiv(*idx);
}

namespace {

RatExpr subst_poly(const Poly& p, std::size_t sym, const RatExpr& value) {
    auto by_pow = p.collect(sym);
    RatExpr acc = RatExpr::zero(p.chart());
    for (const auto& [e, coeff] : by_pow)
        acc += RatExpr(coeff) * value.pow(static_cast<long>(e));
    return acc;
}

}  // namespace

RatExpr RatExpr::substitute(std::size_t sym, const RatExpr& value) const {
    ensure_same_chart(chart(), value.chart());
    RatExpr n = subst_poly(num_, sym, value);
    RatExpr d = subst_poly(den_, sym, value);
    if (d.is_zero())
        throw PoleError("substitution makes the denominator vanish identically");
    return n / d;
}

bool RatExpr::equal(const RatExpr& a, const RatExpr& b) {
    ensure_same_chart(a.chart(), b.chart());
    return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
}

Rat RatExpr::eval(const std::map<std::string, Rat>& point) const {
    std::vector<Rat> v(chart()->nsyms());
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto it = point.find(chart()->symbol(i));
        if (it == point.end()) {
            if (depends_on(i))
                throw Error("missing value for '" + chart()->symbol(i) + "'");
            continue;
        }
        v[i] = it->second;
    }
    Rat d = den_.eval(v);
    if (d == 0)
        throw PoleError("denominator vanishes at the evaluation point");
    return num_.eval(v) / d;
}

RatExpr RatExpr::map_to(const ChartPtr& target) const {
    return RatExpr(num_.map_to(target), den_.map_to(target));
}

std::string RatExpr::str() const {
    if (is_polynomial())
        return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

int RatExpr::compare(const RatExpr& a, const RatExpr& b) {
    int c = Poly::compare(a.num_, b.num_);
    if (c != 0)
        return c;
    return Poly::compare(a.den_, b.den_);
}

}  // namespace edsw
