#pragma once

#include "edsw/poly.hpp"

#include <map>
#include <string>

namespace edsw {

// Exact multivariate rational function: numerator/denominator pair over a
// fixed chart. Equality of a/b and p/q is decided by expanding a*q - p*b;
// reduction to lowest terms is a performance knob, never a semantic one.
class RatExpr {
public:
    RatExpr() = default;  // detached; only valid as a moved-from shell
    explicit RatExpr(Poly num);
    RatExpr(Poly num, Poly den);

    static RatExpr zero(ChartPtr chart) { return RatExpr(Poly(std::move(chart))); }
    static RatExpr constant(ChartPtr chart, Rat v) { return RatExpr(Poly::constant(std::move(chart), std::move(v))); }
    static RatExpr symbol(ChartPtr chart, std::string_view name) { return RatExpr(Poly::symbol(std::move(chart), name)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const ChartPtr& chart() const { return num_.chart(); }

    bool is_zero() const { return num_.is_zero(); }
    std::optional<Rat> as_constant() const;
    // true when the denominator is constant (the value is a polynomial)
    bool is_polynomial() const;
    bool depends_on(std::size_t sym) const;

    RatExpr operator-() const;
    friend RatExpr operator+(const RatExpr& a, const RatExpr& b);
    friend RatExpr operator-(const RatExpr& a, const RatExpr& b);
    friend RatExpr operator*(const RatExpr& a, const RatExpr& b);
    friend RatExpr operator/(const RatExpr& a, const RatExpr& b);  // throws PoleError on zero divisor
    RatExpr& operator+=(const RatExpr& o) { *this = *this + o; return *this; }
    RatExpr& operator-=(const RatExpr& o) { *this = *this - o; return *this; }
    RatExpr& operator*=(const RatExpr& o) { *this = *this * o; return *this; }

    RatExpr pow(long e) const;

    RatExpr pderiv(std::size_t sym) const;
    RatExpr pderiv(std::string_view name) const;

    RatExpr substitute(std::size_t sym, const RatExpr& value) const;

    // Exact: cross-multiplied difference expands to the zero polynomial.
    static bool equal(const RatExpr& a, const RatExpr& b);

    Rat eval(const std::map<std::string, Rat>& point) const;  // throws PoleError

    RatExpr map_to(const ChartPtr& target) const;

    std::string str() const;

    static int compare(const RatExpr& a, const RatExpr& b);  // deterministic order

private:
    void normalize();
    Poly num_, den_;
};

}  // namespace edsw
