#pragma once

#include "edsw/chart.hpp"
#include "edsw/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace edsw {

// Exponent vector over all chart symbols (coords then params).
using Mono = std::vector<std::uint32_t>;

// Monomial order: lexicographic with significance increasing along the
// symbol list, so parameters (listed last) dominate. Keeps normalized
// denominators like c - u in the orientation the displays use.
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i])
                return a[i] < b[i];
        return false;
    }
};

using TermMap = std::map<Mono, Rat, MonoLess>;

// Sparse multivariate polynomial with exact rational coefficients.
class Poly {
public:
    Poly() = default;  // detached zero; only valid as a moved-from shell
    explicit Poly(ChartPtr chart) : chart_(std::move(chart)) {}

    static Poly constant(ChartPtr chart, Rat value);
    static Poly symbol(ChartPtr chart, std::size_t sym);
    static Poly symbol(ChartPtr chart, std::string_view name);

    const ChartPtr& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::optional<Rat> as_constant() const;
    bool depends_on(std::size_t sym) const;
    int total_degree() const;                 // -1 for the zero polynomial
    int degree_in(std::size_t sym) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly operator*(const Rat& k) const;

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    Poly pow(std::uint32_t e) const;
    Poly derivative(std::size_t sym) const;

    // Coefficients of powers of `sym`; keys are the powers, values have the
    // `sym` exponent cleared.
    std::map<std::uint32_t, Poly> collect(std::size_t sym) const;

    // gcd(numerators)/lcm(denominators), positive; 0 for the zero polynomial.
    Rat content() const;
    // Divides out content and fixes the sign of the lex-leading coefficient.
    Poly primitive() const;
    int lead_sign() const;  // sign of the lex-leading coefficient (0 if zero)

    static std::optional<Poly> div_exact(const Poly& a, const Poly& b);
    // Verified common divisor of a and b (primitive, positive lead).
    static Poly gcd(const Poly& a, const Poly& b);

    Rat eval(std::span<const Rat> point) const;

    // Rebuild on another chart, matching symbols by name. Throws
    // UnknownIdentifier if a used symbol is missing from the target.
    Poly map_to(const ChartPtr& target) const;

    std::string str() const;

    // deterministic total order (for canonical sorting), not numeric
    static int compare(const Poly& a, const Poly& b);

    void add_term(const Mono& m, const Rat& c);

private:
    ChartPtr chart_;
    TermMap terms_;
};

std::string mono_str(const Chart& chart, const Mono& m);

}  // namespace edsw
