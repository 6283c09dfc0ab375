#include "edsw/poly.hpp"

#include "edsw/errors.hpp"

#include <algorithm>
#include <sstream>

namespace edsw {

namespace {

Int gcd_int(Int a, Int b) {
    return boost::multiprecision::gcd(a, b);
}

Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0)
        return 0;
    return a / gcd_int(a, b) * b;
}

}  // namespace

void Poly::add_term(const Mono& m, const Rat& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Poly Poly::constant(ChartPtr chart, Rat value) {
    Poly p(std::move(chart));
    if (value != 0)
        p.terms_.emplace(Mono(p.chart_->nsyms(), 0), std::move(value));
    return p;
}

Poly Poly::symbol(ChartPtr chart, std::size_t sym) {
    Poly p(std::move(chart));
    Mono m(p.chart_->nsyms(), 0);
    m.at(sym) = 1;
    p.terms_.emplace(std::move(m), Rat(1));
    return p;
}

Poly Poly::symbol(ChartPtr chart, std::string_view name) {
    auto idx = chart->find(name);
    if (!idx)
        throw UnknownIdentifier(std::string(name));
    return symbol(std::move(chart), *idx);
}

std::optional<Rat> Poly::as_constant() const {
    if (terms_.empty())
        return Rat(0);
    if (terms_.size() != 1)
        return std::nullopt;
    const auto& [m, c] = *terms_.begin();
    for (auto e : m)
        if (e != 0)
            return std::nullopt;
    return c;
}

bool Poly::depends_on(std::size_t sym) const {
    for (const auto& [m, c] : terms_)
        if (m[sym] != 0)
            return true;
    return false;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int td = 0;
        for (auto e : m)
            td += static_cast<int>(e);
        d = std::max(d, td);
    }
    return d;
}

int Poly::degree_in(std::size_t sym) const {
    int d = is_zero() ? -1 : 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, static_cast<int>(m[sym]));
    return d;
}

Poly Poly::operator-() const {
    Poly r(chart_);
    for (const auto& [m, c] : terms_)
        r.terms_.emplace(m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    ensure_same_chart(chart_, o.chart_);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    ensure_same_chart(chart_, o.chart_);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    ensure_same_chart(a.chart_, b.chart_);
    Poly r(a.chart_);
    Mono m(a.chart_->nsyms(), 0);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < m.size(); ++i)
                m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::operator*(const Rat& k) const {
    Poly r(chart_);
    if (k == 0)
        return r;
    for (const auto& [m, c] : terms_)
        r.terms_.emplace(m, c * k);
    return r;
}

Poly Poly::pow(std::uint32_t e) const {
    Poly r = Poly::constant(chart_, 1);
    Poly base = *this;
    while (e) {
        if (e & 1u)
            r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

Poly Poly::derivative(std::size_t sym) const {
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
        if (m[sym] == 0)
            continue;
        Mono d = m;
        d[sym] -= 1;
        r.add_term(d, c * Rat(m[sym]));
    }
    return r;
}

std::map<std::uint32_t, Poly> Poly::collect(std::size_t sym) const {
    std::map<std::uint32_t, Poly> out;
    for (const auto& [m, c] : terms_) {
        Mono rest = m;
        std::uint32_t e = rest[sym];
        rest[sym] = 0;
        auto [it, inserted] = out.try_emplace(e, chart_);
        it->second.add_term(rest, c);
    }
    return out;
}

Rat Poly::content() const {
    Int g = 0, l = 1;
    for (const auto& [m, c] : terms_) {
        g = gcd_int(g, boost::multiprecision::abs(rat_num(c)));
        l = lcm_int(l, rat_den(c));
    }
    if (g == 0)
        return Rat(0);
    return Rat(g, l);
}

int Poly::lead_sign() const {
    if (terms_.empty())
        return 0;
    const Rat& c = terms_.rbegin()->second;  // lex-greatest monomial
    return c > 0 ? 1 : -1;
}

Poly Poly::primitive() const {
    if (is_zero())
        return *this;
    Rat k = content();
    if (lead_sign() < 0)
        k = -k;
    Poly r(chart_);
    for (const auto& [m, c] : terms_)
        r.terms_.emplace(m, c / k);
    return r;
}

std::optional<Poly> Poly::div_exact(const Poly& a, const Poly& b) {
    ensure_same_chart(a.chart(), b.chart());
    if (b.is_zero())
        return std::nullopt;
    Poly rem = a;
    Poly quot(a.chart_);
    const auto& [lbm, lbc] = *b.terms_.rbegin();
    while (!rem.is_zero()) {
        const auto& [lrm, lrc] = *rem.terms_.rbegin();
        Mono q(lrm.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (lrm[i] < lbm[i])
                return std::nullopt;
            q[i] = lrm[i] - lbm[i];
        }
        Rat qc = lrc / lbc;
        Poly qt(a.chart_);
        qt.terms_.emplace(q, qc);
        quot += qt;
        rem -= qt * b;
    }
    return quot;
}

namespace {

// pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b in the variable `sym`
Poly pseudo_rem(Poly a, const Poly& b, std::size_t sym) {
    int db = b.degree_in(sym);
    auto bc = b.collect(sym);
    Poly lb = bc.at(static_cast<std::uint32_t>(db));
    int steps_left = a.degree_in(sym) - db + 1;
    while (!a.is_zero() && a.degree_in(sym) >= db) {
        int da = a.degree_in(sym);
        auto ac = a.collect(sym);
        Poly la = ac.at(static_cast<std::uint32_t>(da));
        Poly xshift = Poly::symbol(a.chart(), sym).pow(static_cast<std::uint32_t>(da - db));
        a = a * lb - la * xshift * b;
        --steps_left;
    }
    // pad the scale factor so the result is exactly lc(b)^(delta+1) * rem
    if (steps_left > 0)
        a = a * lb.pow(static_cast<std::uint32_t>(steps_left));
    return a;
}

Poly gcd_impl(const Poly& a, const Poly& b);

Poly gcd_many(const ChartPtr& chart, const std::map<std::uint32_t, Poly>& polys) {
    Poly g(chart);
    for (const auto& [e, p] : polys) {
        g = gcd_impl(g, p);
        if (g.as_constant() && !g.is_zero())
            break;
    }
    return g;
}

Poly lead_coeff(const Poly& p, std::size_t sym) {
    return p.collect(sym).rbegin()->second;
}

// primitive part with respect to `sym` (divide out the gcd of the coefficients)
Poly pp_main(const Poly& p, std::size_t sym) {
    Poly cont = gcd_many(p.chart(), p.collect(sym));
    auto q = Poly::div_exact(p, cont);
    return q ? *q : p;
}

Poly gcd_impl(const Poly& a, const Poly& b) {
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.as_constant() || b.as_constant())
        return Poly::constant(a.chart(), 1);
    // main variable: highest-index symbol present in either operand
    std::size_t n = a.chart()->nsyms();
    std::size_t main = n;
    for (std::size_t i = n; i-- > 0;) {
        if (a.depends_on(i) || b.depends_on(i)) {
            main = i;
            break;
        }
    }
    Poly cont_a = gcd_many(a.chart(), a.collect(main));
    Poly cont_b = gcd_many(b.chart(), b.collect(main));
    Poly gcont = gcd_impl(cont_a, cont_b);
    auto exact = [](const Poly& p, const Poly& d) {
        auto q = Poly::div_exact(p, d);
        return q ? *q : p;
    };
    Poly P = exact(a, cont_a), Q = exact(b, cont_b);
    if (P.degree_in(main) < Q.degree_in(main))
        std::swap(P, Q);
    // subresultant PRS
    Poly g = Poly::constant(a.chart(), 1);
    Poly h = Poly::constant(a.chart(), 1);
    while (true) {
        if (Q.degree_in(main) == 0)
            return gcont;  // primitive parts coprime in the main variable
        int delta = P.degree_in(main) - Q.degree_in(main);
        Poly R = pseudo_rem(P, Q, main);
        if (R.is_zero())
            return gcont * pp_main(Q, main).primitive();
        Poly divisor = g * h.pow(static_cast<std::uint32_t>(delta));
        P = Q;
        Q = exact(R, divisor);
        g = lead_coeff(P, main);
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact(g.pow(static_cast<std::uint32_t>(delta)),
                      h.pow(static_cast<std::uint32_t>(delta - 1)));
        }
    }
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
    ensure_same_chart(a.chart(), b.chart());
    Poly g = gcd_impl(a, b).primitive();
    if (g.is_zero())
        return constant(a.chart(), 1);
    if (!div_exact(a, g) || !div_exact(b, g))
        return constant(a.chart(), 1);  // PRS candidate failed verification
    return g;
}

Rat Poly::eval(std::span<const Rat> point) const {
    Rat acc(0);
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e)
                t *= point[i];
        acc += t;
    }
    return acc;
}

Poly Poly::map_to(const ChartPtr& target) const {
    std::vector<std::optional<std::size_t>> where(chart_->nsyms());
    for (std::size_t i = 0; i < chart_->nsyms(); ++i)
        where[i] = target->find(chart_->symbol(i));
    Poly r(target);
    for (const auto& [m, c] : terms_) {
        Mono t(target->nsyms(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            if (!where[i])
                throw UnknownIdentifier(chart_->symbol(i));
            t[*where[i]] += m[i];
        }
        r.add_term(t, c);
    }
    return r;
}

std::string mono_str(const Chart& chart, const Mono& m) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!first)
            os << "*";
        os << chart.symbol(i);
        if (m[i] > 1)
            os << "^" << m[i];
        first = false;
    }
    return os.str();
}

std::string Poly::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    // lex-descending: deterministic, highest monomial first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0)
                a = -a;
        }
        std::string vars = mono_str(*chart_, m);
        if (vars.empty())
            os << rat_str(a);
        else if (a == 1)
            os << vars;
        else
            os << rat_str(a) << "*" << vars;
        first = false;
    }
    return os.str();
}

int Poly::compare(const Poly& a, const Poly& b) {
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first)
            return ia->first < ib->first ? -1 : 1;
        int c = rat_cmp(ia->second, ib->second);
        if (c != 0)
            return c;
    }
    if (ia != a.terms_.end())
        return 1;
    if (ib != b.terms_.end())
        return -1;
    return 0;
}

}  // namespace edsw
