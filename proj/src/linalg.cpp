#include "edsw/linalg.hpp"

#include "edsw/errors.hpp"

namespace edsw {

namespace {

struct Echelon {
    std::vector<std::vector<Poly>> rows;
    std::vector<std::size_t> pivot_col;  // per pivot row
};

// fraction-free (Bareiss) forward elimination, pivots in column order
Echelon eliminate(const RatMatrix& m) {
    Echelon e;
    if (m.empty())
        return e;
    std::size_t ncols = m[0].size();
    ChartPtr chart = m[0][0].chart();
    for (const auto& row : m) {
        std::vector<Poly> r;
        Poly common = Poly::constant(chart, 1);
        for (const auto& x : row)
            common = common * (*Poly::div_exact(x.den(), Poly::gcd(common, x.den()))) ;
        for (const auto& x : row)
            r.push_back(x.num() * *Poly::div_exact(common, x.den()));
        e.rows.push_back(std::move(r));
    }
    std::size_t prow = 0;
    Poly prev = Poly::constant(chart, 1);
    for (std::size_t col = 0; col < ncols && prow < e.rows.size(); ++col) {
        std::size_t sel = prow;
        while (sel < e.rows.size() && e.rows[sel][col].is_zero())
            ++sel;
        if (sel == e.rows.size())
            continue;
        std::swap(e.rows[prow], e.rows[sel]);
        const Poly piv = e.rows[prow][col];
        for (std::size_t i = prow + 1; i < e.rows.size(); ++i) {
            if (e.rows[i][col].is_zero() ) {
                // still rescale for the Bareiss division invariant
                for (std::size_t j = 0; j < ncols; ++j) {
                    Poly t = piv * e.rows[i][j];
                    auto q = Poly::div_exact(t, prev);
                    e.rows[i][j] = q ? *q : t;
                }
                continue;
            }
            const Poly fac = e.rows[i][col];
            for (std::size_t j = 0; j < ncols; ++j) {
                Poly t = piv * e.rows[i][j] - fac * e.rows[prow][j];
                auto q = Poly::div_exact(t, prev);
                e.rows[i][j] = q ? *q : t;
            }
        }
        prev = piv;
        e.pivot_col.push_back(col);
        ++prow;
    }
    e.rows.resize(prow);  // keep pivot rows only
    return e;
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
    return eliminate(m).pivot_col.size();
}

void normalize_row(RatRow& v) {
    if (v.empty())
        return;
    ChartPtr chart = v[0].chart();
    Poly common = Poly::constant(chart, 1);
    for (const auto& x : v)
        common = common * (*Poly::div_exact(x.den(), Poly::gcd(common, x.den())));
    std::vector<Poly> cleared;
    cleared.reserve(v.size());
    for (const auto& x : v)
        cleared.push_back(x.num() * *Poly::div_exact(common, x.den()));
    Poly content(chart);
    for (const auto& p : cleared) {
        content = Poly::gcd(content, p);
        if (content.as_constant() && !content.is_zero())
            break;
    }
    if (!content.is_zero() && !content.as_constant()) {
        for (auto& p : cleared)
            p = *Poly::div_exact(p, content);
    }
    Rat k(1);
    for (const auto& p : cleared) {
        if (!p.is_zero()) {
            k = p.content();
            if (p.lead_sign() < 0)
                k = -k;
            break;
        }
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = RatExpr(cleared[i] * (Rat(1) / k));
}

std::vector<RatRow> null_space(const RatMatrix& m) {
    if (m.empty())
        return {};
    std::size_t ncols = m[0].size();
    ChartPtr chart = m[0][0].chart();
    Echelon e = eliminate(m);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : e.pivot_col)
        is_pivot[c] = true;
    std::vector<RatRow> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free])
            continue;
        RatRow v(ncols, RatExpr::zero(chart));
        v[free] = RatExpr::constant(chart, 1);
        for (std::size_t r = e.pivot_col.size(); r-- > 0;) {
            std::size_t pc = e.pivot_col[r];
            RatExpr acc = RatExpr::zero(chart);
            for (std::size_t j = pc + 1; j < ncols; ++j) {
                if (!e.rows[r][j].is_zero() && !v[j].is_zero())
                    acc += RatExpr(e.rows[r][j]) * v[j];
            }
            v[pc] = -acc / RatExpr(e.rows[r][pc]);
        }
        normalize_row(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace edsw
