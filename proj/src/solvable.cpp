#include "edsw/solvable.hpp"

#include "edsw/errors.hpp"

#include <sstream>

namespace edsw {

namespace {

std::vector<std::string> default_labels(std::size_t p) {
    // paper order: first listed field is X_p
    std::vector<std::string> out;
    for (std::size_t i = 0; i < p; ++i)
        out.push_back("X" + std::to_string(p - i));
    return out;
}

// throws NotDirectSum with the vanishing combination of the fields
void check_direct_sum(const DiffForm& omega, const std::vector<VectorField>& fields,
                      const std::vector<std::string>& labels) {
    const ChartPtr& chart = omega.chart();
    std::size_t n = chart->dim();
    std::vector<VectorField> ker = kernel(omega);
    RatMatrix rows;
    for (const auto& f : fields) {
        RatRow row;
        for (std::size_t i = 0; i < n; ++i)
            row.push_back(f.coeff(i));
        rows.push_back(std::move(row));
    }
    for (const auto& f : ker) {
        RatRow row;
        for (std::size_t i = 0; i < n; ++i)
            row.push_back(f.coeff(i));
        rows.push_back(std::move(row));
    }
    if (rank(rows) == n)
        return;
    // left null vector: lambda with sum lambda_i row_i = 0
    RatMatrix t(rows[0].size(), RatRow(rows.size(), RatExpr::zero(chart)));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            t[j][i] = rows[i][j];
    for (auto& lambda : null_space(t)) {
        RatRow head(lambda.begin(), lambda.begin() + static_cast<std::ptrdiff_t>(fields.size()));
        bool involves_fields = false;
        for (const auto& c : head)
            if (!c.is_zero())
                involves_fields = true;
        if (!involves_fields)
            continue;
        normalize_row(head);
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < head.size(); ++i) {
            if (head[i].is_zero())
                continue;
            if (!first)
                os << " + ";
            if (auto c = head[i].as_constant(); c && *c == 1)
                os << labels[i];
            else
                os << "(" << head[i].str() << ")*" << labels[i];
            first = false;
        }
        throw NotDirectSum("fields do not complement ker Omega", os.str());
    }
    throw NotDirectSum("fields do not complement ker Omega", "(dependent kernel basis)");
}

// L = ell * target; returns ell or the residual that spoils proportionality
std::pair<RatExpr, DiffForm> proportionality(const DiffForm& lie, const DiffForm& target) {
    const ChartPtr& chart = target.chart();
    RatExpr ell = RatExpr::zero(chart);
    if (!target.is_zero()) {
        const auto& [m0, c0] = *target.coeffs().begin();
        ell = lie.coeff(m0) / c0;
    }
    DiffForm residual = lie - target.scaled(ell);
    return {ell, residual};
}

}  // namespace

ElemExpr apply_field(const VectorField& v, const ElemExpr& f) {
    ensure_same_chart(v.chart(), f.chart());
    const ChartPtr& chart = v.chart();
    ElemExpr acc = ElemExpr::rational(RatExpr::zero(chart));
    for (std::size_t i = 0; i < chart->dim(); ++i) {
        if (!v.coeff(i).is_zero())
            acc = acc + ElemExpr::rational(v.coeff(i)) * f.pderiv(i);
    }
    return acc;
}

std::optional<DiffForm> rational_differential(const ElemExpr& f) {
    const ChartPtr& chart = f.chart();
    DiffForm df(chart, 1);
    for (std::size_t i = 0; i < chart->dim(); ++i) {
        ElemExpr d = f.pderiv(i);
        auto r = d.as_rational();
        if (!r)
            return std::nullopt;
        df.add_coeff(Mask(1) << i, *r);
    }
    return df;
}

SolvableStructure verify_solvable(const DiffForm& omega, const std::vector<VectorField>& fields,
                                  const std::vector<std::string>& labels_in) {
    std::size_t p = fields.size();
    if (p == 0 || static_cast<int>(p) != omega.degree())
        throw Error("need deg Omega ordered fields");
    if (!is_simple(omega))
        throw Error("Omega must be simple");
    std::vector<std::string> labels = labels_in.empty() ? default_labels(p) : labels_in;
    if (labels.size() != p)
        throw Error("label count mismatch");
    check_direct_sum(omega, fields, labels);

    SolvableStructure s;
    s.omega = omega;
    s.fields = fields;
    DiffForm cur = omega;
    for (std::size_t i = 1; i <= p; ++i) {
        const VectorField& x = fields[p - i];  // condition i acts through X_i
        auto [ell, residual] = proportionality(lie_deriv(x, cur), cur);
        if (!residual.is_zero())
            throw NotProportional("Lie condition " + std::to_string(i) + " (field " +
                                      labels[p - i] + ") is not proportional",
                                  static_cast<int>(i), residual.str());
        s.factors.push_back(ell);
        if (i < p) {
            cur = interior(x, cur);
            if (cur.is_zero())
                throw Error("internal: contraction chain collapsed despite direct sum");
        }
    }
    return s;
}

ChainResult chain(const SolvableStructure& s) {
    const std::size_t p = s.fields.size();
    const ChartPtr& chart = s.omega.chart();
    ChainResult r;
    for (std::size_t i = 1; i <= p; ++i) {
        // sigma^i = X_1 .| ... skip X_i ... .| X_k .| Omega (X_k applied first)
        DiffForm cur = s.omega;
        for (std::size_t tup = 0; tup < p; ++tup) {
            if (tup == p - i)
                continue;
            cur = interior(s.fields[tup], cur);
        }
        r.sigma.push_back(cur);
        RatExpr d = interior(s.fields[p - i], cur).coeff(0);
        if (d.is_zero())
            throw Error("chain normalization hit X_i .| sigma^i = 0");
        r.omega_dual.push_back(cur.scaled(RatExpr::constant(chart, 1) / d));
    }
    // duality: omega^i(X_j) = delta^i_j
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            RatExpr v = pair1(r.omega_dual[i], s.fields[p - 1 - j]);
            RatExpr want = RatExpr::constant(chart, i == j ? 1 : 0);
            if (!RatExpr::equal(v, want))
                throw Error("internal: chain duality failed");
        }
    }
    DiffForm prefix;  // omega^1 ^ ... ^ omega^i, built as we go
    for (std::size_t i = 0; i < p; ++i) {
        DiffForm d = ext_d(r.omega_dual[i]);
        r.closed_exact.push_back(d.is_zero());
        if (i == 0)
            r.closed_mod.push_back(d.is_zero());
        else
            r.closed_mod.push_back(wedge(d, prefix).is_zero());
        prefix = (i == 0) ? r.omega_dual[0] : wedge(prefix, r.omega_dual[i]);
        if (r.closed_exact.back()) {
            try {
                r.potentials.push_back(integrate_closed(r.omega_dual[i]));
            } catch (const NonPolynomial&) {
                r.potentials.push_back(std::nullopt);
            }
        } else {
            r.potentials.push_back(std::nullopt);
        }
    }
    return r;
}

Prop26Result prop26_factors(const DiffForm& omega, const std::vector<VectorField>& fields,
                            const std::vector<std::string>& labels_in) {
    std::size_t p = fields.size();
    if (p == 0 || static_cast<int>(p) != omega.degree())
        throw Error("need deg Omega ordered fields");
    if (!ext_d(omega).is_zero())
        throw NotClosed("d Omega != 0");
    if (!is_simple(omega))
        throw Error("Omega must be simple");
    std::vector<std::string> labels = labels_in.empty() ? default_labels(p) : labels_in;
    check_direct_sum(omega, fields, labels);

    Prop26Result r;
    r.sequence.push_back(omega);
    DiffForm cur = omega;
    for (std::size_t s = 1; s <= p - 1; ++s) {
        const VectorField& x = fields[s - 1];  // X_{p-s+1}
        if (!lie_deriv(x, cur).is_zero())
            throw HypothesisFailed("L_{" + labels[s - 1] + "} of sequence element " +
                                       std::to_string(s - 1) + " is not zero",
                                   static_cast<int>(p - s + 1));
        cur = interior(x, cur);
        r.sequence.push_back(cur);
        if (!ext_d(cur).is_zero())
            throw Error("internal: sequence element not closed despite hypotheses");
        if (!is_simple(cur) && cur.degree() > 1)
            throw Error("internal: sequence element not simple");
    }
    r.full_contraction = interior(fields[p - 1], cur).coeff(0);
    if (r.full_contraction.is_zero())
        throw Error("internal: full contraction vanished despite direct sum");
    if (r.full_contraction.as_constant()) {
        r.moreover = MoreoverOutcome::vacuous_constant;
    } else {
        DiffForm ds = ext_d(DiffForm::scalar(r.full_contraction));
        r.moreover = wedge(ds, cur).is_zero() ? MoreoverOutcome::holds : MoreoverOutcome::failed;
    }
    return r;
}

Rat scale_to_symmetry(const VectorField& x, const DiffForm& omega, const RatExpr& f) {
    if (!ext_d(omega).is_zero())
        throw NotClosed("scale_to_symmetry needs a closed Omega");
    auto [lam_expr, residual] = proportionality(lie_deriv(x, omega), omega);
    if (!residual.is_zero())
        throw NotEigen("L_X Omega is not proportional to Omega");
    auto lam = lam_expr.as_constant();
    if (!lam)
        throw NotEigen("Lie eigenvalue is not constant: " + lam_expr.str());
    if (*lam == 0)
        return Rat(0);  // X is already a symmetry
    RatExpr xf = x.apply(f);
    if (f.is_zero())
        throw NotEigen("f = 0");
    RatExpr mu_expr = xf / f;
    auto mu = mu_expr.as_constant();
    if (!mu)
        throw NotEigen("X(f)/f is not constant: " + mu_expr.str());
    if (*mu == 0)
        throw NotEigen("X(f) = 0; no scaling exponent exists");
    Rat alpha = -*lam / *mu;
    // L_{f^alpha X} Omega = f^alpha(L_X Omega) + alpha f^(alpha-1) df^(X .| Omega);
    // with f^alpha opaque this is zero iff lambda f Omega + alpha df^(X .| Omega) = 0
    const ChartPtr& chart = omega.chart();
    DiffForm certificate = omega.scaled(f * RatExpr::constant(chart, *lam)) +
                           wedge(ext_d(DiffForm::scalar(f)), interior(x, omega))
                               .scaled(RatExpr::constant(chart, alpha));
    if (!certificate.is_zero())
        throw NotEigen("scaling certificate failed: f is not a constraint function for Omega");
    return alpha;
}

FirstIntegral integrate_closed(const DiffForm& omega,
                               const std::optional<std::vector<Rat>>& base_point) {
    const ChartPtr& chart = omega.chart();
    if (omega.degree() != 1)
        throw Error("integrate_closed needs a 1-form");
    if (omega.is_zero())
        throw Error("the zero form has no non-constant potential");
    std::size_t n = chart->dim();
    for (const auto& [m, v] : omega.coeffs()) {
        for (std::size_t i = 0; i < n; ++i)
            if (v.den().depends_on(i))
                throw NonPolynomial("coefficient " + v.str() + " is not polynomial in the coordinates");
    }
    if (!ext_d(omega).is_zero())
        throw NotClosed("d omega != 0");
    DiffForm w = omega;
    if (base_point) {
        if (base_point->size() != n)
            throw Error("base point dimension mismatch");
        // shift to the origin
        DiffForm shifted(chart, 1);
        for (const auto& [m, v] : w.coeffs()) {
            RatExpr cur = v;
            for (std::size_t i = 0; i < n; ++i) {
                if ((*base_point)[i] != 0)
                    cur = cur.substitute(i, RatExpr::symbol(chart, chart->symbol(i)) +
                                                RatExpr::constant(chart, (*base_point)[i]));
            }
            shifted.add_coeff(m, cur);
        }
        w = shifted;
    }
    // gamma(z) = sum_i int_0^1 w_i(s z) z_i ds, termwise exact
    RatExpr gamma = RatExpr::zero(chart);
    for (const auto& [m, v] : w.coeffs()) {
        std::size_t i = static_cast<std::size_t>([&] {
            Mask mm = m;
            int idx = 0;
            while (!(mm & 1)) {
                mm >>= 1;
                ++idx;
            }
            return idx;
        }());
        // v = N / D with D in the parameters only
        for (const auto& [mono, coeff] : v.num().terms()) {
            int coord_deg = 0;
            for (std::size_t jj = 0; jj < n; ++jj)
                coord_deg += static_cast<int>(mono[jj]);
            Poly term(chart);
            Mono shifted_mono = mono;
            shifted_mono[i] += 1;
            term.add_term(shifted_mono, coeff / Rat(coord_deg + 1));
            gamma += RatExpr(term, v.den());
        }
    }
    if (base_point) {
        for (std::size_t i = 0; i < n; ++i) {
            if ((*base_point)[i] != 0)
                gamma = gamma.substitute(i, RatExpr::symbol(chart, chart->symbol(i)) -
                                                RatExpr::constant(chart, (*base_point)[i]));
        }
    }
    // certificate: d gamma == omega
    if (!ext_d(DiffForm::scalar(gamma)).equal(omega))
        throw NotClosed("homotopy potential does not reproduce omega");
    FirstIntegral out;
    out.f = ElemExpr::rational(gamma);
    out.provenance = Provenance::extracted;
    return out;
}

FirstIntegral verify_first_integral(const std::vector<VectorField>& dist, const ElemExpr& f) {
    const ChartPtr& chart = f.chart();
    bool nonconstant = false;
    for (std::size_t i = 0; i < chart->dim() && !nonconstant; ++i)
        nonconstant = f.pderiv(i).zero_verdict() != Ternary::zero;
    if (!nonconstant)
        throw Error("candidate first integral is constant");
    for (const auto& v : dist) {
        ElemExpr vf = apply_field(v, f);
        switch (vf.zero_verdict()) {
            case Ternary::zero:
                break;
            case Ternary::nonzero:
                throw NotAnnihilated("V(f) != 0", v.str(), vf.str());
            case Ternary::unknown:
                throw Undecidable("V(f) kept elementary nodes: " + vf.str());
        }
    }
    FirstIntegral out;
    out.f = f;
    out.distribution = dist;
    out.provenance = Provenance::user_supplied;
    return out;
}

}  // namespace edsw
