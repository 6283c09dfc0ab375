#include "edsw/jettw.hpp"

#include "edsw/errors.hpp"
#include "edsw/parser.hpp"

namespace edsw {

std::string MultiIndex::name() const { return jet_coord_name(order); }

std::string jet_coord_name(int order) {
    if (order < 0)
        throw Error("negative jet order");
    if (order == 0)
        return "u";
    return "u_" + std::string(static_cast<std::size_t>(order), 'x');
}

ChartPtr jet_chart(int order, const std::vector<std::string>& params) {
    std::vector<std::string> coords = {"t", "x"};
    for (int j = 0; j <= order; ++j)
        coords.push_back(jet_coord_name(j));
    return Chart::make(std::move(coords), params);
}

ChartPtr reduced_chart(int order, const std::vector<std::string>& params) {
    std::vector<std::string> coords = {"t", "x", "u"};
    for (int j = 2; j <= order; ++j)
        coords.push_back(jet_coord_name(j));
    return Chart::make(std::move(coords), params);
}

EvolutionPDE::EvolutionPDE(int order, RatExpr rhs) : order_(order), rhs_(std::move(rhs)) {
    if (order_ < 1)
        throw Error("evolution order must be positive");
    auto top = rhs_.chart()->find(jet_coord_name(order_));
    if (!top)
        throw Error("chart lacks the top jet coordinate");
    if (rhs_.pderiv(*top).is_zero())
        throw Error("F does not depend on the top derivative " + jet_coord_name(order_));
}

EvolutionPDE EvolutionPDE::from_text(int order, std::string_view rhs,
                                     const std::vector<std::string>& params) {
    ChartPtr chart = jet_chart(order, params);
    return EvolutionPDE(order, parse_rational(rhs, chart));
}

TWSystem reduce(const EvolutionPDE& pde, const std::string& wave_speed) {
    const ChartPtr& jc = pde.chart();
    auto speed_idx = jc->find(wave_speed);
    if (!speed_idx || jc->is_coord(*speed_idx))
        throw Error("wave speed must be a chart parameter");
    std::size_t ux = *jc->find("u_x");

    // F = P + Q u_x with P, Q free of u_x
    const RatExpr& f = pde.rhs();
    if (f.den().degree_in(ux) != 0)
        throw NonAffineInUx("denominator of F depends on u_x");
    if (f.num().degree_in(ux) > 1)
        throw NonAffineInUx("F has degree " + std::to_string(f.num().degree_in(ux)) + " in u_x");
    auto parts = f.num().collect(ux);
    RatExpr p = RatExpr(parts.count(0) ? parts.at(0) : Poly(jc), f.den());
    RatExpr q = RatExpr(parts.count(1) ? parts.at(1) : Poly(jc), f.den());

    RatExpr c_big = RatExpr::symbol(jc, wave_speed);
    RatExpr denom = c_big + q;
    if (denom.is_zero())
        throw DegenerateReduction("c + Q vanishes identically");
    RatExpr ftilde_big = c_big * p / denom;
    if (ftilde_big.is_zero())
        throw DegenerateReduction("ansatz collapses: F~ = 0");

    // consistency: F(..., u_x -> -F~/c, ...) = F~
    RatExpr back = f.substitute(ux, -(ftilde_big / c_big));
    if (!RatExpr::equal(back, ftilde_big))
        throw Error("internal: elimination identity failed");

    int k = pde.order();
    if (k < 2)
        throw Error("travelling-wave system needs order >= 2");

    TWSystem tws;
    tws.order = k;
    tws.speed = wave_speed;
    tws.chart = reduced_chart(k, jc->params());
    tws.Ftilde = ftilde_big.map_to(tws.chart);

    const ChartPtr& rc = tws.chart;
    RatExpr c = RatExpr::symbol(rc, wave_speed);
    DiffForm dt = DiffForm::d_coord(rc, *rc->find("t"));
    DiffForm dx = DiffForm::d_coord(rc, *rc->find("x"));
    tws.phi = dx - dt.scaled(c);

    // theta^1 = du + (F~/c) phi
    tws.thetas.push_back(DiffForm::d_coord(rc, *rc->find("u")) + tws.phi.scaled(tws.Ftilde / c));
    // theta^2 = dF~ + c u_xx phi
    tws.thetas.push_back(ext_d(DiffForm::scalar(tws.Ftilde)) +
                         tws.phi.scaled(c * RatExpr::symbol(rc, "u_xx")));
    // theta^j = du_{(j-1)x} - u_{jx} phi, 3 <= j <= k
    for (int j = 3; j <= k; ++j) {
        tws.thetas.push_back(DiffForm::d_coord(rc, *rc->find(jet_coord_name(j - 1))) -
                             tws.phi.scaled(RatExpr::symbol(rc, jet_coord_name(j))));
    }
    Codistribution contact(rc, tws.thetas);  // rank check
    tws.omega = wedge_all(tws.thetas);

    std::vector<VectorField> basis = kernel(contact);
    if (basis.size() != 2)
        throw RankDeficient("contact kernel is not two-dimensional");
    std::size_t it = *rc->find("t"), ix = *rc->find("x");
    RatExpr det = basis[0].coeff(it) * basis[1].coeff(ix) - basis[1].coeff(it) * basis[0].coeff(ix);
    if (det.is_zero())
        throw RankDeficient("kernel does not project onto the (t,x) plane");
    // V1: unit dt, zero dx; V2: unit dx, zero dt
    tws.V1 = basis[0].scaled(basis[1].coeff(ix) / det) - basis[1].scaled(basis[0].coeff(ix) / det);
    tws.V2 = basis[1].scaled(basis[0].coeff(it) / det) - basis[0].scaled(basis[1].coeff(it) / det);
    for (const auto& theta : tws.thetas) {
        if (!pair1(theta, tws.V1).is_zero() || !pair1(theta, tws.V2).is_zero())
            throw Error("internal: Vessiot fields not annihilated by the contact system");
    }
    return tws;
}

Codistribution contact_system(const TWSystem& tws) {
    return Codistribution(tws.chart, tws.thetas);
}

std::pair<VectorField, VectorField> vessiot_fields(const TWSystem& tws) {
    return {tws.V1, tws.V2};
}

IntegrabilityVerdict theorem31(const TWSystem& tws) {
    if (tws.order < 3)
        throw OrderTooLow("Theorem 3.1 needs k >= 3; use frobenius_direct");
    const ChartPtr& rc = tws.chart;
    RatExpr c = RatExpr::symbol(rc, tws.speed);
    IntegrabilityVerdict v;
    v.frobenius = (tws.Ftilde.pderiv("t") + c * tws.Ftilde.pderiv("x")).is_zero();
    v.closed = v.frobenius && tws.Ftilde.pderiv(jet_coord_name(tws.order - 1)).is_zero();
    return v;
}

DiffForm leibniz_d_omega(const TWSystem& tws) {
    const ChartPtr& rc = tws.chart;
    DiffForm acc(rc, tws.omega.degree() + 1);
    for (std::size_t a = 0; a < tws.thetas.size(); ++a) {
        DiffForm term = a == 0 ? ext_d(tws.thetas[0]) : tws.thetas[0];
        for (std::size_t b = 1; b < tws.thetas.size(); ++b)
            term = wedge(term, a == b ? ext_d(tws.thetas[b]) : tws.thetas[b]);
        acc = (a % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

RatExpr tw_restrict(const TWSystem& tws, const RatExpr& e) {
    const ChartPtr& jc = e.chart();
    auto ux = jc->find("u_x");
    if (!ux)
        return e.map_to(tws.chart);
    RatExpr c = RatExpr::symbol(jc, tws.speed);
    RatExpr val = -(tws.Ftilde.map_to(jc) / c);
    return e.substitute(*ux, val).map_to(tws.chart);
}

ElemExpr tw_restrict(const TWSystem& tws, const ElemExpr& e) {
    return e.map_leaves([&](const RatExpr& r) { return tw_restrict(tws, r); });
}

IntegrabilityVerdict frobenius_direct(const TWSystem& tws) {
    IntegrabilityVerdict v;
    v.frobenius = true;
    for (const auto& theta : tws.thetas) {
        if (!wedge(ext_d(theta), tws.omega).is_zero()) {
            v.frobenius = false;
            break;
        }
    }
    v.closed = leibniz_d_omega(tws).is_zero();
    return v;
}

}  // namespace edsw
