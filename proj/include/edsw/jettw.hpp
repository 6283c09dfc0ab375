#pragma once

#include "edsw/elem.hpp"
#include "edsw/exterior.hpp"

#include <string>
#include <utility>
#include <vector>

namespace edsw {

// pure-x jet multi-index; the reduced setting never needs mixed indices
struct MultiIndex {
    int order = 0;
    std::string name() const;  // u, u_x, u_xx, ...
};

std::string jet_coord_name(int order);

// (t, x, u, u_x, ..., u_{k x} | params)
ChartPtr jet_chart(int order, const std::vector<std::string>& params);
// (t, x, u, u_xx, ..., u_{k x} | params) -- u_x eliminated
ChartPtr reduced_chart(int order, const std::vector<std::string>& params);

// u_t = F(t, x, u, u_x, ..., u_{k x})
class EvolutionPDE {
public:
    EvolutionPDE(int order, RatExpr rhs);
    static EvolutionPDE from_text(int order, std::string_view rhs,
                                  const std::vector<std::string>& params);
    int order() const { return order_; }
    const RatExpr& rhs() const { return rhs_; }
    const ChartPtr& chart() const { return rhs_.chart(); }

private:
    int order_;
    RatExpr rhs_;
};

// The reduced travelling-wave exterior differential system: eliminated
// right-hand side, contact forms, characterising form, Vessiot fields.
struct TWSystem {
    int order = 0;
    std::string speed;             // wave-speed parameter name
    ChartPtr chart;                // reduced chart
    RatExpr Ftilde;
    DiffForm phi;                  // dx - c dt
    std::vector<DiffForm> thetas;  // theta^1 .. theta^k
    DiffForm omega;                // theta^1 ^ ... ^ theta^k
    VectorField V1, V2;
};

// Eliminate u_x through the ansatz u_t + c u_x = 0 (F must be affine in u_x;
// F~ = cP/(c+Q) for F = P + Q u_x) and build the full reduced system.
TWSystem reduce(const EvolutionPDE& pde, const std::string& wave_speed);

Codistribution contact_system(const TWSystem& tws);
std::pair<VectorField, VectorField> vessiot_fields(const TWSystem& tws);

struct IntegrabilityVerdict {
    bool frobenius = false;
    bool closed = false;
};

// Criterion on F~ alone: frobenius iff F~_t + c F~_x = 0, closed additionally
// iff F~_{u_{(k-1)x}} = 0. Needs k >= 3.
IntegrabilityVerdict theorem31(const TWSystem& tws);

// Brute force: d(theta^a)^Omega tests plus the term-by-term Leibniz expansion
// of d(Omega).
IntegrabilityVerdict frobenius_direct(const TWSystem& tws);

// Leibniz expansion sum_a +/- theta^1^...^d(theta^a)^...^theta^k
DiffForm leibniz_d_omega(const TWSystem& tws);

// Restrict an expression over the unreduced jet chart to the reduced chart,
// substituting u_x -> -F~/c first.
RatExpr tw_restrict(const TWSystem& tws, const RatExpr& e);
ElemExpr tw_restrict(const TWSystem& tws, const ElemExpr& e);

}  // namespace edsw
