#pragma once

#include "edsw/linalg.hpp"
#include "edsw/ratexpr.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace edsw {

// Derivation on the chart: coefficients on coordinate directions only.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(ChartPtr chart);
    static VectorField basis(ChartPtr chart, std::size_t coord);
    static VectorField from_map(const ChartPtr& chart, const std::map<std::string, std::string>& coeffs);

    const ChartPtr& chart() const { return chart_; }
    const RatExpr& coeff(std::size_t coord) const { return coef_.at(coord); }
    void set_coeff(std::size_t coord, RatExpr value);
    void set_coeff(std::string_view name, RatExpr value);

    bool is_zero() const;
    VectorField operator+(const VectorField& o) const;
    VectorField operator-(const VectorField& o) const;
    VectorField scaled(const RatExpr& k) const;

    // directional derivative X(f)
    RatExpr apply(const RatExpr& f) const;

    bool equal(const VectorField& o) const;
    std::string str() const;

private:
    ChartPtr chart_;
    std::vector<RatExpr> coef_;
};

// index set of a wedge monomial dx_{i1}^...^dx_{ip}, bits in increasing order
using Mask = std::uint32_t;

// Graded antisymmetric covariant object with RatExpr coefficients; degree-0
// forms are bare scalars under mask 0.
class DiffForm {
public:
    DiffForm() = default;
    DiffForm(ChartPtr chart, int degree);
    static DiffForm scalar(RatExpr f);
    static DiffForm d_coord(ChartPtr chart, std::size_t coord);  // dx_i

    const ChartPtr& chart() const { return chart_; }
    int degree() const { return degree_; }
    const std::map<Mask, RatExpr>& coeffs() const { return coef_; }
    RatExpr coeff(Mask m) const;
    void add_coeff(Mask m, const RatExpr& v);

    bool is_zero() const { return coef_.empty(); }
    DiffForm operator+(const DiffForm& o) const;
    DiffForm operator-(const DiffForm& o) const;
    DiffForm scaled(const RatExpr& k) const;

    bool equal(const DiffForm& o) const;
    std::string str() const;

private:
    ChartPtr chart_;
    int degree_ = 0;
    std::map<Mask, RatExpr> coef_;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm wedge_all(const std::vector<DiffForm>& forms);
DiffForm ext_d(const DiffForm& a);
DiffForm interior(const VectorField& x, const DiffForm& a);
DiffForm lie_deriv(const VectorField& x, const DiffForm& a);  // Cartan formula
VectorField bracket(const VectorField& x, const VectorField& y);

// theta(X) for a 1-form
RatExpr pair1(const DiffForm& theta, const VectorField& x);

// Pointwise linearly independent 1-form generators (rank-checked).
class Codistribution {
public:
    Codistribution(ChartPtr chart, std::vector<DiffForm> gens);
    const ChartPtr& chart() const { return chart_; }
    const std::vector<DiffForm>& generators() const { return gens_; }

private:
    ChartPtr chart_;
    std::vector<DiffForm> gens_;
};

// Basis of the pointwise solution space of theta^a(V) = 0 over the rational
// function field; size = dim - rank.
std::vector<VectorField> kernel(const Codistribution& d);
// Fields annihilating a form: X with X .| Omega = 0.
std::vector<VectorField> kernel(const DiffForm& omega);
// 1-forms annihilating the span of the given fields.
std::vector<DiffForm> annihilator(const std::vector<VectorField>& fields);

// true iff dim kernel(Omega) = dim - deg Omega
bool is_simple(const DiffForm& omega);

// d(theta^a) ^ theta^1 ^ ... ^ theta^k = 0 for every generator, cross-checked
// against bracket closure of kernel(d).
bool is_frobenius(const Codistribution& d);
// Same test for a simple form given without generators: recover a generating
// set through the kernel annihilator first.
bool is_frobenius(const DiffForm& omega);

}  // namespace edsw
