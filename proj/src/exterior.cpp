#include "edsw/exterior.hpp"

#include "edsw/errors.hpp"
#include "edsw/parser.hpp"

#include <bit>
#include <sstream>

namespace edsw {

namespace {

int popcount_below(Mask m, std::size_t i) {
    return std::popcount(m & ((Mask(1) << i) - 1));
}

// sign of merging sorted index sets a and b ((-1)^inversions), 0 on overlap
int merge_sign(Mask a, Mask b) {
    if (a & b)
        return 0;
    int inv = 0;
    Mask rest = a;
    while (rest) {
        std::size_t i = static_cast<std::size_t>(std::countr_zero(rest));
        rest &= rest - 1;
        inv += std::popcount(b & ((Mask(1) << i) - 1)) ? popcount_below(b, i) : 0;
    }
    return (inv % 2 == 0) ? 1 : -1;
}

}  // namespace

VectorField::VectorField(ChartPtr chart) : chart_(std::move(chart)) {
    coef_.assign(chart_->dim(), RatExpr::zero(chart_));
}

VectorField VectorField::basis(ChartPtr chart, std::size_t coord) {
    VectorField v(chart);
    v.coef_.at(coord) = RatExpr::constant(v.chart_, 1);
    return v;
}

VectorField VectorField::from_map(const ChartPtr& chart,
                                  const std::map<std::string, std::string>& coeffs) {
    VectorField v(chart);
    for (const auto& [name, expr] : coeffs)
        v.set_coeff(name, parse_rational(expr, chart));
    return v;
}

void VectorField::set_coeff(std::size_t coord, RatExpr value) {
    if (coord >= chart_->dim())
        throw Error("vector field coefficient on a non-coordinate symbol");
    coef_.at(coord) = std::move(value);
}

void VectorField::set_coeff(std::string_view name, RatExpr value) {
    auto idx = chart_->find(name);
    if (!idx)
        throw UnknownIdentifier(std::string(name));
    set_coeff(*idx, std::move(value));
}

bool VectorField::is_zero() const {
    for (const auto& c : coef_)
        if (!c.is_zero())
            return false;
    return true;
}

VectorField VectorField::operator+(const VectorField& o) const {
    ensure_same_chart(chart_, o.chart_);
    VectorField r(chart_);
    for (std::size_t i = 0; i < coef_.size(); ++i)
        r.coef_[i] = coef_[i] + o.coef_[i];
    return r;
}

VectorField VectorField::operator-(const VectorField& o) const {
    ensure_same_chart(chart_, o.chart_);
    VectorField r(chart_);
    for (std::size_t i = 0; i < coef_.size(); ++i)
        r.coef_[i] = coef_[i] - o.coef_[i];
    return r;
}

VectorField VectorField::scaled(const RatExpr& k) const {
    VectorField r(chart_);
    for (std::size_t i = 0; i < coef_.size(); ++i)
        r.coef_[i] = coef_[i] * k;
    return r;
}

RatExpr VectorField::apply(const RatExpr& f) const {
    ensure_same_chart(chart_, f.chart());
    RatExpr acc = RatExpr::zero(chart_);
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        if (!coef_[i].is_zero())
            acc += coef_[i] * f.pderiv(i);
    }
    return acc;
}

bool VectorField::equal(const VectorField& o) const {
    ensure_same_chart(chart_, o.chart_);
    for (std::size_t i = 0; i < coef_.size(); ++i)
        if (!RatExpr::equal(coef_[i], o.coef_[i]))
            return false;
    return true;
}

std::string VectorField::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        if (coef_[i].is_zero())
            continue;
        if (!first)
            os << " + ";
        os << "(" << coef_[i].str() << ") d/d" << chart_->symbol(i);
        first = false;
    }
    if (first)
        os << "0";
    return os.str();
}

DiffForm::DiffForm(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
    // degree dim+1 is admitted as the identically-zero image of d on top forms
    if (degree < 0 || degree > static_cast<int>(chart_->dim()) + 1)
        throw DegreeOverflow("form degree " + std::to_string(degree) + " out of range");
}

DiffForm DiffForm::scalar(RatExpr f) {
    DiffForm r(f.chart(), 0);
    r.add_coeff(0, f);
    return r;
}

DiffForm DiffForm::d_coord(ChartPtr chart, std::size_t coord) {
    DiffForm r(chart, 1);
    if (coord >= r.chart_->dim())
        throw Error("d of a non-coordinate symbol");
    r.add_coeff(Mask(1) << coord, RatExpr::constant(r.chart_, 1));
    return r;
}

RatExpr DiffForm::coeff(Mask m) const {
    auto it = coef_.find(m);
    return it == coef_.end() ? RatExpr::zero(chart_) : it->second;
}

void DiffForm::add_coeff(Mask m, const RatExpr& v) {
    if (v.is_zero())
        return;
    if (std::popcount(m) != degree_)
        throw Error("coefficient mask degree mismatch");
    auto [it, inserted] = coef_.try_emplace(m, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero())
            coef_.erase(it);
    }
}

DiffForm DiffForm::operator+(const DiffForm& o) const {
    ensure_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_)
        throw Error("adding forms of different degree");
    DiffForm r = *this;
    for (const auto& [m, v] : o.coef_)
        r.add_coeff(m, v);
    return r;
}

DiffForm DiffForm::operator-(const DiffForm& o) const {
    ensure_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_)
        throw Error("subtracting forms of different degree");
    DiffForm r = *this;
    for (const auto& [m, v] : o.coef_)
        r.add_coeff(m, -v);
    return r;
}

DiffForm DiffForm::scaled(const RatExpr& k) const {
    DiffForm r(chart_, degree_);
    if (k.is_zero())
        return r;
    for (const auto& [m, v] : coef_)
        r.add_coeff(m, v * k);
    return r;
}

bool DiffForm::equal(const DiffForm& o) const {
    return (*this - o).is_zero();
}

std::string DiffForm::str() const {
    if (coef_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, v] : coef_) {
        if (!first)
            os << " + ";
        os << "(" << v.str() << ")";
        Mask rest = m;
        bool lead = true;
        while (rest) {
            std::size_t i = static_cast<std::size_t>(std::countr_zero(rest));
            rest &= rest - 1;
            os << (lead ? " " : "^") << "d" << chart_->symbol(i);
            lead = false;
        }
        first = false;
    }
    return os.str();
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    ensure_same_chart(a.chart(), b.chart());
    int deg = a.degree() + b.degree();
    if (deg > static_cast<int>(a.chart()->dim()))
        throw DegreeOverflow("wedge degree exceeds chart dimension");
    DiffForm r(a.chart(), deg);
    for (const auto& [ma, va] : a.coeffs()) {
        for (const auto& [mb, vb] : b.coeffs()) {
            int s = merge_sign(ma, mb);
            if (s == 0)
                continue;
            RatExpr term = va * vb;
            r.add_coeff(ma | mb, s > 0 ? term : -term);
        }
    }
    return r;
}

DiffForm wedge_all(const std::vector<DiffForm>& forms) {
    if (forms.empty())
        throw Error("empty wedge");
    DiffForm acc = forms[0];
    for (std::size_t i = 1; i < forms.size(); ++i)
        acc = wedge(acc, forms[i]);
    return acc;
}

DiffForm ext_d(const DiffForm& a) {
    const ChartPtr& chart = a.chart();
    DiffForm r(chart, a.degree() + 1);
    for (const auto& [m, v] : a.coeffs()) {
        for (std::size_t i = 0; i < chart->dim(); ++i) {
            Mask mi = Mask(1) << i;
            if (m & mi)
                continue;
            RatExpr dv = v.pderiv(i);
            if (dv.is_zero())
                continue;
            int s = merge_sign(mi, m);
            r.add_coeff(mi | m, s > 0 ? dv : -dv);
        }
    }
    return r;
}

DiffForm interior(const VectorField& x, const DiffForm& a) {
    ensure_same_chart(x.chart(), a.chart());
    if (a.degree() == 0)
        return DiffForm(a.chart(), 0);
    DiffForm r(a.chart(), a.degree() - 1);
    for (const auto& [m, v] : a.coeffs()) {
        Mask rest = m;
        while (rest) {
            std::size_t i = static_cast<std::size_t>(std::countr_zero(rest));
            rest &= rest - 1;
            const RatExpr& xi = x.coeff(i);
            if (xi.is_zero())
                continue;
            int pos = popcount_below(m, i);
            RatExpr term = xi * v;
            r.add_coeff(m & ~(Mask(1) << i), (pos % 2 == 0) ? term : -term);
        }
    }
    return r;
}

DiffForm lie_deriv(const VectorField& x, const DiffForm& a) {
    // L_X = X .| d + d (X .| .)
    DiffForm first = interior(x, ext_d(a));
    if (a.degree() == 0)
        return first;
    return first + ext_d(interior(x, a));
}

VectorField bracket(const VectorField& x, const VectorField& y) {
    ensure_same_chart(x.chart(), y.chart());
    VectorField r(x.chart());
    for (std::size_t i = 0; i < x.chart()->dim(); ++i)
        r.set_coeff(i, x.apply(y.coeff(i)) - y.apply(x.coeff(i)));
    return r;
}

RatExpr pair1(const DiffForm& theta, const VectorField& x) {
    if (theta.degree() != 1)
        throw Error("pair1 needs a 1-form");
    DiffForm s = interior(x, theta);
    return s.coeff(0);
}

Codistribution::Codistribution(ChartPtr chart, std::vector<DiffForm> gens)
    : chart_(std::move(chart)), gens_(std::move(gens)) {
    RatMatrix m;
    for (const auto& g : gens_) {
        ensure_same_chart(chart_, g.chart());
        if (g.degree() != 1)
            throw Error("codistribution generators must be 1-forms");
        RatRow row;
        for (std::size_t i = 0; i < chart_->dim(); ++i)
            row.push_back(g.coeff(Mask(1) << i));
        m.push_back(std::move(row));
    }
    if (rank(m) != gens_.size())
        throw RankDeficient("codistribution generators are dependent");
}

std::vector<VectorField> kernel(const Codistribution& d) {
    const ChartPtr& chart = d.chart();
    RatMatrix m;
    for (const auto& g : d.generators()) {
        RatRow row;
        for (std::size_t i = 0; i < chart->dim(); ++i)
            row.push_back(g.coeff(Mask(1) << i));
        m.push_back(std::move(row));
    }
    std::vector<VectorField> out;
    for (auto& v : null_space(m)) {
        VectorField f(chart);
        for (std::size_t i = 0; i < v.size(); ++i)
            f.set_coeff(i, std::move(v[i]));
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<VectorField> kernel(const DiffForm& omega) {
    const ChartPtr& chart = omega.chart();
    if (omega.is_zero())
        throw Error("kernel of the zero form");
    std::size_t n = chart->dim();
    if (omega.degree() == 0)
        throw Error("kernel of a scalar");
    // rows: one linear condition per (p-1)-subset J: sum over i not in J of
    // sign * X^i * omega_{J+i} = 0
    RatMatrix m;
    int p = omega.degree();
    for (Mask j = 0; j < (Mask(1) << n); ++j) {
        if (std::popcount(j) != p - 1)
            continue;
        RatRow row(n, RatExpr::zero(chart));
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            Mask mi = Mask(1) << i;
            if (j & mi)
                continue;
            RatExpr c = omega.coeff(j | mi);
            if (c.is_zero())
                continue;
            int pos = popcount_below(j | mi, i);
            row[i] = (pos % 2 == 0) ? c : -c;
            any = true;
        }
        if (any)
            m.push_back(std::move(row));
    }
    if (m.empty())
        throw Error("kernel of the zero form");
    std::vector<VectorField> out;
    for (auto& v : null_space(m)) {
        VectorField f(chart);
        for (std::size_t i = 0; i < v.size(); ++i)
            f.set_coeff(i, std::move(v[i]));
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<DiffForm> annihilator(const std::vector<VectorField>& fields) {
    if (fields.empty())
        throw Error("annihilator of an empty family");
    const ChartPtr& chart = fields[0].chart();
    RatMatrix m;
    for (const auto& f : fields) {
        RatRow row;
        for (std::size_t i = 0; i < chart->dim(); ++i)
            row.push_back(f.coeff(i));
        m.push_back(std::move(row));
    }
    std::vector<DiffForm> out;
    for (auto& v : null_space(m)) {
        DiffForm theta(chart, 1);
        for (std::size_t i = 0; i < v.size(); ++i)
            theta.add_coeff(Mask(1) << i, v[i]);
        out.push_back(std::move(theta));
    }
    return out;
}

bool is_simple(const DiffForm& omega) {
    if (omega.degree() < 1)
        throw Error("is_simple needs degree >= 1");
    if (omega.is_zero())
        return false;
    std::size_t dim = omega.chart()->dim();
    return kernel(omega).size() == dim - static_cast<std::size_t>(omega.degree());
}

bool is_frobenius(const Codistribution& d) {
    DiffForm omega = wedge_all(d.generators());
    bool direct = true;
    for (const auto& g : d.generators()) {
        if (!wedge(ext_d(g), omega).is_zero()) {
            direct = false;
            break;
        }
    }
    // independent route: bracket closure of the kernel
    std::vector<VectorField> k = kernel(d);
    bool closed = true;
    for (std::size_t i = 0; i < k.size() && closed; ++i) {
        for (std::size_t j = i + 1; j < k.size() && closed; ++j) {
            VectorField b = bracket(k[i], k[j]);
            for (const auto& g : d.generators()) {
                if (!pair1(g, b).is_zero()) {
                    closed = false;
                    break;
                }
            }
        }
    }
    if (direct != closed)
        throw Error("internal: dtheta^Omega test and bracket closure disagree");
    return direct;
}

bool is_frobenius(const DiffForm& omega) {
    if (!is_simple(omega))
        throw Error("is_frobenius needs a simple form");
    std::vector<DiffForm> gens = annihilator(kernel(omega));
    return is_frobenius(Codistribution(omega.chart(), std::move(gens)));
}

}  // namespace edsw
