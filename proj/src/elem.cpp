#include "edsw/elem.hpp"

#include "edsw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace edsw {

namespace {

using Node = ElemExpr::Node;
using NodePtr = ElemExpr::NodePtr;

NodePtr make_rational(RatExpr r) {
    auto n = std::make_shared<Node>();
    n->kind = ElemKind::rational;
    n->chart = r.chart();
    n->rat = std::move(r);
    return n;
}

bool is_rat(const NodePtr& n) { return n->kind == ElemKind::rational; }

bool is_fn(ElemKind k) {
    return k == ElemKind::arctan || k == ElemKind::ln || k == ElemKind::exp ||
           k == ElemKind::sech || k == ElemKind::tanh;
}

int kind_rank(ElemKind k) { return static_cast<int>(k); }

int node_compare(const NodePtr& a, const NodePtr& b) {
    if (a.get() == b.get())
        return 0;
    if (a->kind != b->kind)
        return kind_rank(a->kind) < kind_rank(b->kind) ? -1 : 1;
    switch (a->kind) {
        case ElemKind::rational:
            return RatExpr::compare(a->rat, b->rat);
        case ElemKind::pow: {
            int c = node_compare(a->kids[0], b->kids[0]);
            if (c != 0)
                return c;
            return rat_cmp(a->expo, b->expo);
        }
        default: {
            if (a->kids.size() != b->kids.size())
                return a->kids.size() < b->kids.size() ? -1 : 1;
            for (std::size_t i = 0; i < a->kids.size(); ++i) {
                int c = node_compare(a->kids[i], b->kids[i]);
                if (c != 0)
                    return c;
            }
            return 0;
        }
    }
}

NodePtr make_add(const ChartPtr& chart, std::vector<NodePtr> kids);
NodePtr make_mul(const ChartPtr& chart, std::vector<NodePtr> kids);
NodePtr make_pow(const NodePtr& base, const Rat& e);
NodePtr make_fn(ElemKind fn, const NodePtr& arg);

NodePtr make_pow(const NodePtr& base, const Rat& e) {
    const ChartPtr& chart = base->chart;
    if (e == 0)
        return make_rational(RatExpr::constant(chart, 1));
    if (e == 1)
        return base;
    if (is_rat(base)) {
        const RatExpr& r = base->rat;
        if (r.is_zero()) {
            if (e > 0)
                return make_rational(RatExpr::zero(chart));
            throw PoleError("zero expression raised to a non-positive power");
        }
        if (is_integer(e))
            return make_rational(r.pow(static_cast<long>(rat_num(e))));
        if (auto c = r.as_constant()) {
            // exact root of a perfect power, e.g. 4^(1/2)
            Rat root;
            Rat scaled = rat_pow(*c, static_cast<long>(rat_num(e)));
            if (try_exact_root(scaled, static_cast<unsigned>(rat_den(e).convert_to<unsigned long>()), root))
                return make_rational(RatExpr::constant(chart, root));
        }
    }
    if (base->kind == ElemKind::pow)
        return make_pow(base->kids[0], base->expo * e);
    if (base->kind == ElemKind::mul && is_integer(e)) {
        std::vector<NodePtr> kids;
        kids.reserve(base->kids.size());
        for (const auto& k : base->kids)
            kids.push_back(make_pow(k, e));
        return make_mul(chart, std::move(kids));
    }
    if (base->kind == ElemKind::exp) {
        // exp(w)^e = exp(e*w)
        return make_fn(ElemKind::exp,
                       make_mul(chart, {make_rational(RatExpr::constant(chart, e)), base->kids[0]}));
    }
    auto n = std::make_shared<Node>();
    n->kind = ElemKind::pow;
    n->chart = chart;
    n->rat = RatExpr::zero(chart);
    n->kids = {base};
    n->expo = e;
    return n;
}

NodePtr make_fn(ElemKind fn, const NodePtr& arg) {
    const ChartPtr& chart = arg->chart;
    if (is_rat(arg)) {
        if (auto c = arg->rat.as_constant()) {
            if (*c == 0) {
                switch (fn) {
                    case ElemKind::arctan:
                    case ElemKind::tanh:
                        return make_rational(RatExpr::zero(chart));
                    case ElemKind::exp:
                    case ElemKind::sech:
                        return make_rational(RatExpr::constant(chart, 1));
                    case ElemKind::ln:
                        throw DomainError("ln(0)");
                    default:
                        break;
                }
            }
            if (*c == 1 && fn == ElemKind::ln)
                return make_rational(RatExpr::zero(chart));
        }
    }
    if (fn == ElemKind::exp && arg->kind == ElemKind::ln)
        return arg->kids[0];
    if (fn == ElemKind::ln && arg->kind == ElemKind::exp)
        return arg->kids[0];
    auto n = std::make_shared<Node>();
    n->kind = fn;
    n->chart = chart;
    n->rat = RatExpr::zero(chart);
    n->kids = {arg};
    return n;
}

// one merged (base, exponent) factor
struct Factor {
    NodePtr base;
    Rat expo;
};

NodePtr make_mul(const ChartPtr& chart, std::vector<NodePtr> kids) {
    RatExpr acc = RatExpr::constant(chart, 1);
    std::vector<Factor> factors;
    auto merge = [&](const NodePtr& base, const Rat& e) {
        for (auto& f : factors) {
            if (node_compare(f.base, base) == 0) {
                f.expo += e;
                return;
            }
        }
        factors.push_back({base, e});
    };
    std::vector<NodePtr> work = std::move(kids);
    while (!work.empty()) {
        NodePtr n = work.back();
        work.pop_back();
        switch (n->kind) {
            case ElemKind::rational:
                if (n->rat.is_zero())
                    return make_rational(RatExpr::zero(chart));
                acc *= n->rat;
                break;
            case ElemKind::mul:
                for (const auto& k : n->kids)
                    work.push_back(k);
                break;
            case ElemKind::pow:
                merge(n->kids[0], n->expo);
                break;
            default:
                merge(n, Rat(1));
                break;
        }
    }
    std::vector<NodePtr> out;
    bool reexpand = false;
    for (const auto& f : factors) {
        NodePtr p = make_pow(f.base, f.expo);
        if (is_rat(p)) {
            if (p->rat.is_zero())
                return make_rational(RatExpr::zero(chart));
            acc *= p->rat;
        } else if (p->kind == ElemKind::mul) {
            reexpand = true;  // pow distributed over a product
            out.push_back(p);
        } else {
            out.push_back(p);
        }
    }
    if (reexpand) {
        out.push_back(make_rational(acc));
        return make_mul(chart, std::move(out));
    }
    if (out.empty())
        return make_rational(acc);
    std::sort(out.begin(), out.end(), [](const NodePtr& a, const NodePtr& b) {
        return node_compare(a, b) < 0;
    });
    if (auto one = acc.as_constant(); one && *one == 1 && out.size() == 1)
        return out[0];
    std::vector<NodePtr> final_kids;
    if (!(acc.as_constant() && *acc.as_constant() == 1))
        final_kids.push_back(make_rational(acc));
    final_kids.insert(final_kids.end(), out.begin(), out.end());
    if (final_kids.size() == 1)
        return final_kids[0];
    auto n = std::make_shared<Node>();
    n->kind = ElemKind::mul;
    n->chart = chart;
    n->rat = RatExpr::zero(chart);
    n->kids = std::move(final_kids);
    return n;
}

// split a canonical term into rational coefficient and non-rational atom part
std::pair<RatExpr, std::vector<NodePtr>> split_term(const ChartPtr& chart, const NodePtr& n) {
    if (n->kind == ElemKind::mul) {
        RatExpr coeff = RatExpr::constant(chart, 1);
        std::vector<NodePtr> atoms;
        for (const auto& k : n->kids) {
            if (is_rat(k))
                coeff *= k->rat;
            else
                atoms.push_back(k);
        }
        return {coeff, atoms};
    }
    return {RatExpr::constant(chart, 1), {n}};
}

int atoms_compare(const std::vector<NodePtr>& a, const std::vector<NodePtr>& b) {
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = node_compare(a[i], b[i]);
        if (c != 0)
            return c;
    }
    return 0;
}

NodePtr make_add(const ChartPtr& chart, std::vector<NodePtr> kids) {
    RatExpr acc = RatExpr::zero(chart);
    struct Term {
        RatExpr coeff;
        std::vector<NodePtr> atoms;
    };
    std::vector<Term> terms;
    std::vector<NodePtr> work = std::move(kids);
    while (!work.empty()) {
        NodePtr n = work.back();
        work.pop_back();
        if (is_rat(n)) {
            acc += n->rat;
            continue;
        }
        if (n->kind == ElemKind::add) {
            for (const auto& k : n->kids)
                work.push_back(k);
            continue;
        }
        auto [coeff, atoms] = split_term(chart, n);
        bool merged = false;
        for (auto& t : terms) {
            if (atoms_compare(t.atoms, atoms) == 0) {
                t.coeff += coeff;
                merged = true;
                break;
            }
        }
        if (!merged)
            terms.push_back({std::move(coeff), std::move(atoms)});
    }
    std::vector<NodePtr> out;
    for (auto& t : terms) {
        if (t.coeff.is_zero())
            continue;
        std::vector<NodePtr> parts = t.atoms;
        parts.push_back(make_rational(t.coeff));
        out.push_back(make_mul(chart, std::move(parts)));
    }
    if (out.empty())
        return make_rational(acc);
    std::sort(out.begin(), out.end(), [](const NodePtr& a, const NodePtr& b) {
        return node_compare(a, b) < 0;
    });
    if (acc.is_zero() && out.size() == 1)
        return out[0];
    std::vector<NodePtr> final_kids;
    if (!acc.is_zero())
        final_kids.push_back(make_rational(acc));
    final_kids.insert(final_kids.end(), out.begin(), out.end());
    if (final_kids.size() == 1)
        return final_kids[0];
    auto n = std::make_shared<Node>();
    n->kind = ElemKind::add;
    n->chart = chart;
    n->rat = RatExpr::zero(chart);
    n->kids = std::move(final_kids);
    return n;
}

NodePtr deriv(const NodePtr& n, std::size_t sym) {
    const ChartPtr& chart = n->chart;
    switch (n->kind) {
        case ElemKind::rational:
            return make_rational(n->rat.pderiv(sym));
        case ElemKind::add: {
            std::vector<NodePtr> kids;
            kids.reserve(n->kids.size());
            for (const auto& k : n->kids)
                kids.push_back(deriv(k, sym));
            return make_add(chart, std::move(kids));
        }
        case ElemKind::mul: {
            std::vector<NodePtr> sum;
            for (std::size_t i = 0; i < n->kids.size(); ++i) {
                std::vector<NodePtr> prod;
                prod.reserve(n->kids.size());
                for (std::size_t j = 0; j < n->kids.size(); ++j)
                    prod.push_back(i == j ? deriv(n->kids[j], sym) : n->kids[j]);
                sum.push_back(make_mul(chart, std::move(prod)));
            }
            return make_add(chart, std::move(sum));
        }
        case ElemKind::pow: {
            // e * b^(e-1) * b'
            NodePtr db = deriv(n->kids[0], sym);
            return make_mul(chart, {make_rational(RatExpr::constant(chart, n->expo)),
                                    make_pow(n->kids[0], n->expo - 1), db});
        }
        case ElemKind::arctan: {
            NodePtr w = n->kids[0];
            NodePtr dw = deriv(w, sym);
            NodePtr denom = make_add(chart, {make_rational(RatExpr::constant(chart, 1)),
                                             make_pow(w, Rat(2))});
            return make_mul(chart, {dw, make_pow(denom, Rat(-1))});
        }
        case ElemKind::ln: {
            NodePtr w = n->kids[0];
            return make_mul(chart, {deriv(w, sym), make_pow(w, Rat(-1))});
        }
        case ElemKind::exp: {
            NodePtr w = n->kids[0];
            return make_mul(chart, {deriv(w, sym), make_fn(ElemKind::exp, w)});
        }
        case ElemKind::sech: {
            NodePtr w = n->kids[0];
            return make_mul(chart, {make_rational(RatExpr::constant(chart, -1)), deriv(w, sym),
                                    make_fn(ElemKind::sech, w), make_fn(ElemKind::tanh, w)});
        }
        case ElemKind::tanh: {
            NodePtr w = n->kids[0];
            return make_mul(chart, {deriv(w, sym), make_pow(make_fn(ElemKind::sech, w), Rat(2))});
        }
    }
    throw Error("unreachable");
}

bool node_depends(const NodePtr& n, std::size_t sym) {
    if (is_rat(n))
        return n->rat.depends_on(sym);
    for (const auto& k : n->kids)
        if (node_depends(k, sym))
            return true;
    return false;
}

double fn_eval_double(ElemKind k, double x) {
    switch (k) {
        case ElemKind::arctan:
            return std::atan(x);
        case ElemKind::ln:
            if (!(x > 0))
                throw DomainError("ln of a non-positive value");
            return std::log(x);
        case ElemKind::exp:
            return std::exp(x);
        case ElemKind::sech:
            return 1.0 / std::cosh(x);
        case ElemKind::tanh:
            return std::tanh(x);
        default:
            throw Error("not a function kind");
    }
}

using Value = ElemExpr::Value;

double to_double(const Value& v) {
    if (std::holds_alternative<Rat>(v))
        return rat_to_double(std::get<Rat>(v));
    return std::get<double>(v);
}

Value eval_node(const NodePtr& n, const std::map<std::string, Rat>& point) {
    switch (n->kind) {
        case ElemKind::rational:
            return n->rat.eval(point);
        case ElemKind::add: {
            Value acc = Rat(0);
            for (const auto& k : n->kids) {
                Value v = eval_node(k, point);
                if (std::holds_alternative<Rat>(acc) && std::holds_alternative<Rat>(v))
                    acc = std::get<Rat>(acc) + std::get<Rat>(v);
                else
                    acc = to_double(acc) + to_double(v);
            }
            return acc;
        }
        case ElemKind::mul: {
            Value acc = Rat(1);
            for (const auto& k : n->kids) {
                Value v = eval_node(k, point);
                if (std::holds_alternative<Rat>(acc) && std::holds_alternative<Rat>(v))
                    acc = std::get<Rat>(acc) * std::get<Rat>(v);
                else
                    acc = to_double(acc) * to_double(v);
            }
            return acc;
        }
        case ElemKind::pow: {
            Value b = eval_node(n->kids[0], point);
            if (std::holds_alternative<Rat>(b) && is_integer(n->expo))
                return rat_pow(std::get<Rat>(b), static_cast<long>(rat_num(n->expo)));
            double bd = to_double(b);
            double ed = rat_to_double(n->expo);
            if (bd < 0)
                throw DomainError("negative base with fractional exponent");
            if (bd == 0 && ed < 0)
                throw PoleError("zero base with negative exponent");
            return std::pow(bd, ed);
        }
        default:
            return fn_eval_double(n->kind, to_double(eval_node(n->kids[0], point)));
    }
}

}  // namespace

const char* elem_fn_name(ElemKind k) {
    switch (k) {
        case ElemKind::arctan:
            return "arctan";
        case ElemKind::ln:
            return "ln";
        case ElemKind::exp:
            return "exp";
        case ElemKind::sech:
            return "sech";
        case ElemKind::tanh:
            return "tanh";
        default:
            return "?";
    }
}

ElemExpr ElemExpr::rational(RatExpr r) { return ElemExpr(make_rational(std::move(r))); }

ElemExpr ElemExpr::constant(ChartPtr chart, Rat v) {
    return rational(RatExpr::constant(std::move(chart), std::move(v)));
}

ElemExpr ElemExpr::symbol(ChartPtr chart, std::string_view name) {
    return rational(RatExpr::symbol(std::move(chart), name));
}

ElemExpr ElemExpr::function(ElemKind fn, const ElemExpr& arg) {
    if (!is_fn(fn))
        throw Error("function() needs an elementary function kind");
    return ElemExpr(make_fn(fn, arg.root_));
}

ElemExpr ElemExpr::pow(const ElemExpr& base, const Rat& e) {
    return ElemExpr(make_pow(base.root_, e));
}

ElemExpr operator+(const ElemExpr& a, const ElemExpr& b) {
    ensure_same_chart(a.chart(), b.chart());
    return ElemExpr(make_add(a.chart(), {a.root_, b.root_}));
}

ElemExpr operator-(const ElemExpr& a, const ElemExpr& b) {
    ensure_same_chart(a.chart(), b.chart());
    auto neg = make_mul(b.chart(), {make_rational(RatExpr::constant(b.chart(), -1)), b.root_});
    return ElemExpr(make_add(a.chart(), {a.root_, neg}));
}

ElemExpr operator*(const ElemExpr& a, const ElemExpr& b) {
    ensure_same_chart(a.chart(), b.chart());
    return ElemExpr(make_mul(a.chart(), {a.root_, b.root_}));
}

ElemExpr operator/(const ElemExpr& a, const ElemExpr& b) {
    ensure_same_chart(a.chart(), b.chart());
    if (b.is_rational()) {
        const RatExpr& r = b.root_->rat;
        if (r.is_zero())
            throw PoleError("division by the zero expression");
        return ElemExpr(make_mul(a.chart(), {a.root_, make_rational(RatExpr::constant(a.chart(), 1) / r)}));
    }
    return ElemExpr(make_mul(a.chart(), {a.root_, make_pow(b.root_, Rat(-1))}));
}

ElemExpr ElemExpr::operator-() const {
    return ElemExpr(make_mul(chart(), {make_rational(RatExpr::constant(chart(), -1)), root_}));
}

std::optional<RatExpr> ElemExpr::as_rational() const {
    if (root_->kind == ElemKind::rational)
        return root_->rat;
    return std::nullopt;
}

ElemExpr ElemExpr::pderiv(std::size_t sym) const { return ElemExpr(deriv(root_, sym)); }

ElemExpr ElemExpr::pderiv(std::string_view name) const {
    auto idx = chart()->find(name);
    if (!idx)
        throw UnknownIdentifier(std::string(name));
    return pderiv(*idx);
}

Ternary ElemExpr::zero_verdict() const {
    if (root_->kind == ElemKind::rational)
        return root_->rat.is_zero() ? Ternary::zero : Ternary::nonzero;
    return Ternary::unknown;
}

bool ElemExpr::is_zero() const {
    switch (zero_verdict()) {
        case Ternary::zero:
            return true;
        case Ternary::nonzero:
            return false;
        default:
            throw Undecidable("elementary nodes survived structural simplification: " + str());
    }
}

bool ElemExpr::depends_on(std::size_t sym) const { return node_depends(root_, sym); }

ElemExpr::Value ElemExpr::eval_rational(const std::map<std::string, Rat>& point) const {
    return eval_node(root_, point);
}

double ElemExpr::eval_double(const std::map<std::string, double>& point) const {
    // go through the rational evaluator with exact conversions of the doubles
    std::map<std::string, Rat> exact;
    for (const auto& [k, v] : point)
        exact.emplace(k, Rat(v));
    return to_double(eval_node(root_, exact));
}

namespace {

// printing precedence levels
enum Level { LvlAdd = 0, LvlMul = 1, LvlPow = 2 };

bool rat_is_bare_symbol(const RatExpr& r) {
    if (!r.is_polynomial())
        return false;
    const auto& t = r.num().terms();
    if (t.size() != 1 || t.begin()->second != 1)
        return false;
    int total = 0;
    for (auto e : t.begin()->first)
        total += static_cast<int>(e);
    return total == 1;
}

bool rat_is_nonneg_integer(const RatExpr& r) {
    auto c = r.as_constant();
    return c && *c >= 0 && is_integer(*c);
}

std::string print_node(const NodePtr& n, int level);

std::string print_rat(const RatExpr& r, int level) {
    std::string s = r.str();
    if (level >= LvlPow)
        return (rat_is_bare_symbol(r) || rat_is_nonneg_integer(r)) ? s : "(" + s + ")";
    if (level >= LvlMul && r.is_polynomial() && r.num().terms().size() > 1)
        return "(" + s + ")";
    return s;
}

std::string print_node(const NodePtr& n, int level) {
    switch (n->kind) {
        case ElemKind::rational:
            return print_rat(n->rat, level);
        case ElemKind::add: {
            std::ostringstream os;
            bool first = true;
            for (const auto& k : n->kids) {
                std::string s = print_node(k, LvlMul);
                if (!first && !s.empty() && s[0] != '-')
                    os << " + ";
                else if (!first) {
                    os << " - ";
                    s = s.substr(1);
                }
                os << s;
                first = false;
            }
            std::string out = os.str();
            if (level >= LvlMul)
                out = "(" + out + ")";
            return out;
        }
        case ElemKind::mul: {
            std::ostringstream os;
            bool first = true;
            for (const auto& k : n->kids) {
                if (!first)
                    os << "*";
                os << print_node(k, LvlMul);
                first = false;
            }
            std::string out = os.str();
            if (level >= LvlPow)
                out = "(" + out + ")";
            return out;
        }
        case ElemKind::pow: {
            std::string base = print_node(n->kids[0], LvlPow);
            std::string ex;
            if (is_integer(n->expo) && n->expo > 0)
                ex = rat_str(n->expo);
            else
                ex = "(" + rat_str(n->expo) + ")";
            return base + "^" + ex;
        }
        default:
            return std::string(elem_fn_name(n->kind)) + "(" + print_node(n->kids[0], LvlAdd) + ")";
    }
}

}  // namespace

std::string ElemExpr::str() const { return print_node(root_, LvlAdd); }

ElemExpr ElemExpr::map_leaves(const std::function<RatExpr(const RatExpr&)>& fn) const {
    switch (root_->kind) {
        case ElemKind::rational:
            return rational(fn(root_->rat));
        case ElemKind::add: {
            ElemExpr acc = ElemExpr(root_->kids[0]).map_leaves(fn);
            for (std::size_t i = 1; i < root_->kids.size(); ++i)
                acc = acc + ElemExpr(root_->kids[i]).map_leaves(fn);
            return acc;
        }
        case ElemKind::mul: {
            ElemExpr acc = ElemExpr(root_->kids[0]).map_leaves(fn);
            for (std::size_t i = 1; i < root_->kids.size(); ++i)
                acc = acc * ElemExpr(root_->kids[i]).map_leaves(fn);
            return acc;
        }
        case ElemKind::pow:
            return pow(ElemExpr(root_->kids[0]).map_leaves(fn), root_->expo);
        default:
            return function(root_->kind, ElemExpr(root_->kids[0]).map_leaves(fn));
    }
}

int ElemExpr::compare(const ElemExpr& a, const ElemExpr& b) { return node_compare(a.root_, b.root_); }

}  // namespace edsw
