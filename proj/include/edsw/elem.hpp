#pragma once

#include "edsw/ratexpr.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace edsw {

enum class ElemKind { rational, add, mul, pow, arctan, ln, exp, sech, tanh };

enum class Ternary { zero, nonzero, unknown };

// Differentiation-capable expression DAG: rational leaves plus an elementary
// layer {add, mul, pow(rational exponent), arctan, ln, exp, sech, tanh}.
// Nodes are immutable and structurally normalized on construction, so an
// expression with no surviving elementary node *is* a RatExpr.
class ElemExpr {
public:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;
    struct Node {
        ElemKind kind;
        ChartPtr chart;
        RatExpr rat;               // rational leaf payload
        std::vector<NodePtr> kids; // add/mul: >= 2; pow/function: 1
        Rat expo;                  // pow exponent
    };

    ElemExpr() = default;  // detached; only valid as a moved-from shell

    static ElemExpr rational(RatExpr r);
    static ElemExpr constant(ChartPtr chart, Rat v);
    static ElemExpr symbol(ChartPtr chart, std::string_view name);
    static ElemExpr function(ElemKind fn, const ElemExpr& arg);
    static ElemExpr pow(const ElemExpr& base, const Rat& e);

    friend ElemExpr operator+(const ElemExpr& a, const ElemExpr& b);
    friend ElemExpr operator-(const ElemExpr& a, const ElemExpr& b);
    friend ElemExpr operator*(const ElemExpr& a, const ElemExpr& b);
    friend ElemExpr operator/(const ElemExpr& a, const ElemExpr& b);
    ElemExpr operator-() const;

    ElemKind kind() const { return root_->kind; }
    const ChartPtr& chart() const { return root_->chart; }
    const NodePtr& node() const { return root_; }

    bool is_rational() const { return root_->kind == ElemKind::rational; }
    // lossless conversion when no elementary node survived normalization
    std::optional<RatExpr> as_rational() const;

    ElemExpr pderiv(std::size_t sym) const;
    ElemExpr pderiv(std::string_view name) const;

    // {zero, nonzero} only for rational-convertible input; unknown otherwise.
    Ternary zero_verdict() const;
    // boolean context: throws Undecidable on unknown
    bool is_zero() const;

    bool depends_on(std::size_t sym) const;
    bool has_elementary() const { return !is_rational(); }

    using Value = std::variant<Rat, double>;
    // exact rational unless an elementary node is hit
    Value eval_rational(const std::map<std::string, Rat>& point) const;
    double eval_double(const std::map<std::string, double>& point) const;

    std::string str() const;

    // Rebuild through the smart constructors with every rational leaf mapped
    // (the map may move the expression to another chart).
    ElemExpr map_leaves(const std::function<RatExpr(const RatExpr&)>& fn) const;

    static int compare(const ElemExpr& a, const ElemExpr& b);

private:
    explicit ElemExpr(NodePtr n) : root_(std::move(n)) {}
    NodePtr root_;
};

const char* elem_fn_name(ElemKind k);

}  // namespace edsw
