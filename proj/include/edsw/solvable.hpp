#pragma once

#include "edsw/elem.hpp"
#include "edsw/exterior.hpp"

#include <optional>
#include <string>
#include <vector>

namespace edsw {

// Ordered vector fields with the verified Lie-derivative certificate.
// Fields are listed the way the paper writes them: the first element is the
// outermost symmetry X_p, the last is X_1 (first Lie condition, innermost in
// the chain contractions).
struct SolvableStructure {
    DiffForm omega;
    std::vector<VectorField> fields;  // X_p, ..., X_1
    std::vector<RatExpr> factors;     // ell_1, ..., ell_p (condition order)
};

enum class Provenance { extracted, user_supplied };

struct FirstIntegral {
    ElemExpr f;
    std::vector<VectorField> distribution;  // generators it annihilates
    Provenance provenance = Provenance::user_supplied;
};

struct ChainResult {
    std::vector<DiffForm> sigma;       // sigma^1..sigma^k (condition order)
    std::vector<DiffForm> omega_dual;  // omega^i = sigma^i / (X_i .| sigma^i)
    std::vector<bool> closed_exact;    // d omega^i = 0
    std::vector<bool> closed_mod;      // d omega^i ^ omega^1..omega^{i-1} = 0
    std::vector<std::optional<FirstIntegral>> potentials;  // gamma^i where polynomial
};

enum class MoreoverOutcome { holds, vacuous_constant, failed };

struct Prop26Result {
    std::vector<DiffForm> sequence;  // Omega, X_p .| Omega, ..., X_2 .| ... .| Omega
    RatExpr full_contraction;        // Omega(X_p, ..., X_1)
    MoreoverOutcome moreover;
};

// Check the direct-sum condition and each Lie-derivative proportionality,
// solving for ell_i by coefficient ratio. Throws NotDirectSum (with the
// vanishing combination as witness) or NotProportional(i).
SolvableStructure verify_solvable(const DiffForm& omega, const std::vector<VectorField>& fields,
                                  const std::vector<std::string>& labels = {});

// Theorem 2.5 integration chain: duals, closure flags, potentials by
// quadrature where the coefficients are polynomial.
ChainResult chain(const SolvableStructure& s);

// Proposition 2.6: with d Omega = 0 and the strengthened zero Lie conditions,
// the contraction sequence is simple and closed; the last element is a closed
// one-form factor of Omega. Also evaluates the "moreover" identity
// d(Omega(X_p,...,X_1)) ^ (X_2 .| ... .| X_p .| Omega) = 0 whenever the full
// contraction is non-constant.
Prop26Result prop26_factors(const DiffForm& omega, const std::vector<VectorField>& fields,
                            const std::vector<std::string>& labels = {});

// alpha with L_{f^alpha X} Omega = 0, from L_X Omega = lambda Omega and
// X(f) = mu f with constant lambda, mu. alpha = -lambda/mu.
Rat scale_to_symmetry(const VectorField& x, const DiffForm& omega, const RatExpr& f);

// Potential of a closed polynomial 1-form by the radial homotopy formula,
// verified by d(gamma) = omega before returning.
FirstIntegral integrate_closed(const DiffForm& omega,
                               const std::optional<std::vector<Rat>>& base_point = std::nullopt);

// V(f) = 0 for every generator; accepts elementary candidates whose
// derivatives collapse to rational zero.
FirstIntegral verify_first_integral(const std::vector<VectorField>& dist, const ElemExpr& f);

ElemExpr apply_field(const VectorField& v, const ElemExpr& f);

// df as a 1-form when every partial derivative collapses to a RatExpr
std::optional<DiffForm> rational_differential(const ElemExpr& f);

}  // namespace edsw
