#ifndef SP6FLAGS_ORBITS_HPP
#define SP6FLAGS_ORBITS_HPP

#include <optional>
#include <string>
#include <vector>

#include "sp6flags/invariants.hpp"
#include "sp6flags/qforms.hpp"
#include "sp6flags/wedge.hpp"

namespace sp6flags {

/// Four-parameter family of kernel points
///
///   x = -e123 - y0*e456 + y1*e156 + y2*e426 + y3*e453
///
/// whose first invariant is f1(x) = y1*y2*y3 - (1/4)*y0^2.  Every semistable
/// kernel orbit meets this family, which makes it the standard input shape
/// for stabilizer and flag computations.  f1 is recomputed from the
/// assembled trivector and certified on construction.
struct NormalFormX {
    FieldCtx ctx;
    Scalar y0, y1, y2, y3;
    Scalar f1;
    bool x_semistable = false; ///< f1 != 0
};

/// Validates y1, y2, y3 nonzero (PreconditionError otherwise); y0 is free.
/// A vanishing f1 is allowed but leaves x_semistable = false.
NormalFormX normal_form_x(const Scalar& y0, const Scalar& y1, const Scalar& y2,
                          const Scalar& y3);
NormalFormX normal_form_x_ints(const FieldCtx& ctx, long y0, long y1, long y2,
                               long y3);

/// The bare kernel point of the family (zero 6-dim component).
TriVector normal_form_x_part(const NormalFormX& nf);
/// x + iota(v): the family point paired with a 6-dim component.
TriVector normal_form_point(const NormalFormX& nf, const Vec& v);

/// -e123 - y0*e456, the two-term kernel point with f1 = -(1/4)*y0^2.
TriVector split_x_part(const Scalar& y0);

/// q(v) = v1*v4 + v2*v5 + v3*v6.  Over the two-term point the second
/// invariant degenerates to f2((split x, v)) = -y0*q(v), so q = 0 is exactly
/// the non-semistable locus of the fiber.
Scalar pairing_q(const Vec& v);

/// Canonical 6-dim patterns over a family point: pattern m in {1,2,3} has
/// entries (2, -y0/ym) in slots (m, m+3) and zeros elsewhere, giving
/// f2 = -(4*yj*yl - y0^2/ym) with {j,l} = {1,2,3} \ {m}.
Vec canonical_pattern_v(const NormalFormX& nf, int m);

struct CanonicalizeResult {
    SympElement g;       ///< product of at most three det-1 block factors
    TriVector canonical; ///< g.(x + iota v) == x + iota (q,0,0,1,0,0)
    Scalar q;            ///< pairing_q of the input
};

/// Moves an admissible 6-dim component over the two-term point x into the
/// shape (q(v),0,0,1,0,0) while fixing x.  Deterministic: when v1*v4 = 0 the
/// smallest m with vm*v_{m+3} != 0 is rotated into slots (1,4) first, then
/// two triangular block elements clear the remaining entries.  The
/// postcondition is certified by acting with the returned element.
/// Throws PreconditionError when y0 = 0 or q(v) = 0.
CanonicalizeResult canonicalize_v(const Scalar& y0, const Vec& v);

/// A Lie algebra presented by matrices: basis, structure constants of the
/// commutator in that basis, and the Killing form kappa(a,b) = tr(ad a ad b).
struct LieStabilizer {
    FieldCtx ctx;
    std::vector<Mat> basis;                  ///< 6x6, inside the symplectic algebra
    std::vector<std::vector<Vec>> structure; ///< [i][j] -> coords of [b_i, b_j]
    Mat killing;                             ///< dim x dim, symmetric

    std::size_t dim() const { return basis.size(); }
};

/// The 21 basis matrices [[A,B],[C,-A^t]] (B, C symmetric) of the symplectic
/// Lie algebra: 9 with A a matrix unit, 6 + 6 with B resp. C a symmetric unit.
std::vector<Mat> sp6_lie_basis(const FieldCtx& ctx);

/// Annihilator of T under the derivation action, inside the symplectic Lie
/// algebra: solves the exact 20 x 21 linear system, then attaches structure
/// constants and the Killing form.  Every returned basis element is certified
/// to annihilate T and to satisfy the Lie-algebra membership identity.
LieStabilizer lie_stabilizer(const TriVector& T);

/// Structure constants and Killing form for an arbitrary list of matrices
/// spanning a bracket-closed space; exposed so change-of-basis invariance is
/// testable.  Throws InternalError when a bracket leaves the span.
LieStabilizer lie_structure_from_basis(const FieldCtx& ctx,
                                       std::vector<Mat> basis);

/// Norm form of the quaternion algebra whose unit group the 3-dimensional
/// stabilizer generates: <1> perp the diagonalization of -kappa/8.  The
/// normalization is pinned by the split case, where the Cartan element h of
/// a standard sl2 triple has kappa(h,h) = 8 and determinant norm -1.
/// Throws PreconditionError unless dim = 3 with nondegenerate kappa.
QForm quaternion_norm_from_stabilizer(const LieStabilizer& L);

// ---------------------------------------------------------------------------
// explicit transport matrices, runtime-verified

enum class WitnessCase {
    normal_form_transport, ///< conjugates the doubled-split pair to a family point
    orbit_chain,           ///< rescales (split, (a,0,0,1,0,0)) to the reference pair
    sl2_embed,             ///< diag(diag(1,C1), inverse-transpose), C1 2x2
    sl3_embed,             ///< diag(A, inverse-transpose), A 3x3
};

WitnessCase witness_case_from_string(const std::string& name);
std::string witness_case_name(WitnessCase c);

struct WitnessParams {
    std::optional<Scalar> i;                  ///< orbit_chain: first-invariant value
    std::optional<Scalar> a;                  ///< orbit_chain: slot-1 source entry
    std::optional<Scalar> y0, y1, y2, y3;     ///< normal_form_transport target family
    std::optional<Mat> block;                 ///< sl2_embed: 2x2; sl3_embed: 3x3
};

/// A group element (g, cx, cv) acting on split pairs componentwise:
/// (x, v) -> (cx * g.x, cv * g v).  g must be symplectic.
struct WitnessElement {
    Mat g;
    Scalar cx, cv;
};

struct WitnessReport {
    std::vector<WitnessElement> elements;
    bool verified = false; ///< membership and the advertised mapping both hold
    std::string detail;
};

/// Builds the explicit matrices for the requested case and verifies them at
/// runtime: each element must pass the symplectic membership check, and the
/// composite must map the case's designated source pair to its designated
/// target pair under the action.  Throws PreconditionError when a needed
/// square root is absent from the field or a parameter is missing.
WitnessReport witness(const FieldCtx& ctx, WitnessCase c,
                      const WitnessParams& p);

/// Componentwise scaled action on a split pair; g must be symplectic.
SplitParts act_scaled_pair(const SympElement& g, const Scalar& cx,
                           const Scalar& cv, const SplitParts& P);

} // namespace sp6flags

#endif
