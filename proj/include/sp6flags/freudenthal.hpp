#ifndef SP6FLAGS_FREUDENTHAL_HPP
#define SP6FLAGS_FREUDENTHAL_HPP

#include <array>
#include <vector>

#include "sp6flags/composition.hpp"
#include "sp6flags/flags.hpp"

namespace sp6flags {

/// The cubic Jordan algebra of 3x3 matrices over a composition algebra C
/// that are hermitian with respect to the twisted involution
/// X -> Gamma^{-1} conj(X)^t Gamma, Gamma = diag(gamma_1, gamma_2, gamma_3).
/// Dimension 3 (dim C + 1); characteristic 2 and 3 are rejected (both the
/// Jordan halving and the trace formula for the determinant need them
/// invertible).
struct FreudenthalAlgebra {
    CompAlgebra C;
    Vec gamma;

    std::size_t dim() const { return 3 * (C.dim() + 1); }
};

/// Validates three nonzero gammas in the coefficient field of C and the
/// characteristic restriction.
FreudenthalAlgebra freudenthal_algebra(const CompAlgebra& C, const Vec& gamma);

/// An element in the compressed parametrization: scalar diagonal
/// (alpha_1, alpha_2, alpha_3) and the three independent off-diagonal slots
/// c[0] at (2,3), c[1] at (3,1), c[2] at (1,2) (cyclic).  The transposed
/// entries are determined by the twisted symmetry
/// x_ji = gamma_j^{-1} gamma_i conj(x_ij).
struct FreudenthalElement {
    Vec alpha;
    std::array<Vec, 3> c;

    bool operator==(const FreudenthalElement& o) const {
        return alpha == o.alpha && c == o.c;
    }
    bool operator!=(const FreudenthalElement& o) const { return !(*this == o); }
};

/// Full 3x3 matrix of C-coordinate vectors, row major.
using FreudenthalGrid = std::array<std::array<Vec, 3>, 3>;

/// Builds an element from the compressed data (always consistent); entries
/// are validated to lie in C.
FreudenthalElement freudenthal_element(const FreudenthalAlgebra& F, const Vec& alpha,
                                       const std::array<Vec, 3>& c);

/// Builds an element from a full matrix, checking that the diagonal is
/// scalar and the off-diagonal entries satisfy the twisted symmetry.  The
/// PreconditionError message names the first offending entry (1-based).
FreudenthalElement make_hermitian_element(const FreudenthalAlgebra& F,
                                          const FreudenthalGrid& entries);

/// Expands the compressed parametrization back into the full matrix.
FreudenthalGrid element_grid(const FreudenthalAlgebra& F, const FreudenthalElement& X);

FreudenthalElement freudenthal_zero(const FreudenthalAlgebra& F);
FreudenthalElement freudenthal_identity(const FreudenthalAlgebra& F);
FreudenthalElement freudenthal_add(const FreudenthalAlgebra& F,
                                   const FreudenthalElement& X,
                                   const FreudenthalElement& Y);
FreudenthalElement freudenthal_sub(const FreudenthalAlgebra& F,
                                   const FreudenthalElement& X,
                                   const FreudenthalElement& Y);
FreudenthalElement freudenthal_scale(const FreudenthalAlgebra& F, const Scalar& s,
                                     const FreudenthalElement& X);
bool freudenthal_is_zero(const FreudenthalElement& X);

/// Generic trace: the sum of the diagonal scalars.
Scalar freudenthal_trace(const FreudenthalAlgebra& F, const FreudenthalElement& X);

/// Jordan product X o Y = (XY + YX)/2, computed on full matrices over C.
/// The result is certified to be hermitian again (InternalError otherwise —
/// closure is a theorem, so a failure is an implementation bug).
FreudenthalElement jordan_mul(const FreudenthalAlgebra& F, const FreudenthalElement& X,
                              const FreudenthalElement& Y);

/// Left-normed Jordan power X, X o X, (X o X) o X, ...; k >= 1.
FreudenthalElement jordan_power(const FreudenthalAlgebra& F, const FreudenthalElement& X,
                                unsigned k);

/// The generic cubic data of an element.  T, S, N are read off the traces of
/// Jordan powers,
///
///   T = tr X,   S = (T^2 - tr X^2)/2,   N = (T^3 - 3 T tr X^2 + 2 tr X^3)/6,
///
/// never from an entrywise determinant (which is ill-defined for octonion
/// entries).  adjoint = X^2 - T X + S I.  Two identities are certified on
/// every call (InternalError on failure): the cubic equation
/// X^3 - T X^2 + S X - N I = 0 and X o adjoint = N I.
struct CubicData {
    Scalar T, S, N;
    FreudenthalElement square, cube, adjoint;
};

CubicData cubic_data(const FreudenthalAlgebra& F, const FreudenthalElement& X);

/// Bilinearization of the adjoint: X x Y = (X+Y)^# - X^# - Y^#, so that
/// X x X = 2 X^#.
FreudenthalElement freudenthal_cross(const FreudenthalAlgebra& F,
                                     const FreudenthalElement& X,
                                     const FreudenthalElement& Y);

/// Diagonalization of the bilinear trace form (X, Y) -> tr(X o Y) on the
/// standard basis (diagonal units, then slot-by-slot C-basis vectors).  Over
/// Q and prime fields the result is certified equivalent to
///
///   <1,1,1>  perp  b_N (x) <g3^-1 g2, g1^-1 g3, g2^-1 g1>
///
/// where b_N is the polar Gram of the norm of C (InternalError on failure);
/// over quadratic extensions no exact equivalence test exists, so only the
/// diagonalization is returned.
QForm algebra_trace_form(const FreudenthalAlgebra& F);

/// The two reduced invariant forms and the tower of four Jordan algebras
/// attached to a flag descriptor: H3 over each level of the doubling tower
/// k < K < Q < C with Gamma = I.  The entrywise inclusions are verified to
/// be Jordan homomorphisms preserving T and N on `samples` random pairs per
/// level.
struct FreudenthalOrbitReport {
    QForm dim6; ///< <1,1,1> perp <-c, -d, cd> for the quaternion slots (c, d)
    QForm dim9; ///< <1,1,1> perp b_{N_K} (x) <-b1, -c1, b1 c1> for the octonion slots
    std::vector<FreudenthalAlgebra> levels; ///< dims 6, 9, 15, 27
    int samples = 0;
};

/// Certified on every call: <<c, d>> is equivalent to the descriptor's
/// quaternion norm, and N_C is equivalent to N_K (x) <<b1, c1>>.
FreudenthalOrbitReport orbit_to_freudenthal(const FlagDescriptor& d, unsigned seed = 0,
                                            int samples = 8);

} // namespace sp6flags

#endif
