#ifndef SP6FLAGS_INVARIANTS_HPP
#define SP6FLAGS_INVARIANTS_HPP

#include "sp6flags/wedge.hpp"

namespace sp6flags {

/// The 6x6 matrix of degree-2 coordinate polynomials phi_ij(T), defined by
/// reading the top-form coefficient of T ^ (d/de_i T) ^ e_j.  Its square is
/// always a scalar matrix, and conjugation covariance under the group action
/// makes it the workhorse behind every invariant here.
struct PhiMatrix {
    Mat entries;
};

PhiMatrix phi_matrix(const TriVector& T);

/// The quartic invariant f with phi(T)^2 = f(T) I6.  Throws InternalError if
/// the square fails to be scalar (which would be an implementation bug).
Scalar quartic_f(const TriVector& T);

/// Degree-4 partial derivative contraction of T in slot i (1-based): the
/// 2-vector d/de_i T as 15 pair coordinates a<b.  Exposed for tests.
Vec wedge_derivative(const TriVector& T, int i);

/// Gram matrix G of the quadratic form v -> f2((x, v)) for a fixed x in
/// ker psi, so f2 = v^t G v; built from the symmetrization of M_J phi(x).
Mat f2_gram(const TriVector& x_part);

struct InvariantReport {
    Scalar f;  ///< quartic of the full point
    Scalar f1; ///< -1/4 quartic of the kernel component
    Scalar f2; ///< -1/2 v^t M_J phi(x) v
    bool semistable = false;
};

/// Splits T, evaluates both relative invariants, and reports semistability
/// (both invariants nonzero).
InvariantReport f1_f2_semistable(const TriVector& T);

} // namespace sp6flags

#endif
