#ifndef SP6FLAGS_FLAGS_HPP
#define SP6FLAGS_FLAGS_HPP

#include <string>
#include <vector>

#include "sp6flags/composition.hpp"
#include "sp6flags/orbits.hpp"
#include "sp6flags/qforms.hpp"

namespace sp6flags {

/// Classification data of the norm form of a composition algebra over Q,
/// keyed by dimension:
///
///   dim 2:  disc        squarefree discriminant class; the algebra is the
///                       etale quadratic Q(sqrt(-disc)), split iff disc = -1
///   dim 4:  ramified    finite/real places where the quaternion algebra is
///                       ramified (empty set = the matrix algebra M2)
///   dim 8:  oct         split (Zorn) or division octonions
///
/// `split` summarizes all three cases (zero divisors present).
struct CompClass {
    std::size_t dim = 0;
    mpz_class disc;
    std::vector<Place> ramified;
    OctClass oct = OctClass::split;
    bool split = false;

    std::string to_string() const;
};

/// Classifies a rational diagonal form as the norm form of a composition
/// algebra.  Requires dim in {2, 4, 8} and the composition shape:
///
///   dim 2:  represents 1, i.e. (a, b)_v = 1 at every place
///   dim 4:  square discriminant and not negative definite
///   dim 8:  equivalent to the hyperbolic rank-8 form or to <1>^8 (the only
///           two octonion norm classes over Q)
///
/// Throws PreconditionError when the form is rational but not of composition
/// shape, or when the context is not Q, or on any other dimension.  The
/// dim-4 ramification set is computed by local anisotropy: a square-disc
/// quaternary form is anisotropic over Q_p iff its Hasse symbol differs from
/// the split one, and over R iff it is definite.
CompClass classify_composition_form(const QForm& q);

/// Arithmetic invariants of the flag of composition algebras attached to a
/// semistable orbit: Q < K < Q < C with K = Q(sqrt(-i_class)) etale,
/// Q the quaternion subalgebra selected by the pattern slot, and C the
/// ambient octonion algebra.
struct FlagDescriptor {
    /// Squarefree class of f1; K = Q(sqrt(-i_class)).  -1 means K = Q x Q
    /// and the whole flag is the split one.
    mpz_class i_class;
    bool k_split = false;
    /// Which canonical pattern slot produced the quaternion level.
    int pattern = 1;
    /// Rank-3 hermitian form diag(y1, y2, y3) over K; its discriminant class
    /// is trivial (certified), so it carries no information beyond K itself,
    /// but its trace form is the natural rank-6 comparison object.
    HermitianForm h;
    /// Trace form of diag(1, y_m) over K: the norm form of the quaternion
    /// level.  Certified against the Killing-form extraction from the
    /// stabilizer of the corresponding orbit point.
    QForm quaternion_norm;
    /// Trace form of diag(1, y1, y2, y3) over K: the norm form of the
    /// octonion level.
    QForm octonion_norm;
    std::vector<Place> quaternion_ramification;
    OctClass octonion_class = OctClass::split;
};

/// Computes the flag descriptor of the orbit through the family point
/// (x(y0..y3), pattern-m component).  Requires the rational context, a
/// semistable x-part (f1 != 0) and a semistable pattern (f2 != 0);
/// PreconditionError otherwise.
///
/// Certified on every call (InternalError on failure):
///   - disc(h) is a norm from K (trivial discriminant class),
///   - octonion_norm == quaternion_norm (x) <1, -lambda3> for the flag
///     tower doubling scalar lambda3,
///   - quaternion_norm matches the Killing-form extraction
///     quaternion_norm_from_stabilizer(lie_stabilizer(point)).
FlagDescriptor flag_of_point(const NormalFormX& nf, int pattern);

/// Descriptor equality as flags: equal K (i_class), equivalent hermitian
/// trace forms, equal quaternion ramification sets, equal octonion class.
/// The pattern slot is ignored: different slots over the same point may
/// produce different quaternion levels, which this comparison does detect
/// via the ramification sets.
bool flags_equal(const FlagDescriptor& a, const FlagDescriptor& b);

/// Human-readable one-line summary, e.g.
/// "Q < Q(sqrt(-1)) < H{2,inf} < octonion(division)".
std::string flag_to_string(const FlagDescriptor& d);

} // namespace sp6flags

#endif
