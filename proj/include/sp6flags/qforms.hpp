#ifndef SP6FLAGS_QFORMS_HPP
#define SP6FLAGS_QFORMS_HPP

#include <string>
#include <vector>

#include "sp6flags/linalg.hpp"
#include "sp6flags/scalars.hpp"

namespace sp6flags {

/// A place of Q: a finite prime or the real place.
struct Place {
    bool infinite = false;
    std::uint64_t p = 0;

    static Place real() { return {true, 0}; }
    static Place finite(std::uint64_t p) { return {false, p}; }

    bool operator==(const Place& o) const {
        return infinite == o.infinite && (infinite || p == o.p);
    }
    bool operator<(const Place& o) const {
        if (infinite != o.infinite) return !infinite; // finite places first
        return p < o.p;
    }
    std::string to_string() const { return infinite ? "inf" : std::to_string(p); }
};

/// A nondegenerate diagonal quadratic form <a_1, ..., a_n> over its context.
struct QForm {
    FieldCtx ctx;
    Vec diag;

    std::size_t dim() const { return diag.size(); }
};

/// Build a form, checking that every entry is nonzero and in ctx.
QForm qform(const FieldCtx& ctx, const Vec& diag);
QForm qform_from_ints(const FieldCtx& ctx, const std::vector<long>& diag);

QForm qform_direct_sum(const QForm& a, const QForm& b);
QForm qform_tensor(const QForm& a, const QForm& b);
QForm qform_scale(const Scalar& c, const QForm& a);
/// The hyperbolic plane repeated n times: <1,-1,...>.
QForm qform_hyperbolic(const FieldCtx& ctx, std::size_t planes);

/// Gram matrix of the diagonal form (over the form's context).
Mat qform_gram(const QForm& q);
/// Evaluate q(v).
Scalar qform_eval(const QForm& q, const Vec& v);

/// Hilbert symbol (a, b)_v over Q; a, b nonzero rationals.  Computed by the
/// residue formulas (valuations and Legendre symbols at odd p, the mod-8
/// epsilon/omega formula at 2, sign inspection at the real place).
int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v);

/// Hasse symbol prod_{i<j} (a_i, a_j)_v of a rational form.
int hasse_symbol(const QForm& q, const Place& v);

/// The places where a finite list of rationals can have nontrivial local
/// behavior: 2, infinity, and the odd primes dividing any entry.
std::vector<Place> relevant_places(const std::vector<mpq_class>& entries);

/// Complete invariants of a form.  Over Q: dimension, squarefree
/// discriminant, signature, and Hasse symbols at the form's relevant places
/// (symbols are +1 everywhere else).  Over F_p: dimension and the Legendre
/// class of the discriminant (disc = +1 or -1; signature/hasse unused).
struct QFormInvariants {
    std::size_t dim = 0;
    mpz_class disc;
    std::pair<int, int> signature{0, 0};
    std::vector<std::pair<Place, int>> hasse;
};

QFormInvariants qform_invariants(const QForm& q);

/// Exact equivalence test (Hasse–Minkowski over Q; dim + discriminant over
/// F_p).  Throws FieldMismatchError when the contexts differ and
/// PreconditionError over quadratic extensions.
bool qform_equivalent(const QForm& a, const QForm& b);

bool qform_is_definite(const QForm& q);   ///< Q only
bool qform_is_indefinite(const QForm& q); ///< Q only

/// n-fold Pfister form <<s_1,...,s_n>> = tensor of <1, -s_i>.
QForm pfister(const FieldCtx& ctx, const Vec& slots);

/// Hyperbolicity of a Pfister form over Q (dim >= 4 and a power of two).
/// For 2-fold forms this is local triviality at every place; for >= 3-fold
/// forms indefiniteness decides.  The input must be a Pfister form.
bool is_hyperbolic_pfister(const QForm& q);

/// Whether t is a norm from Q(sqrt(-d)) (d, t nonzero rationals).  When -d is
/// a square the extension is split and everything is a norm.
bool is_norm_of_quad_ext(const mpq_class& d, const mpq_class& t);

/// A diagonal hermitian form <a_1,...,a_n> over Q(sqrt(-d)) with respect to
/// conjugation; the a_i are nonzero rationals.  When -d is a rational square
/// the "extension" is split Q x Q, recorded by the flag.
struct HermitianForm {
    mpq_class d;
    std::vector<mpq_class> entries;
    bool split = false;

    std::size_t dim() const { return entries.size(); }
};

HermitianForm hermitian_form(const mpq_class& d, const std::vector<mpq_class>& entries);

/// Trace form of a hermitian form: <a_i> over Q(sqrt(-d)) restricts to the
/// 2n-dimensional rational form  perp_i <a_i, d a_i>.
QForm hermitian_trace_form(const HermitianForm& h);

/// Jacobson's theorem: hermitian forms over Q(sqrt(-d)) are equivalent iff
/// their trace forms are equivalent over Q.  Requires equal d.
bool hermitian_equivalent(const HermitianForm& a, const HermitianForm& b);

/// Whether det(h) = prod a_i is a norm from Q(sqrt(-d)), i.e. the hermitian
/// discriminant is trivial.
bool hermitian_disc_trivial(const HermitianForm& h);

} // namespace sp6flags

#endif
