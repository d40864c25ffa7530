#ifndef SP6FLAGS_WEDGE_HPP
#define SP6FLAGS_WEDGE_HPP

#include <array>
#include <cstddef>
#include <string>

#include "sp6flags/linalg.hpp"
#include "sp6flags/rng.hpp"

namespace sp6flags {

/// Degree-3 exterior power of a 6-dimensional symplectic space: 20
/// coordinates indexed by sorted triples i<j<l from {1..6}, lexicographic.
inline constexpr std::size_t kTriCount = 20;

const std::array<std::array<int, 3>, kTriCount>& tri_table();

/// Index of a *sorted* triple in tri_table() order.
std::size_t tri_index(int i, int j, int l);

/// Arbitrary triple of indices in {1..6} -> slot plus the sign of the sorting
/// permutation; a repeated index gives sign 0 (the wedge vanishes).
struct TriRef {
    std::size_t index = 0;
    int sign = 0;
};
TriRef tri_ref(int i, int j, int l);

struct TriVector {
    FieldCtx ctx;
    Vec coords; ///< kTriCount entries in tri_table() order

    explicit TriVector(const FieldCtx& c);
    TriVector(const FieldCtx& c, Vec coeffs);

    bool operator==(const TriVector& o) const { return coords == o.coords; }
    bool operator!=(const TriVector& o) const { return !(*this == o); }
};

TriVector trivector_zero(const FieldCtx& ctx);

/// Coefficient of e_i ^ e_j ^ e_l with antisymmetric sign normalization;
/// zero when an index repeats.
Scalar tv_coeff(const TriVector& T, int i, int j, int l);

/// T += c * e_i ^ e_j ^ e_l (no-op when an index repeats).
void tv_add_term(TriVector& T, int i, int j, int l, const Scalar& c);

TriVector tv_add(const TriVector& a, const TriVector& b);
TriVector tv_sub(const TriVector& a, const TriVector& b);
TriVector tv_scale(const Scalar& c, const TriVector& T);
bool tv_is_zero(const TriVector& T);

/// Text grammar: signed terms `c*e{ijl}` joined by +/-, e.g.
/// "-1*e123 - 2*e456 + 1*e156".  Unsorted triples are accepted and
/// sign-normalized; coefficients containing a top-level +/- must be
/// parenthesized (the formatter does this automatically).
std::string trivector_format(const TriVector& T);
TriVector trivector_parse(const FieldCtx& ctx, const std::string& text);

// ---------------------------------------------------------------------------
// the symplectic space and its similitude group

struct SymplecticSpace {
    FieldCtx ctx;
    Mat M_J; ///< [[0, I3], [-I3, 0]]
};
SymplecticSpace symplectic_space(const FieldCtx& ctx);
Mat symplectic_form_matrix(const FieldCtx& ctx);

/// J(e_a, e_b) for 1-based indices, valued in {-1, 0, 1}.
int form_on_basis(int a, int b);

struct SympElement {
    Mat g;
    Scalar similitude; ///< lambda with g M_J g^t = lambda M_J

    bool is_symplectic() const { return similitude.is_one(); }
};

/// Verifies g M_J g^t = lambda M_J for some nonzero lambda; throws
/// PreconditionError("not a similitude") otherwise.
SympElement check_symplectic(const Mat& g);

/// diag(a I3, I3), similitude factor a.
Mat similitude_h(const Scalar& a);
/// diag(A, (A^t)^{-1}), symplectic for any invertible A.
Mat embed_gl3_pair(const Mat& A);
/// diag((B^t)^{-1}, B), symplectic for any invertible B.
Mat embed_pair_gl3(const Mat& B);
/// [[a,b],[c,d]] with det 1 acting on the (e_m, e_{m+3}) plane, m in 1..3.
Mat embed_sl2_block(const FieldCtx& ctx, int m, const Scalar& a, const Scalar& b,
                    const Scalar& c, const Scalar& d);
/// Symplectic transvection I + c u u^t M_J (symplectic for every u, c).
Mat transvection(const Vec& u, const Scalar& c);

/// Random word of bounded length in transvections, GL3-pair blocks and
/// SL2-blocks; the result is exactly symplectic (certified before return).
Mat random_symplectic(Rng& rng, const FieldCtx& ctx, int word_len = 12);

// ---------------------------------------------------------------------------
// the action on trivectors and the contraction splitting

/// Linear extension of e_i^e_j^e_l -> g e_i ^ g e_j ^ g e_l (any 6x6 g).
TriVector act_gl6(const Mat& g, const TriVector& T);
TriVector act_wedge3(const SympElement& g, const TriVector& T);

/// Similitude action on split pairs: (x, v) -> (g x, g v).  Agrees with
/// act_wedge3 when g is symplectic; for a proper similitude the embedded
/// 6-dim component of the cube representation picks up an extra factor of
/// the similitude character, which this action deliberately removes so that
/// the component is the plain standard representation.
TriVector act_pair(const SympElement& g, const TriVector& T);

/// Derivation action: xi.(u^v^w) = xi u^v^w + u^xi v^w + u^v^xi w.
TriVector act_derivation(const Mat& xi, const TriVector& T);

/// psi(v1^v2^v3) = J(v2,v3) v1 - J(v1,v3) v2 + J(v1,v2) v3, extended linearly.
Vec contract_psi(const TriVector& T);

/// Linear section of psi: psi(iota(v)) = v.
TriVector iota(const Vec& v);

struct SplitParts {
    TriVector x_part; ///< lies in ker psi, exactly
    Vec v_part;
};
SplitParts split_components(const TriVector& T);

// ---------------------------------------------------------------------------
// matrix-pair coordinates

struct ZCoords {
    Scalar x0, y0;
    Mat a, b; ///< 3x3 each
};
ZCoords z_identify(const TriVector& T);
TriVector z_assemble(const ZCoords& z);

} // namespace sp6flags

#endif
