#include "sp6flags/orbits.hpp"

#include <utility>

namespace sp6flags {

namespace {

/// Re-home a scalar into ctx.  Rationals embed into extensions and reduce
/// into prime fields; anything else must already match.
Scalar lift(const FieldCtx& ctx, const Scalar& s) {
    if (s.ctx() == ctx) return s;
    if (s.kind() == FieldKind::rationals) return ctx.from_rational(s.rat());
    throw FieldMismatchError("scalar from " + s.ctx().to_string() +
                             " used over " + ctx.to_string());
}

Vec lift_vec(const FieldCtx& ctx, const Vec& v) {
    Vec out;
    out.reserve(v.size());
    for (const Scalar& s : v) out.push_back(lift(ctx, s));
    return out;
}

void require_six(const Vec& v) {
    if (v.size() != 6)
        throw PreconditionError("6-dim component must have exactly 6 entries, got " +
                                std::to_string(v.size()));
}

Mat mat3_from_ints(const FieldCtx& ctx, const long (&rows)[3][3]) {
    Mat m(ctx, 3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.at(r, c) = ctx.from_int(rows[r][c]);
    return m;
}

/// Lower-triangular clearing block [[1/w1,0,0],[-w2,w1,0],[-w3/w1,0,1]]:
/// determinant 1, sends (w1,w2,w3) to (1,0,0).
Mat clearing_block(const FieldCtx& ctx, const Scalar& w1, const Scalar& w2,
                   const Scalar& w3) {
    Mat m(ctx, 3, 3);
    m.at(0, 0) = w1.inverse();
    m.at(1, 0) = -w2;
    m.at(1, 1) = w1;
    m.at(2, 0) = -(w3 / w1);
    m.at(2, 2) = ctx.one();
    return m;
}

bool pair_equal(const SplitParts& a, const SplitParts& b) {
    return a.x_part == b.x_part && a.v_part == b.v_part;
}

Scalar need(const std::optional<Scalar>& s, const char* what) {
    if (!s) throw PreconditionError(std::string("missing parameter ") + what);
    return *s;
}

Scalar sqrt_or_throw(const FieldCtx& ctx, const Scalar& s, const char* what) {
    std::optional<Scalar> r = s.sqrt();
    if (!r)
        throw PreconditionError(std::string(what) + " has no square root in " +
                                ctx.to_string());
    return *r;
}

} // namespace

NormalFormX normal_form_x(const Scalar& y0, const Scalar& y1, const Scalar& y2,
                          const Scalar& y3) {
    if (y1.is_zero() || y2.is_zero() || y3.is_zero())
        throw PreconditionError("family parameters y1, y2, y3 must be nonzero");
    // The sum aligns the four contexts (or throws FieldMismatchError).
    FieldCtx ctx = (y0 + y1 + y2 + y3).ctx();
    NormalFormX nf;
    nf.ctx = ctx;
    nf.y0 = lift(ctx, y0);
    nf.y1 = lift(ctx, y1);
    nf.y2 = lift(ctx, y2);
    nf.y3 = lift(ctx, y3);
    nf.f1 = nf.y1 * nf.y2 * nf.y3 - (nf.y0 * nf.y0) / 4;
    nf.x_semistable = !nf.f1.is_zero();
    if (nf.f1 != -(quartic_f(normal_form_x_part(nf)) / 4))
        throw InternalError("family invariant disagrees with the quartic of the "
                            "assembled point");
    return nf;
}

NormalFormX normal_form_x_ints(const FieldCtx& ctx, long y0, long y1, long y2,
                               long y3) {
    return normal_form_x(ctx.from_int(y0), ctx.from_int(y1), ctx.from_int(y2),
                         ctx.from_int(y3));
}

TriVector normal_form_x_part(const NormalFormX& nf) {
    TriVector T = trivector_zero(nf.ctx);
    tv_add_term(T, 1, 2, 3, -nf.ctx.one());
    tv_add_term(T, 4, 5, 6, -nf.y0);
    tv_add_term(T, 1, 5, 6, nf.y1);
    tv_add_term(T, 4, 2, 6, nf.y2);
    tv_add_term(T, 4, 5, 3, nf.y3);
    return T;
}

TriVector normal_form_point(const NormalFormX& nf, const Vec& v) {
    require_six(v);
    return tv_add(normal_form_x_part(nf), iota(lift_vec(nf.ctx, v)));
}

TriVector split_x_part(const Scalar& y0) {
    const FieldCtx ctx = y0.ctx();
    TriVector T = trivector_zero(ctx);
    tv_add_term(T, 1, 2, 3, -ctx.one());
    tv_add_term(T, 4, 5, 6, -y0);
    return T;
}

Scalar pairing_q(const Vec& v) {
    require_six(v);
    return v[0] * v[3] + v[1] * v[4] + v[2] * v[5];
}

Vec canonical_pattern_v(const NormalFormX& nf, int m) {
    if (m < 1 || m > 3)
        throw PreconditionError("pattern index must be 1, 2, or 3");
    const Scalar ym = m == 1 ? nf.y1 : m == 2 ? nf.y2 : nf.y3;
    Vec v(6, nf.ctx.zero());
    v[m - 1] = nf.ctx.from_int(2);
    v[m + 2] = -(nf.y0 / ym);
    return v;
}

CanonicalizeResult canonicalize_v(const Scalar& y0, const Vec& v) {
    require_six(v);
    if (y0.is_zero())
        throw PreconditionError("y0 = 0: the two-term point -e123 - y0*e456 is "
                                "degenerate");
    Scalar probe = y0;
    for (const Scalar& e : v) probe += e;
    const FieldCtx ctx = probe.ctx();
    const Scalar y0l = lift(ctx, y0);
    const Vec w = lift_vec(ctx, v);

    const Scalar q = pairing_q(w);
    if (q.is_zero())
        throw PreconditionError("q(v) = 0: not semistable over this split form");

    // Rotate the smallest coordinate pair with wm * w_{m+3} != 0 into (1,4).
    int m = 0;
    for (int k = 1; k <= 3; ++k)
        if (!(w[k - 1] * w[k + 2]).is_zero()) {
            m = k;
            break;
        }
    if (m == 0) throw InternalError("no active coordinate pair despite q != 0");
    Mat gswap = Mat::identity(ctx, 6);
    if (m == 2) {
        const long a1[3][3] = {{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
        gswap = embed_gl3_pair(mat3_from_ints(ctx, a1));
    } else if (m == 3) {
        const long a1[3][3] = {{0, 0, -1}, {0, 1, 0}, {1, 0, 0}};
        gswap = embed_gl3_pair(mat3_from_ints(ctx, a1));
    }
    const Vec w1 = gswap.apply(w);

    // Clear slots 2, 3 above and collect q into slot 4 below.
    const Mat g1 = embed_gl3_pair(clearing_block(ctx, w1[0], w1[1], w1[2]));
    const Vec w2 = g1.apply(w1); // (1, 0, 0, q, *, *)

    // Clear slots 5, 6 below; slot 1 becomes q.
    const Mat g2 = embed_pair_gl3(clearing_block(ctx, w2[3], w2[4], w2[5]));

    const SympElement ge = check_symplectic(g2 * g1 * gswap);
    if (!ge.is_symplectic())
        throw InternalError("canonicalization produced a proper similitude");

    Vec vtarget(6, ctx.zero());
    vtarget[0] = q;
    vtarget[3] = ctx.one();
    const TriVector xsplit = split_x_part(y0l);
    const TriVector canonical = act_wedge3(ge, tv_add(xsplit, iota(w)));
    if (canonical != tv_add(xsplit, iota(vtarget)))
        throw InternalError("canonicalization postcondition failed under the "
                            "action");
    return {ge, canonical, q};
}

std::vector<Mat> sp6_lie_basis(const FieldCtx& ctx) {
    std::vector<Mat> out;
    out.reserve(21);
    const Scalar one = ctx.one();
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) {
            Mat xi(ctx, 6, 6); // [[E_rs, 0], [0, -E_sr]]
            xi.at(r, s) = one;
            xi.at(3 + s, 3 + r) = -one;
            out.push_back(xi);
        }
    for (int r = 0; r < 3; ++r)
        for (int s = r; s < 3; ++s) {
            Mat xi(ctx, 6, 6); // symmetric unit in the upper-right block
            xi.at(r, 3 + s) = one;
            xi.at(s, 3 + r) = one;
            out.push_back(xi);
        }
    for (int r = 0; r < 3; ++r)
        for (int s = r; s < 3; ++s) {
            Mat xi(ctx, 6, 6); // symmetric unit in the lower-left block
            xi.at(3 + r, s) = one;
            xi.at(3 + s, r) = one;
            out.push_back(xi);
        }
    return out;
}

LieStabilizer lie_stabilizer(const TriVector& T) {
    const FieldCtx& ctx = T.ctx;
    const std::vector<Mat> gens = sp6_lie_basis(ctx);
    Mat sys(ctx, kTriCount, gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const TriVector img = act_derivation(gens[k], T);
        for (std::size_t c = 0; c < kTriCount; ++c) sys.at(c, k) = img.coords[c];
    }
    const Mat MJ = symplectic_form_matrix(ctx);
    std::vector<Mat> basis;
    for (const Vec& t : sys.nullspace()) {
        Mat xi(ctx, 6, 6);
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (!t[k].is_zero()) xi = xi + gens[k] * t[k];
        if (!tv_is_zero(act_derivation(xi, T)))
            throw InternalError("stabilizer element fails to annihilate its point");
        if (!(xi.transpose() * MJ + MJ * xi).is_zero())
            throw InternalError("stabilizer element leaves the symplectic algebra");
        basis.push_back(std::move(xi));
    }
    return lie_structure_from_basis(ctx, std::move(basis));
}

LieStabilizer lie_structure_from_basis(const FieldCtx& ctx,
                                       std::vector<Mat> basis) {
    LieStabilizer L;
    L.ctx = ctx;
    L.basis = std::move(basis);
    const std::size_t d = L.basis.size();
    const std::size_t n = d ? L.basis[0].rows() : 0;

    Mat span(ctx, n * n, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                span.at(n * r + c, j) = L.basis[j].at(r, c);

    L.structure.assign(d, std::vector<Vec>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Mat br = L.basis[i] * L.basis[j] - L.basis[j] * L.basis[i];
            Vec rhs;
            rhs.reserve(n * n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) rhs.push_back(br.at(r, c));
            std::optional<Vec> sol = span.solve(rhs);
            if (!sol)
                throw InternalError("bracket leaves the span of the basis");
            L.structure[i][j] = std::move(*sol);
        }

    std::vector<Mat> ad(d, Mat(ctx, d, d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t k = 0; k < d; ++k)
                ad[i].at(k, a) = L.structure[i][a][k];
    L.killing = Mat(ctx, d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            const Mat prod = ad[i] * ad[j];
            Scalar tr = ctx.zero();
            for (std::size_t k = 0; k < d; ++k) tr += prod.at(k, k);
            L.killing.at(i, j) = tr;
            L.killing.at(j, i) = tr;
        }
    return L;
}

QForm quaternion_norm_from_stabilizer(const LieStabilizer& L) {
    if (L.dim() != 3)
        throw PreconditionError("stabilizer dimension is " +
                                std::to_string(L.dim()) + ", expected 3");
    if (L.killing.det().is_zero())
        throw PreconditionError("degenerate Killing form");
    const Mat G = L.killing * L.ctx.from_rational(mpq_class(-1, 8));
    const Diagonalization dg = diagonalize_gram(G);
    Vec diag;
    diag.reserve(4);
    diag.push_back(L.ctx.one());
    for (const Scalar& s : dg.diag) diag.push_back(s);
    return qform(L.ctx, diag);
}

// ---------------------------------------------------------------------------
// witnesses

WitnessCase witness_case_from_string(const std::string& name) {
    if (name == "normal_form_transport") return WitnessCase::normal_form_transport;
    if (name == "orbit_chain") return WitnessCase::orbit_chain;
    if (name == "sl2_embed") return WitnessCase::sl2_embed;
    if (name == "sl3_embed") return WitnessCase::sl3_embed;
    throw ParseError("unknown witness case: " + name);
}

std::string witness_case_name(WitnessCase c) {
    switch (c) {
    case WitnessCase::normal_form_transport: return "normal_form_transport";
    case WitnessCase::orbit_chain: return "orbit_chain";
    case WitnessCase::sl2_embed: return "sl2_embed";
    case WitnessCase::sl3_embed: return "sl3_embed";
    }
    throw InternalError("unreachable witness case");
}

SplitParts act_scaled_pair(const SympElement& g, const Scalar& cx,
                           const Scalar& cv, const SplitParts& P) {
    if (!g.is_symplectic())
        throw PreconditionError("scaled pair action requires a symplectic element");
    return {tv_scale(cx, act_wedge3(g, P.x_part)),
            vec_scale(cv, g.g.apply(P.v_part))};
}

namespace {

/// Run the element list over the source pair and compare with the target;
/// membership failures surface as verified = false, never as exceptions.
void verify_mapping(WitnessReport& rep, const SplitParts& source,
                    const SplitParts& target) {
    try {
        SplitParts cur = source;
        for (const WitnessElement& e : rep.elements) {
            const SympElement ge = check_symplectic(e.g);
            if (!ge.is_symplectic()) {
                rep.verified = false;
                rep.detail += "; element is a proper similitude";
                return;
            }
            cur = act_scaled_pair(ge, e.cx, e.cv, cur);
        }
        rep.verified = pair_equal(cur, target);
        if (!rep.verified) rep.detail += "; mapping equation failed";
    } catch (const PreconditionError& e) {
        rep.verified = false;
        rep.detail += std::string("; membership check failed: ") + e.what();
    }
}

WitnessReport witness_transport(const FieldCtx& ctx, const WitnessParams& p) {
    const NormalFormX nf = normal_form_x(
        lift(ctx, need(p.y0, "y0")), lift(ctx, need(p.y1, "y1")),
        lift(ctx, need(p.y2, "y2")), lift(ctx, need(p.y3, "y3")));
    if (!nf.x_semistable)
        throw PreconditionError("transport undefined: the family point has "
                                "vanishing first invariant");
    const Scalar i = nf.f1;
    const Scalar s = sqrt_or_throw(ctx, -i, "-f1");
    const Scalar den = nf.y0 + 2 * s;
    // den = 0 would force y1*y2*y3 = 0, which normal_form_x already excludes.
    if (den.is_zero())
        throw InternalError("transport denominator vanished on admissible data");
    const Scalar one = ctx.one();
    const Scalar diag_main = den / (4 * s);

    Mat g(ctx, 6, 6);
    g.at(0, 0) = diag_main;
    g.at(1, 1) = one;
    g.at(2, 2) = one;
    g.at(0, 3) = -((2 * nf.y1) / den);
    g.at(1, 4) = -(nf.y2 / (2 * s));
    g.at(2, 5) = -(nf.y3 / (2 * s));
    g.at(3, 0) = -((nf.y0 * nf.y0 + 4 * i) / (8 * (s * nf.y1)));
    g.at(4, 1) = -((nf.y0 - 2 * s) / (2 * nf.y2));
    g.at(5, 2) = -((nf.y0 - 2 * s) / (2 * nf.y3));
    g.at(3, 3) = one;
    g.at(4, 4) = diag_main;
    g.at(5, 5) = diag_main;

    WitnessReport rep;
    rep.elements.push_back({g, one, one});
    rep.detail = "conjugates the doubled-root split pair to the family point "
                 "with its pattern-1 component";

    Vec vsrc(6, ctx.zero());
    vsrc[0] = (4 * s) / den;
    vsrc[3] = -(den / (2 * nf.y1));
    const SplitParts source{split_x_part(2 * s), vsrc};
    const SplitParts target{normal_form_x_part(nf), canonical_pattern_v(nf, 1)};
    verify_mapping(rep, source, target);
    return rep;
}

WitnessReport witness_chain(const FieldCtx& ctx, const WitnessParams& p) {
    const Scalar a = lift(ctx, need(p.a, "a"));
    const Scalar i = lift(ctx, need(p.i, "i"));
    if (a.is_zero()) throw PreconditionError("a must be nonzero");
    if (i.is_zero()) throw PreconditionError("i must be nonzero");
    const Scalar s = sqrt_or_throw(ctx, -i, "-i");
    const Scalar r = sqrt_or_throw(ctx, a, "a");
    const Scalar t = sqrt_or_throw(ctx, s, "sqrt(-i)"); // fourth root of -i
    const Scalar one = ctx.one();

    WitnessReport rep;
    rep.detail = "rescales (split pair with v = (a,0,0,1,0,0)) to the "
                 "reference pair over the closure";

    Mat g1 = Mat::diag(ctx, {r.inverse(), r, one, r, r.inverse(), one});
    rep.elements.push_back({std::move(g1), one, one});
    rep.elements.push_back({Mat::identity(ctx, 6), one, r.inverse()});
    Mat g3 = Mat::diag(ctx, {one, one, t, one, one, t.inverse()});
    rep.elements.push_back({std::move(g3), t.inverse(), one});

    Vec vsrc(6, ctx.zero());
    vsrc[0] = a;
    vsrc[3] = one;
    Vec vtgt(6, ctx.zero());
    vtgt[0] = one;
    vtgt[3] = one;
    const SplitParts source{split_x_part(2 * s), vsrc};
    const SplitParts target{split_x_part(ctx.from_int(2)), vtgt};
    verify_mapping(rep, source, target);
    return rep;
}

WitnessReport witness_sl2(const FieldCtx& ctx, const WitnessParams& p) {
    if (!p.block || p.block->rows() != 2 || p.block->cols() != 2)
        throw PreconditionError("sl2_embed needs a 2x2 block");
    Mat C = Mat::identity(ctx, 3);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            C.at(r + 1, c + 1) = lift(ctx, p.block->at(r, c));

    WitnessReport rep;
    rep.elements.push_back({embed_gl3_pair(C), ctx.one(), ctx.one()});
    rep.detail = "embeds a 2x2 block as a stabilizer element of the canonical "
                 "pair (fixes it exactly when the block has determinant 1)";

    Vec vfix(6, ctx.zero());
    vfix[0] = ctx.one();
    vfix[3] = ctx.one();
    const SplitParts fixed{split_x_part(ctx.from_int(2)), vfix};
    verify_mapping(rep, fixed, fixed);
    return rep;
}

WitnessReport witness_sl3(const FieldCtx& ctx, const WitnessParams& p) {
    if (!p.block || p.block->rows() != 3 || p.block->cols() != 3)
        throw PreconditionError("sl3_embed needs a 3x3 block");
    Mat A(ctx, 3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) A.at(r, c) = lift(ctx, p.block->at(r, c));
    const Scalar dt = A.det();
    if (dt.is_zero()) throw PreconditionError("sl3_embed block must be invertible");

    WitnessReport rep;
    rep.elements.push_back({embed_gl3_pair(A), ctx.one(), ctx.one()});
    rep.detail = "embeds a 3x3 block; scales the two split monomials by "
                 "det and 1/det";

    const SplitParts source{split_x_part(ctx.from_int(2)), Vec(6, ctx.zero())};
    TriVector xtgt = trivector_zero(ctx);
    tv_add_term(xtgt, 1, 2, 3, -dt);
    tv_add_term(xtgt, 4, 5, 6, -(ctx.from_int(2) / dt));
    const SplitParts target{xtgt, Vec(6, ctx.zero())};
    verify_mapping(rep, source, target);
    return rep;
}

} // namespace

WitnessReport witness(const FieldCtx& ctx, WitnessCase c,
                      const WitnessParams& p) {
    switch (c) {
    case WitnessCase::normal_form_transport: return witness_transport(ctx, p);
    case WitnessCase::orbit_chain: return witness_chain(ctx, p);
    case WitnessCase::sl2_embed: return witness_sl2(ctx, p);
    case WitnessCase::sl3_embed: return witness_sl3(ctx, p);
    }
    throw InternalError("unreachable witness case");
}

} // namespace sp6flags
