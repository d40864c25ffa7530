#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sp6flags/orbits.hpp"

using namespace sp6flags;

namespace {

Vec vec6(const FieldCtx& ctx, const long (&e)[6]) {
    Vec v;
    for (long x : e) v.push_back(ctx.from_int(x));
    return v;
}

Vec rand_vec6(Rng& g, const FieldCtx& ctx, long lo = -4, long hi = 4) {
    Vec v;
    for (int k = 0; k < 6; ++k) v.push_back(rand_scalar(g, ctx, lo, hi));
    return v;
}

NormalFormX rand_normal_form(Rng& g, const FieldCtx& ctx) {
    return normal_form_x(rand_scalar(g, ctx, -5, 5), rand_nonzero(g, ctx, -5, 5),
                         rand_nonzero(g, ctx, -5, 5), rand_nonzero(g, ctx, -5, 5));
}

Mat rand_invertible3(Rng& g, const FieldCtx& ctx) {
    for (;;) {
        Mat m(ctx, 3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) m.at(r, c) = rand_scalar(g, ctx, -3, 3);
        if (!m.det().is_zero()) return m;
    }
}

// diag(A, -A^t) for trace-zero A: the expected stabilizer algebra of the
// two-term point.
std::vector<Mat> gl3_pair_traceless_basis(const FieldCtx& ctx) {
    std::vector<Mat> out;
    auto push = [&](const Mat& A) {
        Mat xi(ctx, 6, 6);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                xi.at(r, c) = A.at(r, c);
                xi.at(3 + r, 3 + c) = -A.at(c, r);
            }
        out.push_back(xi);
    };
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (r != c) {
                Mat A(ctx, 3, 3);
                A.at(r, c) = ctx.one();
                push(A);
            }
    for (int r = 0; r < 2; ++r) {
        Mat A(ctx, 3, 3);
        A.at(r, r) = ctx.one();
        A.at(r + 1, r + 1) = -ctx.one();
        push(A);
    }
    return out;
}

std::size_t stacked_rank(const FieldCtx& ctx, const std::vector<Mat>& ms) {
    Mat stack(ctx, ms.size(), 36);
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 6; ++c)
                stack.at(i, 6 * r + c) = ms[i].at(r, c);
    return stack.rank();
}

} // namespace

TEST_CASE("normal form family: construction, invariant, guards") {
    FieldCtx Q = FieldCtx::rationals();

    NormalFormX nf = normal_form_x_ints(Q, 0, 1, 1, 1);
    CHECK(nf.f1 == Q.one());
    CHECK(nf.x_semistable);
    CHECK(f1_f2_semistable(normal_form_x_part(nf)).f1 == Q.one());

    NormalFormX flat = normal_form_x_ints(Q, 2, 1, 1, 1);
    CHECK(flat.f1.is_zero());
    CHECK_FALSE(flat.x_semistable);

    CHECK(normal_form_x_ints(Q, 2, 1, 2, 1).f1 == Q.one());
    CHECK_THROWS_AS(normal_form_x_ints(Q, 1, 0, 1, 1), PreconditionError);

    FieldCtx F5 = FieldCtx::prime_field(5);
    // y1*y2*y3 = 8 = 3 and (1/4)*9 = 9*4^{-1} = 36 = 1, so f1 = 2 mod 5
    CHECK(normal_form_x_ints(F5, 3, 1, 2, 4).f1 == F5.from_int(2));

    CHECK_THROWS_AS(normal_form_x(F5.one(), Q.one(), Q.one(), Q.one()),
                    FieldMismatchError);
}

TEST_CASE("canonical patterns and their second invariant") {
    FieldCtx Q = FieldCtx::rationals();

    NormalFormX nf = normal_form_x_ints(Q, 0, 1, 1, 1);
    CHECK(canonical_pattern_v(nf, 1) == vec6(Q, {2, 0, 0, 0, 0, 0}));
    CHECK(f1_f2_semistable(normal_form_point(nf, canonical_pattern_v(nf, 1))).f2 ==
          Q.from_int(-4));

    NormalFormX nf2 = normal_form_x_ints(Q, 2, 1, 2, 1);
    CHECK(f1_f2_semistable(normal_form_point(nf2, canonical_pattern_v(nf2, 1))).f2 ==
          Q.from_int(-4));
    CHECK(f1_f2_semistable(normal_form_point(nf2, canonical_pattern_v(nf2, 2))).f2 ==
          Q.from_int(-2));
    CHECK(f1_f2_semistable(normal_form_point(nf2, canonical_pattern_v(nf2, 3))).f2 ==
          Q.from_int(-4));

    CHECK_THROWS_AS(canonical_pattern_v(nf, 0), PreconditionError);
    CHECK_THROWS_AS(canonical_pattern_v(nf, 4), PreconditionError);

    // f2(pattern m) = -(4 yj yl - y0^2/ym) across random family members
    for (const FieldCtx& ctx : {Q, FieldCtx::prime_field(7)}) {
        Rng rng(4101);
        for (int trial = 0; trial < 30; ++trial) {
            NormalFormX r = rand_normal_form(rng, ctx);
            const Scalar ys[3] = {r.y1, r.y2, r.y3};
            for (int m = 1; m <= 3; ++m) {
                Scalar yj = ys[m % 3], yl = ys[(m + 1) % 3], ym = ys[m - 1];
                Scalar want = -(4 * (yj * yl) - (r.y0 * r.y0) / ym);
                CHECK(f1_f2_semistable(normal_form_point(r, canonical_pattern_v(r, m)))
                          .f2 == want);
            }
        }
    }
}

TEST_CASE("two-term point: invariants degenerate to the pairing") {
    FieldCtx Q = FieldCtx::rationals();
    for (const FieldCtx& ctx : {Q, FieldCtx::prime_field(5)}) {
        Rng rng(777);
        Scalar y0 = ctx.from_int(3);
        TriVector xs = split_x_part(y0);
        CHECK(f1_f2_semistable(xs).f1 == -(y0 * y0) / 4);
        for (int trial = 0; trial < 30; ++trial) {
            Vec v = rand_vec6(rng, ctx);
            InvariantReport rep = f1_f2_semistable(tv_add(xs, iota(v)));
            CHECK(rep.f2 == -(y0 * pairing_q(v)));
        }
    }
}

TEST_CASE("canonicalization: pinned examples") {
    FieldCtx Q = FieldCtx::rationals();
    Scalar two = Q.from_int(2);

    CanonicalizeResult already = canonicalize_v(two, vec6(Q, {1, 0, 0, 1, 0, 0}));
    CHECK(already.q == Q.one());
    CHECK(already.g.g == Mat::identity(Q, 6));
    CHECK(already.canonical ==
          tv_add(split_x_part(two), iota(vec6(Q, {1, 0, 0, 1, 0, 0}))));

    CanonicalizeResult swapped = canonicalize_v(two, vec6(Q, {0, 1, 0, 0, 1, 0}));
    CHECK(swapped.q == Q.one());
    CHECK(split_components(swapped.canonical).v_part == vec6(Q, {1, 0, 0, 1, 0, 0}));
    CHECK(act_wedge3(swapped.g, split_x_part(two)) == split_x_part(two));

    CanonicalizeResult full = canonicalize_v(two, vec6(Q, {1, 2, 0, 1, 1, 0}));
    CHECK(full.q == Q.from_int(3));
    CHECK(split_components(full.canonical).v_part == vec6(Q, {3, 0, 0, 1, 0, 0}));

    CHECK_THROWS_AS(canonicalize_v(Q.zero(), vec6(Q, {1, 0, 0, 1, 0, 0})),
                    PreconditionError);
    CHECK_THROWS_AS(canonicalize_v(two, vec6(Q, {1, 0, 0, 0, 1, 0})),
                    PreconditionError);
    CHECK_THROWS_AS(canonicalize_v(two, vec6(Q, {1, -1, 0, 1, 1, 0})),
                    PreconditionError);
    CHECK_THROWS_AS(canonicalize_v(two, Vec(4, Q.one())), PreconditionError);
}

TEST_CASE("canonicalization: random admissible inputs over Q and F5") {
    for (const FieldCtx& ctx : {FieldCtx::rationals(), FieldCtx::prime_field(5)}) {
        Rng rng(90210);
        Scalar y0 = ctx.from_int(2);
        TriVector xs = split_x_part(y0);
        int done = 0;
        while (done < 500) {
            Vec v = rand_vec6(rng, ctx);
            if (pairing_q(v).is_zero()) continue;
            ++done;
            CanonicalizeResult res = canonicalize_v(y0, v);
            CHECK(res.g.is_symplectic());
            CHECK(act_wedge3(res.g, xs) == xs);
            SplitParts parts = split_components(res.canonical);
            CHECK(parts.x_part == xs);
            Vec want(6, ctx.zero());
            want[0] = res.q;
            want[3] = ctx.one();
            CHECK(parts.v_part == want);
            CHECK(res.q == pairing_q(v));
        }
    }
}

TEST_CASE("symplectic Lie algebra basis") {
    for (const FieldCtx& ctx : {FieldCtx::rationals(), FieldCtx::prime_field(5)}) {
        std::vector<Mat> basis = sp6_lie_basis(ctx);
        CHECK(basis.size() == 21);
        Mat MJ = symplectic_form_matrix(ctx);
        for (const Mat& xi : basis)
            CHECK((xi.transpose() * MJ + MJ * xi).is_zero());
        CHECK(stacked_rank(ctx, basis) == 21);
    }
}

TEST_CASE("stabilizer dimensions on reference points") {
    FieldCtx Q = FieldCtx::rationals();

    NormalFormX nf = normal_form_x_ints(Q, 0, 1, 1, 1);
    TriVector point = normal_form_point(nf, vec6(Q, {2, 0, 0, 0, 0, 0}));
    LieStabilizer L3 = lie_stabilizer(point);
    CHECK(L3.dim() == 3);
    CHECK(L3.killing.is_symmetric());
    CHECK_FALSE(L3.killing.det().is_zero());

    LieStabilizer L8 = lie_stabilizer(normal_form_x_part(nf));
    CHECK(L8.dim() == 8);

    // two-term point: solution space is exactly diag(A, -A^t), trace A = 0
    TriVector xs = split_x_part(Q.from_int(2));
    LieStabilizer Lsplit = lie_stabilizer(xs);
    CHECK(Lsplit.dim() == 8);
    std::vector<Mat> expected = gl3_pair_traceless_basis(Q);
    for (const Mat& xi : expected)
        CHECK(tv_is_zero(act_derivation(xi, xs)));
    std::vector<Mat> joint = Lsplit.basis;
    joint.insert(joint.end(), expected.begin(), expected.end());
    CHECK(stacked_rank(Q, expected) == 8);
    CHECK(stacked_rank(Q, joint) == 8);
}

TEST_CASE("stabilizer dimensions on random semistable points") {
    for (const FieldCtx& ctx : {FieldCtx::rationals(), FieldCtx::prime_field(7)}) {
        Rng rng(5150);
        int trials = ctx.kind() == FieldKind::rationals ? 12 : 8;
        int done = 0;
        while (done < trials) {
            NormalFormX nf = rand_normal_form(rng, ctx);
            if (!nf.x_semistable) continue;
            Vec v = rand_vec6(rng, ctx, -3, 3);
            TriVector T = normal_form_point(nf, v);
            if (!f1_f2_semistable(T).semistable) continue;
            ++done;
            CHECK(lie_stabilizer(T).dim() == 3);
            CHECK(lie_stabilizer(normal_form_x_part(nf)).dim() == 8);
        }
    }
}

TEST_CASE("structure constants: antisymmetry, Jacobi, sl2 pinning") {
    FieldCtx Q = FieldCtx::rationals();

    // abstract sl2 in 2x2 matrices pins the Killing values and the -kappa/8
    // normalization of the norm extraction
    Mat h(Q, 2, 2), e(Q, 2, 2), f(Q, 2, 2);
    h.at(0, 0) = Q.one();
    h.at(1, 1) = -Q.one();
    e.at(0, 1) = Q.one();
    f.at(1, 0) = Q.one();
    LieStabilizer sl2 = lie_structure_from_basis(Q, {h, e, f});
    CHECK(sl2.killing.at(0, 0) == Q.from_int(8));
    CHECK(sl2.killing.at(1, 2) == Q.from_int(4));
    CHECK(sl2.killing.at(1, 1).is_zero());
    CHECK((sl2.structure[0][1] == Vec{Q.zero(), Q.from_int(2), Q.zero()}));
    QForm split_norm = quaternion_norm_from_stabilizer(sl2);
    CHECK(qform_equivalent(split_norm, qform_from_ints(Q, {1, -1, -1, 1})));

    // bracket closure failure is detected
    CHECK_THROWS_AS(lie_structure_from_basis(Q, {e, f}), InternalError);

    // antisymmetry and Jacobi on a computed stabilizer
    NormalFormX nf = normal_form_x_ints(Q, 2, 1, 2, 1);
    LieStabilizer L = lie_stabilizer(normal_form_point(nf, canonical_pattern_v(nf, 1)));
    REQUIRE(L.dim() == 3);
    auto bracket = [](const Mat& a, const Mat& b) { return a * b - b * a; };
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t k = 0; k < 3; ++k)
                CHECK(L.structure[i][j][k] == -L.structure[j][i][k]);
            for (std::size_t k = 0; k < 3; ++k) {
                Mat jac = bracket(L.basis[i], bracket(L.basis[j], L.basis[k])) +
                          bracket(L.basis[j], bracket(L.basis[k], L.basis[i])) +
                          bracket(L.basis[k], bracket(L.basis[i], L.basis[j]));
                CHECK(jac.is_zero());
            }
        }
}

TEST_CASE("quaternion extraction: split, definite, pattern cross-checks") {
    FieldCtx Q = FieldCtx::rationals();

    // canonical split pair -> matrix-algebra norm
    TriVector split_pair =
        tv_add(split_x_part(Q.from_int(2)), iota(vec6(Q, {1, 0, 0, 1, 0, 0})));
    QForm qsplit = quaternion_norm_from_stabilizer(lie_stabilizer(split_pair));
    CHECK(qform_equivalent(qsplit, qform_from_ints(Q, {1, -1, -1, 1})));

    // definite case and its hermitian trace-form oracle
    NormalFormX nf = normal_form_x_ints(Q, 0, 1, 1, 1);
    QForm qdef = quaternion_norm_from_stabilizer(
        lie_stabilizer(normal_form_point(nf, canonical_pattern_v(nf, 1))));
    CHECK(qform_equivalent(qdef, qform_from_ints(Q, {1, 1, 1, 1})));
    CHECK(qform_equivalent(
        qdef, hermitian_trace_form(hermitian_form(mpq_class(1), {1, 1}))));

    // the three patterns match the trace forms of diag(1, ym)
    const long data[4][4] = {{2, 1, 2, 1}, {2, 3, 1, 5}, {4, 1, 1, 2}, {0, 2, 3, 6}};
    for (const auto& row : data) {
        NormalFormX r = normal_form_x_ints(Q, row[0], row[1], row[2], row[3]);
        REQUIRE(r.x_semistable);
        for (int m = 1; m <= 3; ++m) {
            TriVector T = normal_form_point(r, canonical_pattern_v(r, m));
            REQUIRE(f1_f2_semistable(T).semistable);
            QForm got = quaternion_norm_from_stabilizer(lie_stabilizer(T));
            const Scalar ym = m == 1 ? r.y1 : m == 2 ? r.y2 : r.y3;
            HermitianForm herm = hermitian_form(r.f1.rat(), {1, ym.rat()});
            CHECK(qform_equivalent(got, hermitian_trace_form(herm)));
        }
    }

    // dimension guard
    CHECK_THROWS_AS(
        quaternion_norm_from_stabilizer(lie_stabilizer(normal_form_x_part(nf))),
        PreconditionError);
}

TEST_CASE("quaternion extraction is basis-independent") {
    FieldCtx Q = FieldCtx::rationals();
    NormalFormX nf = normal_form_x_ints(Q, 2, 1, 2, 1);
    LieStabilizer L =
        lie_stabilizer(normal_form_point(nf, canonical_pattern_v(nf, 1)));
    REQUIRE(L.dim() == 3);
    QForm reference = quaternion_norm_from_stabilizer(L);
    Rng rng(31337);
    for (int trial = 0; trial < 5; ++trial) {
        Mat P = rand_invertible3(rng, Q);
        std::vector<Mat> changed;
        for (int j = 0; j < 3; ++j) {
            Mat nj(Q, 6, 6);
            for (int i = 0; i < 3; ++i) nj = nj + L.basis[i] * P.at(i, j);
            changed.push_back(nj);
        }
        QForm other =
            quaternion_norm_from_stabilizer(lie_structure_from_basis(Q, changed));
        CHECK(qform_equivalent(reference, other));
    }
}

TEST_CASE("witness: family transport over Q(sqrt(-1))") {
    FieldCtx QI = FieldCtx::quad_ext(mpq_class(-1));

    WitnessParams base;
    base.y0 = QI.from_int(0);
    base.y1 = QI.from_int(1);
    base.y2 = QI.from_int(1);
    base.y3 = QI.from_int(1);
    WitnessReport rep = witness(QI, WitnessCase::normal_form_transport, base);
    CHECK(rep.elements.size() == 1);
    CHECK(rep.verified);

    // grid with first invariant 1: y3 = (y0^2/4 + 1)/(y1 y2)
    for (long y0 : {0L, 2L, 4L}) {
        for (long y1 : {1L, 2L, 5L}) {
            WitnessParams p;
            p.y0 = QI.from_int(y0);
            p.y1 = QI.from_int(y1);
            p.y2 = QI.from_int(1);
            p.y3 = QI.from_rational(mpq_class(y0 * y0 + 4, 4 * y1));
            WitnessReport r = witness(QI, WitnessCase::normal_form_transport, p);
            CHECK(r.verified);
        }
    }

    // non-square first invariant still works when sqrt(-f1) exists: f1 = 4
    WitnessParams p4;
    p4.y0 = QI.from_int(0);
    p4.y1 = QI.from_int(1);
    p4.y2 = QI.from_int(2);
    p4.y3 = QI.from_int(2);
    CHECK(witness(QI, WitnessCase::normal_form_transport, p4).verified);

    // missing roots and degenerate data are refused
    FieldCtx Q = FieldCtx::rationals();
    WitnessParams over_q;
    over_q.y0 = Q.from_int(0);
    over_q.y1 = Q.from_int(1);
    over_q.y2 = Q.from_int(1);
    over_q.y3 = Q.from_int(1);
    CHECK_THROWS_AS(witness(Q, WitnessCase::normal_form_transport, over_q),
                    PreconditionError);
    WitnessParams flat;
    flat.y0 = QI.from_int(2);
    flat.y1 = QI.from_int(1);
    flat.y2 = QI.from_int(1);
    flat.y3 = QI.from_int(1);
    CHECK_THROWS_AS(witness(QI, WitnessCase::normal_form_transport, flat),
                    PreconditionError);
    CHECK_THROWS_AS(witness(QI, WitnessCase::normal_form_transport, WitnessParams{}),
                    PreconditionError);
}

TEST_CASE("witness: rescaling chain") {
    FieldCtx Q = FieldCtx::rationals();
    for (long a : {4L, 9L}) {
        WitnessParams p;
        p.a = Q.from_int(a);
        p.i = Q.from_int(-1);
        WitnessReport rep = witness(Q, WitnessCase::orbit_chain, p);
        CHECK(rep.elements.size() == 3);
        CHECK(rep.verified);
    }

    WitnessParams bad;
    bad.a = Q.from_int(2); // sqrt(2) not rational
    bad.i = Q.from_int(-1);
    CHECK_THROWS_AS(witness(Q, WitnessCase::orbit_chain, bad), PreconditionError);

    FieldCtx QI = FieldCtx::quad_ext(mpq_class(-1));
    WitnessParams no4th;
    no4th.a = QI.from_int(4);
    no4th.i = QI.from_int(1); // fourth root of -1 missing
    CHECK_THROWS_AS(witness(QI, WitnessCase::orbit_chain, no4th), PreconditionError);

    WitnessParams zero;
    zero.a = Q.from_int(0);
    zero.i = Q.from_int(-1);
    CHECK_THROWS_AS(witness(Q, WitnessCase::orbit_chain, zero), PreconditionError);

    // over F7: sqrt(2) = 3 or 4 exists, so a = 2 becomes admissible
    FieldCtx F7 = FieldCtx::prime_field(7);
    WitnessParams fp;
    fp.a = F7.from_int(2);
    fp.i = F7.from_int(-1);
    CHECK(witness(F7, WitnessCase::orbit_chain, fp).verified);
}

TEST_CASE("witness: block embeddings") {
    FieldCtx Q = FieldCtx::rationals();

    WitnessParams id3;
    id3.block = Mat::identity(Q, 3);
    WitnessReport r3 = witness(Q, WitnessCase::sl3_embed, id3);
    CHECK(r3.verified);
    CHECK(r3.elements[0].g == Mat::identity(Q, 6));

    WitnessParams gen3;
    Mat A(Q, 3, 3);
    A.at(0, 0) = Q.from_int(1);
    A.at(0, 1) = Q.from_int(2);
    A.at(1, 1) = Q.from_int(1);
    A.at(1, 2) = Q.from_int(3);
    A.at(2, 0) = Q.from_int(1);
    A.at(2, 2) = Q.from_int(1);
    gen3.block = A;
    CHECK(witness(Q, WitnessCase::sl3_embed, gen3).verified);

    WitnessParams uni;
    Mat C1(Q, 2, 2);
    C1.at(0, 0) = Q.one();
    C1.at(0, 1) = Q.one();
    C1.at(1, 1) = Q.one();
    uni.block = C1;
    CHECK(witness(Q, WitnessCase::sl2_embed, uni).verified);

    WitnessParams det2;
    Mat D(Q, 2, 2);
    D.at(0, 0) = Q.from_int(2);
    D.at(1, 1) = Q.one();
    det2.block = D;
    WitnessReport bad = witness(Q, WitnessCase::sl2_embed, det2);
    CHECK_FALSE(bad.verified); // determinant 2 moves the fixed pair

    WitnessParams wrong;
    wrong.block = Mat::identity(Q, 3);
    CHECK_THROWS_AS(witness(Q, WitnessCase::sl2_embed, wrong), PreconditionError);

    CHECK(witness_case_from_string("orbit_chain") == WitnessCase::orbit_chain);
    CHECK(witness_case_name(WitnessCase::sl3_embed) == "sl3_embed");
    CHECK_THROWS_AS(witness_case_from_string("nonsense"), ParseError);
}

TEST_CASE("scaled componentwise pair action") {
    FieldCtx Q = FieldCtx::rationals();
    TriVector T = normal_form_point(normal_form_x_ints(Q, 2, 1, 2, 1),
                                    vec6(Q, {1, 2, 0, 1, 1, 0}));
    SplitParts P = split_components(T);
    SympElement id = check_symplectic(Mat::identity(Q, 6));
    SplitParts scaled = act_scaled_pair(id, Q.from_int(2), Q.from_int(3), P);
    CHECK(scaled.x_part == tv_scale(Q.from_int(2), P.x_part));
    CHECK(scaled.v_part == vec_scale(Q.from_int(3), P.v_part));

    SympElement sim = check_symplectic(similitude_h(Q.from_int(2)));
    CHECK_THROWS_AS(act_scaled_pair(sim, Q.one(), Q.one(), P), PreconditionError);
}
