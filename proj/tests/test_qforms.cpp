#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "sp6flags/qforms.hpp"
#include "sp6flags/rng.hpp"

using namespace sp6flags;

namespace {

// Independent oracle for the Hilbert symbol at a finite prime: (a,b)_p = 1
// iff a x^2 + b y^2 = z^2 has a primitive p-adic zero, decided by searching
// solutions mod p^K.  For |coefficient| valuations <= 1 a primitive zero mod
// p^K lifts by Hensel's lemma once K >= 5 (p = 2) resp. K >= 3 (p odd); we
// take margins above that.
bool local_solvable(long a, long b, std::uint64_t p) {
    unsigned K = (p == 2) ? 7 : 3;
    std::uint64_t M = 1;
    for (unsigned i = 0; i < K; ++i) M *= p;
    std::vector<char> any(M, 0), unit(M, 0);
    for (std::uint64_t z = 0; z < M; ++z) {
        std::uint64_t c = z * z % M;
        any[c] = 1;
        if (z % p) unit[c] = 1;
    }
    auto modM = [&](long v) {
        long r = v % static_cast<long>(M);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(M) : r);
    };
    std::uint64_t am = modM(a), bm = modM(b);
    for (std::uint64_t x = 0; x < M; ++x)
        for (std::uint64_t y = 0; y < M; ++y) {
            std::uint64_t c = (am * x % M * x + bm * y % M * y) % M;
            bool xy_primitive = (x % p) || (y % p);
            if (xy_primitive ? any[c] : unit[c]) return true;
        }
    return false;
}

QForm qf(std::initializer_list<long> entries) {
    return qform_from_ints(FieldCtx::rationals(), std::vector<long>(entries));
}

} // namespace

TEST_CASE("hilbert symbol matches the local solvability oracle") {
    struct Case { std::uint64_t p; std::vector<long> coeffs; };
    std::vector<Case> cases = {
        {2, {1, -1, 2, -2, 3, -3, 5, -5}},
        {3, {1, -1, 2, -2, 3, -3, 5, -5, 6, -6}},
        {5, {1, -1, 2, -2, 3, -3, 5, -5, 10, -10}},
        {7, {1, -1, 3, -3, 7, -7, 14, -14}},
    };
    for (const Case& c : cases) {
        for (long a : c.coeffs)
            for (long b : c.coeffs) {
                int sym = hilbert_symbol(mpq_class(a), mpq_class(b), Place::finite(c.p));
                bool solvable = local_solvable(a, b, c.p);
                INFO("(", a, ",", b, ")_", c.p);
                CHECK(sym == (solvable ? 1 : -1));
            }
    }
    // real place: solvable unless both coefficients are negative
    for (long a : {-3, -1, 1, 2})
        for (long b : {-5, -1, 1, 7})
            CHECK(hilbert_symbol(mpq_class(a), mpq_class(b), Place::real()) ==
                  ((a < 0 && b < 0) ? -1 : 1));
}

TEST_CASE("hilbert symbol classics") {
    CHECK(hilbert_symbol(mpq_class(-1), mpq_class(-1), Place::finite(2)) == -1);
    CHECK(hilbert_symbol(mpq_class(-1), mpq_class(-1), Place::real()) == -1);
    CHECK(hilbert_symbol(mpq_class(-1), mpq_class(-1), Place::finite(3)) == 1);
    CHECK(hilbert_symbol(mpq_class(-1), mpq_class(-1), Place::finite(5)) == 1);
    // symbol is symmetric and bimultiplicative
    Rng g(7);
    std::vector<Place> places{Place::finite(2), Place::finite(3), Place::finite(5),
                              Place::finite(7), Place::real()};
    for (int t = 0; t < 60; ++t) {
        long a = rand_int(g, -20, 20), b = rand_int(g, -20, 20), c = rand_int(g, -20, 20);
        if (!a || !b || !c) continue;
        for (const Place& v : places) {
            CHECK(hilbert_symbol(mpq_class(a), mpq_class(b), v) ==
                  hilbert_symbol(mpq_class(b), mpq_class(a), v));
            CHECK(hilbert_symbol(mpq_class(a * c), mpq_class(b), v) ==
                  hilbert_symbol(mpq_class(a), mpq_class(b), v) *
                      hilbert_symbol(mpq_class(c), mpq_class(b), v));
            // (a, -a) = 1 and (a, 1-a) = 1 (a != 1)
            CHECK(hilbert_symbol(mpq_class(a), mpq_class(-a), v) == 1);
            if (a != 1)
                CHECK(hilbert_symbol(mpq_class(a), mpq_class(1 - a), v) == 1);
        }
    }
}

TEST_CASE("product formula: the symbol is nontrivial at an even number of places") {
    Rng g(99);
    for (int t = 0; t < 120; ++t) {
        long a = rand_int(g, -30, 30), b = rand_int(g, -30, 30);
        if (!a || !b) continue;
        int prod = hilbert_symbol(mpq_class(a), mpq_class(b), Place::real());
        for (const Place& v : relevant_places({mpq_class(a), mpq_class(b)}))
            if (!v.infinite) prod *= hilbert_symbol(mpq_class(a), mpq_class(b), v);
        CHECK(prod == 1);
    }
}

TEST_CASE("form invariants") {
    QFormInvariants inv = qform_invariants(qf({1, 1, 1, 1}));
    CHECK(inv.dim == 4);
    CHECK(inv.disc == 1);
    CHECK(inv.signature == std::pair<int, int>(4, 0));
    for (auto& [v, s] : inv.hasse) CHECK(s == 1);

    inv = qform_invariants(qf({2, -3, 5}));
    CHECK(inv.disc == -30);
    CHECK(inv.signature == std::pair<int, int>(2, 1));

    inv = qform_invariants(qf({1, -4}));
    CHECK(inv.disc == -1);

    // F_p invariants: dimension and discriminant class
    FieldCtx F5 = FieldCtx::prime_field(5);
    CHECK(qform_invariants(qform_from_ints(F5, {1, 2})).disc == -1); // 2 non-square mod 5
    CHECK(qform_invariants(qform_from_ints(F5, {2, 2})).disc == 1);
}

TEST_CASE("rational equivalence: frozen verdicts") {
    CHECK(qform_equivalent(qf({1, 1}), qf({2, 2})));
    CHECK(qform_equivalent(qf({1, 1}), qf({5, 5})));
    CHECK_FALSE(qform_equivalent(qf({1, 1}), qf({3, 3})));
    CHECK_FALSE(qform_equivalent(qf({1, 1}), qf({1, -1})));
    CHECK(qform_equivalent(qf({1, -1}), qf({1, -4})));
    CHECK(qform_equivalent(qf({1, -2}), qf({-1, 2})));
    CHECK(qform_equivalent(qf({1, 1, 1}), qf({1, 2, 2})));
    CHECK_FALSE(qform_equivalent(qf({1, 1, 1}), qf({1, 1, 7})));
    CHECK(qform_equivalent(qf({1, -1, 1, -1}), qf({3, -3, 7, -7})));
    CHECK_FALSE(qform_equivalent(qf({1}), qf({1, 1})));
}

TEST_CASE("equivalence is invariant under congruence moves") {
    // scaling entries by squares and permuting entries preserves the class
    Rng g(2024);
    FieldCtx Q = FieldCtx::rationals();
    for (int t = 0; t < 50; ++t) {
        std::vector<long> entries;
        for (int i = 0; i < 4; ++i) {
            long e = rand_int(g, -10, 10);
            entries.push_back(e ? e : 1);
        }
        QForm a = qform_from_ints(Q, entries);
        std::vector<long> scrambled(entries.rbegin(), entries.rend());
        Vec d;
        for (long e : scrambled) {
            long s = rand_int(g, 1, 5);
            d.push_back(Q.from_int(e * s * s));
        }
        QForm b = qform(Q, d);
        CHECK(qform_equivalent(a, b));
    }
}

TEST_CASE("gram diagonalization lands in the same equivalence class") {
    Rng g(31337);
    FieldCtx Q = FieldCtx::rationals();
    for (int t = 0; t < 30; ++t) {
        std::vector<long> entries;
        for (int i = 0; i < 4; ++i) {
            long e = rand_int(g, -6, 6);
            entries.push_back(e ? e : 2);
        }
        QForm q = qform_from_ints(Q, entries);
        // congruate the Gram matrix by a random invertible P, rediagonalize
        Mat P(Q, 4, 4);
        do {
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) P.at(i, j) = rand_scalar(g, Q, -3, 3);
        } while (P.det().is_zero());
        Mat G = P.transpose() * qform_gram(q) * P;
        Diagonalization dg = diagonalize_gram(G);
        CHECK(qform_equivalent(q, qform(Q, dg.diag)));
    }
}

TEST_CASE("pfister forms and hyperbolicity") {
    FieldCtx Q = FieldCtx::rationals();
    auto pf = [&](std::initializer_list<long> slots) {
        Vec v;
        for (long s : slots) v.push_back(Q.from_int(s));
        return pfister(Q, v);
    };

    QForm hamilton = pf({-1, -1});
    CHECK(hamilton.dim() == 4);
    for (const Scalar& e : hamilton.diag) CHECK(e == Q.one()); // <1,1,1,1>
    CHECK_FALSE(is_hyperbolic_pfister(hamilton));

    CHECK(is_hyperbolic_pfister(pf({1, -1})));
    CHECK(is_hyperbolic_pfister(pf({2, 7})));   // 2 + 7 = 9: the symbol (2,7) is trivial
    CHECK_FALSE(is_hyperbolic_pfister(pf({-1, -7}))); // ramified at 2... check below
    CHECK_FALSE(is_hyperbolic_pfister(pf({-1, -1, -1})));
    CHECK(is_hyperbolic_pfister(pf({-1, -1, 2})));
    CHECK(qform_equivalent(pf({-1, -1, 2}), qform_hyperbolic(Q, 4)));

    CHECK_THROWS_AS(is_hyperbolic_pfister(qf({1, 1, 1})), PreconditionError);

    // 2-fold criterion agrees with the slot Hilbert symbols at every place
    Rng g(404);
    for (int t = 0; t < 80; ++t) {
        long c = rand_int(g, -10, 10), d = rand_int(g, -10, 10);
        if (!c || !d) continue;
        QForm q = pf({c, d});
        bool trivial = true;
        for (const Place& v : relevant_places({mpq_class(c), mpq_class(d)}))
            trivial = trivial && hilbert_symbol(mpq_class(c), mpq_class(d), v) == 1;
        CHECK(is_hyperbolic_pfister(q) == trivial);
        // and with equivalence to the split form (Hasse-Minkowski route)
        CHECK(is_hyperbolic_pfister(q) == qform_equivalent(q, qform_hyperbolic(Q, 2)));
    }
}

TEST_CASE("norms of quadratic extensions") {
    // Gaussian field: a number is a norm iff it is a sum of two squares
    CHECK(is_norm_of_quad_ext(1, 2));
    CHECK(is_norm_of_quad_ext(1, 5));
    CHECK(is_norm_of_quad_ext(1, mpq_class("13/17"))); // 13 and 17 both norms
    CHECK_FALSE(is_norm_of_quad_ext(1, 3));
    CHECK_FALSE(is_norm_of_quad_ext(1, -1));
    CHECK_FALSE(is_norm_of_quad_ext(1, 7));
    // real quadratic field Q(sqrt(2)): norms a^2 - 2 b^2
    CHECK(is_norm_of_quad_ext(-2, -1)); // 1 - 2
    CHECK(is_norm_of_quad_ext(-2, 2));
    CHECK_FALSE(is_norm_of_quad_ext(-2, 3));
    // split case: everything is a norm
    CHECK(is_norm_of_quad_ext(-1, 7));
    CHECK(is_norm_of_quad_ext(-4, -5));
}

TEST_CASE("hermitian forms and trace forms") {
    HermitianForm h = hermitian_form(1, {1, 1, 1});
    CHECK_FALSE(h.split);
    QForm t = hermitian_trace_form(h);
    CHECK(t.dim() == 6);
    CHECK(qform_equivalent(t, qf({1, 1, 1, 1, 1, 1})));

    CHECK(hermitian_form(-1, {1}).split);
    CHECK(hermitian_form(-4, {1}).split);
    CHECK_FALSE(hermitian_form(2, {1}).split);

    // Jacobson: equivalence via trace forms
    CHECK(hermitian_equivalent(hermitian_form(1, {1, 5}), hermitian_form(1, {5, 1})));
    CHECK(hermitian_equivalent(hermitian_form(1, {1, 2}), hermitian_form(1, {1, 2})));
    CHECK_FALSE(hermitian_equivalent(hermitian_form(1, {1, 1}), hermitian_form(1, {1, 3})));
    CHECK_THROWS_AS(hermitian_equivalent(hermitian_form(1, {1}), hermitian_form(2, {1})),
                    FieldMismatchError);

    // unimodular-determinant detection
    CHECK(hermitian_disc_trivial(hermitian_form(1, {1, 2})));
    CHECK(hermitian_disc_trivial(hermitian_form(1, {2, 5, 13})));
    CHECK_FALSE(hermitian_disc_trivial(hermitian_form(1, {1, 3})));

    // multiplying one entry by a norm never changes the class
    Rng g(606);
    for (int t2 = 0; t2 < 40; ++t2) {
        long a = rand_int(g, 1, 8), b = rand_int(g, -8, 8);
        mpq_class norm = mpq_class(a * a + b * b); // a norm of Q(i), nonzero
        long e1 = rand_int(g, -9, 9), e2 = rand_int(g, -9, 9);
        if (!e1 || !e2) continue;
        HermitianForm h1 = hermitian_form(1, {mpq_class(e1), mpq_class(e2)});
        HermitianForm h2 = hermitian_form(1, {mpq_class(e1) * norm, mpq_class(e2)});
        CHECK(hermitian_equivalent(h1, h2));
    }
}

TEST_CASE("relevant places") {
    auto places = relevant_places({mpq_class(12), mpq_class("5/7")});
    std::vector<Place> want{Place::finite(2), Place::finite(3), Place::finite(5),
                            Place::finite(7), Place::real()};
    CHECK(places == want);
}

TEST_CASE("form builders reject junk") {
    FieldCtx Q = FieldCtx::rationals();
    CHECK_THROWS_AS(qform(Q, {Q.zero()}), PreconditionError);
    CHECK_THROWS_AS(hermitian_form(0, {1}), PreconditionError);
    CHECK_THROWS_AS(hermitian_form(1, {0}), PreconditionError);
    CHECK_THROWS_AS(qform_equivalent(qf({1}), qform_from_ints(FieldCtx::prime_field(5), {1})),
                    FieldMismatchError);
    CHECK_THROWS_AS(is_norm_of_quad_ext(0, 1), PreconditionError);
}
