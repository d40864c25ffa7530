#include "sp6flags/verify.hpp"

#include <chrono>
#include <functional>

#include "sp6flags/census.hpp"
#include "sp6flags/composition.hpp"
#include "sp6flags/errors.hpp"
#include "sp6flags/flags.hpp"
#include "sp6flags/freudenthal.hpp"
#include "sp6flags/invariants.hpp"
#include "sp6flags/orbits.hpp"
#include "sp6flags/qforms.hpp"
#include "sp6flags/rng.hpp"
#include "sp6flags/wedge.hpp"

namespace sp6flags {

namespace {

/// Collects failures without aborting the suite; keeps the first description.
struct Recorder {
    int instances = 0;
    int failures = 0;
    std::string detail;

    void operator()(bool ok, const char* what) {
        if (ok) return;
        ++failures;
        if (detail.empty()) detail = what;
    }
};

TriVector rand_trivector(Rng& g, const FieldCtx& ctx, long lo, long hi) {
    Vec coords;
    coords.reserve(kTriCount);
    for (std::size_t k = 0; k < kTriCount; ++k)
        coords.push_back(rand_scalar(g, ctx, lo, hi));
    return TriVector(ctx, std::move(coords));
}

Vec rand_vec6(Rng& g, const FieldCtx& ctx, long lo, long hi) {
    Vec v;
    v.reserve(6);
    for (int k = 0; k < 6; ++k) v.push_back(rand_scalar(g, ctx, lo, hi));
    return v;
}

Mat rand_invertible(Rng& g, const FieldCtx& ctx) {
    for (;;) {
        Mat m(ctx, 6, 6);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                m.at(i, j) = rand_scalar(g, ctx, -3, 3);
        if (!m.det().is_zero()) return m;
    }
}

NormalFormX rand_semistable_nf(Rng& g, const FieldCtx& ctx) {
    for (;;) {
        const Scalar y0 = rand_scalar(g, ctx, -5, 5);
        const Scalar y1 = rand_nonzero(g, ctx, -5, 5);
        const Scalar y2 = rand_nonzero(g, ctx, -5, 5);
        const Scalar y3 = rand_nonzero(g, ctx, -5, 5);
        const NormalFormX nf = normal_form_x(y0, y1, y2, y3);
        if (nf.x_semistable) return nf;
    }
}

// --------------------------------------------------------------------------
// the suites

void suite_phi_square(Rng& g, int trials, Recorder& rec) {
    for (const char* spec : {"Q", "F:5"}) {
        const FieldCtx ctx = FieldCtx::parse(spec);
        const Mat id = Mat::identity(ctx, 6);
        for (int t = 0; t < trials; ++t) {
            ++rec.instances;
            const TriVector T = rand_trivector(g, ctx, -9, 9);
            const Scalar f = quartic_f(T); // certifies scalarity internally
            const Mat phi = phi_matrix(T).entries;
            rec(phi * phi == id * f, "phi(T)^2 != f(T) I6");
        }
    }
}

void suite_phi_covariance(Rng& g, int trials, Recorder& rec) {
    const FieldCtx Q = FieldCtx::rationals();
    for (int t = 0; t < trials; ++t) {
        ++rec.instances;
        const Mat m = rand_invertible(g, Q);
        const TriVector T = rand_trivector(g, Q, -4, 4);
        const Mat lhs = phi_matrix(act_gl6(m, T)).entries;
        const Mat rhs = m * phi_matrix(T).entries * m.inverse() * m.det();
        rec(lhs == rhs, "phi(g.T) != det(g) g phi(T) g^-1");
    }
}

void suite_invariance(Rng& g, int trials, Recorder& rec) {
    for (const char* spec : {"Q", "F:5"}) {
        const FieldCtx ctx = FieldCtx::parse(spec);
        for (int t = 0; t < (trials + 1) / 2; ++t) {
            ++rec.instances;
            const TriVector T = rand_trivector(g, ctx, -4, 4);
            const InvariantReport base = f1_f2_semistable(T);

            const Mat m = random_symplectic(g, ctx);
            const InvariantReport moved = f1_f2_semistable(act_gl6(m, T));
            rec(moved.f == base.f && moved.f1 == base.f1 && moved.f2 == base.f2,
                "f, f1, f2 not symplectic-invariant");

            // componentwise scaling (a on the kernel part, b on the 6-dim
            // part): weights 4 and 2+2
            const Scalar a = rand_nonzero(g, ctx, -5, 5);
            const Scalar b = rand_nonzero(g, ctx, -5, 5);
            const SplitParts parts = split_components(T);
            const InvariantReport scaled = f1_f2_semistable(
                tv_add(tv_scale(a, parts.x_part), iota(vec_scale(b, parts.v_part))));
            const Scalar a2 = a * a, b2 = b * b;
            rec(scaled.f1 == a2 * a2 * base.f1, "f1 does not scale with weight a^4");
            rec(scaled.f2 == a2 * b2 * base.f2, "f2 does not scale with weight a^2 b^2");

            // block similitude diag(a I3, I3): weights 6 and 4
            const SympElement h = check_symplectic(similitude_h(a));
            const InvariantReport twisted = f1_f2_semistable(act_pair(h, T));
            rec(twisted.f1 == a2 * a2 * a2 * base.f1,
                "f1 does not scale with weight a^6 under the similitude");
            rec(twisted.f2 == a2 * a2 * base.f2,
                "f2 does not scale with weight a^4 under the similitude");
        }
    }
}

void suite_composition(Rng& g, int trials, Recorder& rec) {
    for (const char* spec : {"Q", "F:5"}) {
        const FieldCtx ctx = FieldCtx::parse(spec);
        std::vector<CompAlgebra> algebras;
        for (int levels = 0; levels <= 3; ++levels) {
            Vec lambdas;
            for (int l = 0; l < levels; ++l)
                lambdas.push_back(rand_nonzero(g, ctx, -5, 5));
            algebras.push_back(CompAlgebra::cayley_dickson(cd_tower(ctx, lambdas)));
        }
        algebras.push_back(CompAlgebra::zorn(ctx));
        for (const CompAlgebra& A : algebras) {
            for (int t = 0; t < trials; ++t) {
                ++rec.instances;
                Vec u, v;
                for (std::size_t k = 0; k < A.dim(); ++k) {
                    u.push_back(rand_scalar(g, ctx, -6, 6));
                    v.push_back(rand_scalar(g, ctx, -6, 6));
                }
                rec(A.norm(A.mul(u, v)) == A.norm(u) * A.norm(v),
                    "norm is not multiplicative");
                if (A.dim() == 8) {
                    rec(A.mul(u, A.mul(u, v)) == A.mul(A.mul(u, u), v),
                        "left alternativity fails in dimension 8");
                    rec(A.mul(A.mul(v, u), u) == A.mul(v, A.mul(u, u)),
                        "right alternativity fails in dimension 8");
                }
            }
        }
    }
}

void suite_canonicalize(Rng& g, int trials, Recorder& rec) {
    for (const char* spec : {"Q", "F:5"}) {
        const FieldCtx ctx = FieldCtx::parse(spec);
        for (int t = 0; t < (trials + 1) / 2; ++t) {
            ++rec.instances;
            const Scalar y0 = rand_nonzero(g, ctx, -6, 6);
            Vec v = rand_vec6(g, ctx, -6, 6);
            while (pairing_q(v).is_zero()) v = rand_vec6(g, ctx, -6, 6);

            const CanonicalizeResult res = canonicalize_v(y0, v);
            const TriVector x = split_x_part(y0);
            Vec target(6, ctx.zero());
            target[0] = res.q;
            target[3] = ctx.one();
            rec(res.q == pairing_q(v), "canonical q differs from the pairing");
            rec(res.canonical == tv_add(x, iota(target)),
                "canonical point is not x + iota(q,0,0,1,0,0)");
            rec(act_wedge3(res.g, tv_add(x, iota(v))) == res.canonical,
                "returned element does not transport the input to the "
                "canonical point");
        }
    }
}

void suite_stabilizer(Rng& g, int trials, Recorder& rec) {
    const FieldCtx Q = FieldCtx::rationals();
    const int n = trials < 5 ? 1 : trials / 5;
    for (int t = 0; t < n; ++t) {
        ++rec.instances;
        const NormalFormX nf = rand_semistable_nf(g, Q);
        const int m = rand_int(g, 1, 3);
        TriVector point = normal_form_point(nf, canonical_pattern_v(nf, int(m)));
        // move off the family to exercise generic coordinates
        point = act_gl6(random_symplectic(g, Q), point);
        rec(lie_stabilizer(point).dim() == 3,
            "stabilizer of a semistable pair is not 3-dimensional");
        rec(lie_stabilizer(normal_form_x_part(nf)).dim() == 8,
            "stabilizer of a semistable kernel point is not 8-dimensional");
    }
    const Scalar one = Q.one();
    rec(lie_stabilizer(split_x_part(one)).dim() == 8,
        "stabilizer of the two-term kernel point is not 8-dimensional");
}

void suite_quaternion_triangle(Rng& g, int trials, Recorder& rec) {
    const FieldCtx Q = FieldCtx::rationals();
    const int n = trials < 10 ? 1 : trials / 10;
    for (int t = 0; t < n; ++t) {
        const NormalFormX nf = rand_semistable_nf(g, Q);
        const mpq_class f1 = nf.f1.rat();
        // the ambient octonion is shared by all three pattern slots
        const QForm oct = hermitian_trace_form(hermitian_form(
            f1, {mpq_class(1), nf.y1.rat(), nf.y2.rat(), nf.y3.rat()}));
        const OctClass cls = classify_composition_form(oct).oct;
        for (int m = 1; m <= 3; ++m) {
            ++rec.instances;
            const Scalar ym = m == 1 ? nf.y1 : m == 2 ? nf.y2 : nf.y3;

            // route one: hermitian trace form of diag(1, ym)
            const QForm trace =
                hermitian_trace_form(hermitian_form(f1, {mpq_class(1), ym.rat()}));
            // route two: Killing-form extraction from the Lie stabilizer
            const TriVector point =
                normal_form_point(nf, canonical_pattern_v(nf, m));
            const QForm killing =
                quaternion_norm_from_stabilizer(lie_stabilizer(point));
            // route three: norm of the doubling tower inside that octonion
            const FlagTower tower = build_flag_tower(f1, ym.rat(), cls);
            const QForm doubled = tower.Q.norm_form();

            rec(qform_equivalent(trace, killing),
                "trace-form and Killing routes to the quaternion norm disagree");
            rec(qform_equivalent(trace, doubled),
                "trace-form and doubling routes to the quaternion norm disagree");
            rec(qform_equivalent(killing, doubled),
                "Killing and doubling routes to the quaternion norm disagree");
        }
    }
}

void suite_freudenthal(Rng& g, int trials, Recorder& rec) {
    for (const char* spec : {"Q", "F:5"}) {
        const FieldCtx ctx = FieldCtx::parse(spec);
        for (int t = 0; t < (trials + 1) / 2; ++t) {
            ++rec.instances;
            CompAlgebra C = [&] {
                switch (t % 6) {
                case 0: return CompAlgebra::cayley_dickson(cd_tower(ctx, {}));
                case 1:
                    return CompAlgebra::cayley_dickson(
                        cd_tower(ctx, {rand_nonzero(g, ctx, -4, 4)}));
                case 2:
                    return CompAlgebra::cayley_dickson(cd_tower(
                        ctx, {rand_nonzero(g, ctx, -4, 4), rand_nonzero(g, ctx, -4, 4)}));
                case 3:
                    return CompAlgebra::cayley_dickson(
                        cd_tower(ctx, {ctx.from_int(-1), ctx.from_int(-1)}));
                case 4: return CompAlgebra::zorn(ctx);
                default:
                    return CompAlgebra::cayley_dickson(
                        cd_tower(ctx, {ctx.from_int(-1), ctx.from_int(-1),
                                       ctx.from_int(-1)}));
                }
            }();
            Vec gamma{rand_nonzero(g, ctx, -4, 4), rand_nonzero(g, ctx, -4, 4),
                      rand_nonzero(g, ctx, -4, 4)};
            const FreudenthalAlgebra F = freudenthal_algebra(C, gamma);

            Vec alpha{rand_scalar(g, ctx, -4, 4), rand_scalar(g, ctx, -4, 4),
                      rand_scalar(g, ctx, -4, 4)};
            std::array<Vec, 3> slots;
            for (std::array<Vec, 3>::size_type s = 0; s < 3; ++s)
                for (std::size_t k = 0; k < C.dim(); ++k)
                    slots[s].push_back(rand_scalar(g, ctx, -4, 4));
            const FreudenthalElement X = freudenthal_element(F, alpha, slots);

            // cubic identity and X o X^# = N I certified inside cubic_data
            const CubicData data = cubic_data(F, X);
            rec(freudenthal_cross(F, X, X) ==
                    freudenthal_scale(F, ctx.from_int(2), data.adjoint),
                "X x X != 2 X^#");
            if (t % 25 == 0) {
                algebra_trace_form(F); // certified against the diagonal formula
                ++rec.instances;
            }
        }
    }
}

void suite_census_formula(Rng& g, int trials, Recorder& rec) {
    const std::uint64_t primes[3] = {3, 5, 7};
    for (int t = 0; t < trials; ++t) {
        ++rec.instances;
        const std::uint64_t p = primes[t % 3];
        std::array<std::array<std::uint64_t, 6>, 6> G{};
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i; j < 6; ++j) {
                const std::uint64_t e = std::uint64_t(rand_int(g, 0, long(p) - 1));
                G[i][j] = e;
                G[j][i] = e;
            }
        if (t % 3 == 0) {
            const std::size_t r = std::size_t(rand_int(g, 0, 5));
            for (std::size_t j = 0; j < 6; ++j) {
                G[r][j] = 0;
                G[j][r] = 0;
            }
        }
        rec(quadric_value_counts(G, p) == quadric_value_counts_brute(G, p),
            "closed-formula quadric counts differ from enumeration");
    }
    ++rec.instances;
    const auto pred = predicted_orbit_counts(3, CensusLevel::X);
    rec(pred.size() == 2 && pred[0].predicted == 1516320ULL &&
            pred[1].predicted == 1632960ULL,
        "orbit-stabilizer predictions at p = 3 are off");
}

struct SuiteSpec {
    const char* name;
    void (*fn)(Rng&, int, Recorder&);
};

const SuiteSpec kSuites[] = {
    {"phi-square", suite_phi_square},
    {"phi-covariance", suite_phi_covariance},
    {"invariance", suite_invariance},
    {"composition", suite_composition},
    {"canonicalize", suite_canonicalize},
    {"stabilizer", suite_stabilizer},
    {"quaternion-triangle", suite_quaternion_triangle},
    {"freudenthal", suite_freudenthal},
    {"census-formula", suite_census_formula},
};

SuiteResult run_one(const SuiteSpec& spec, unsigned seed, unsigned index,
                    int trials) {
    SuiteResult res;
    res.name = spec.name;
    Recorder rec;
    Rng g(std::uint64_t(seed) * 0x9e3779b97f4a7c15ULL + index);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        spec.fn(g, trials, rec);
    } catch (const Error& e) {
        ++rec.failures;
        if (rec.detail.empty()) rec.detail = e.what();
    }
    res.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.instances = rec.instances;
    res.failures = rec.failures;
    res.passed = rec.failures == 0;
    res.detail = rec.detail;
    return res;
}

} // namespace

std::vector<std::string> verify_suite_names() {
    std::vector<std::string> names;
    for (const SuiteSpec& s : kSuites) names.push_back(s.name);
    return names;
}

VerifyReport run_verify(const std::string& suite, unsigned seed, int trials) {
    if (trials < 1) throw PreconditionError("run_verify: trials must be >= 1");
    VerifyReport rep;
    rep.seed = seed;
    rep.trials = trials;
    bool found = false;
    unsigned index = 0;
    for (const SuiteSpec& s : kSuites) {
        ++index;
        if (suite != "all" && suite != s.name) continue;
        found = true;
        rep.suites.push_back(run_one(s, seed, index, trials));
    }
    if (!found)
        throw ParseError("unknown verify suite: " + suite +
                         " (try `all` or one of the documented names)");
    rep.all_passed = true;
    for (const SuiteResult& r : rep.suites)
        if (!r.passed) rep.all_passed = false;
    return rep;
}

} // namespace sp6flags
