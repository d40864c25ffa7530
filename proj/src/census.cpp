#include "sp6flags/census.hpp"

#include <chrono>
#include <cstring>

#include "sp6flags/errors.hpp"
#include "sp6flags/invariants.hpp"
#include "sp6flags/linalg.hpp"
#include "sp6flags/wedge.hpp"

namespace sp6flags {

namespace {

// ---------------------------------------------------------------------------
// quadratic coefficient tables
//
// Every phi entry is a homogeneous quadratic in the 20 trivector coordinates.
// The integer coefficients are extracted once from the exact implementation
// by evaluating on unit vectors (diagonal terms) and on sums of two units
// (cross terms); everything downstream is plain machine arithmetic.

struct PhiQuadratic {
    struct Term {
        std::uint8_t a, b; // coordinate pair, a <= b
        int coeff;
    };
    std::array<std::vector<Term>, 36> entries;
};

long entry_long(const Mat& m, std::size_t i, std::size_t j) {
    const mpq_class& q = m.at(i, j).rat();
    if (q.get_den() != 1)
        throw InternalError("census: phi coefficient is not an integer");
    if (!q.get_num().fits_slong_p())
        throw InternalError("census: phi coefficient out of range");
    return q.get_num().get_si();
}

const PhiQuadratic& phi_quadratic() {
    static const PhiQuadratic table = [] {
        PhiQuadratic t;
        const FieldCtx Q = FieldCtx::rationals();
        auto phi_of = [&](std::size_t a, std::size_t b, bool pair) {
            Vec coords(kTriCount, Q.zero());
            coords[a] = Q.one();
            if (pair) coords[b] = coords[b] + Q.one();
            return phi_matrix(TriVector(Q, std::move(coords))).entries;
        };
        std::vector<Mat> diag;
        diag.reserve(kTriCount);
        for (std::size_t a = 0; a < kTriCount; ++a) diag.push_back(phi_of(a, a, false));
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) {
                auto& terms = t.entries[6 * i + j];
                for (std::size_t a = 0; a < kTriCount; ++a) {
                    const long c = entry_long(diag[a], i, j);
                    if (c != 0)
                        terms.push_back({std::uint8_t(a), std::uint8_t(a), int(c)});
                }
            }
        for (std::size_t a = 0; a < kTriCount; ++a)
            for (std::size_t b = a + 1; b < kTriCount; ++b) {
                const Mat both = phi_of(a, b, true);
                for (std::size_t i = 0; i < 6; ++i)
                    for (std::size_t j = 0; j < 6; ++j) {
                        const long c = entry_long(both, i, j) - entry_long(diag[a], i, j) -
                                       entry_long(diag[b], i, j);
                        if (c != 0)
                            t.entries[6 * i + j].push_back(
                                {std::uint8_t(a), std::uint8_t(b), int(c)});
                    }
            }
        return t;
    }();
    return table;
}

// The same table with coefficients reduced into [0, p); built per census run.
struct ModTable {
    std::uint64_t p = 0;
    std::uint64_t inv4 = 0;
    struct Term {
        std::uint8_t a, b;
        std::uint64_t c;
    };
    std::array<std::vector<Term>, 36> entries;
};

ModTable build_mod_table(std::uint64_t p) {
    ModTable mt;
    mt.p = p;
    mt.inv4 = mod_inv(4 % p, p);
    const PhiQuadratic& src = phi_quadratic();
    for (std::size_t e = 0; e < 36; ++e)
        for (const PhiQuadratic::Term& t : src.entries[e]) {
            const std::uint64_t c =
                t.coeff >= 0 ? std::uint64_t(t.coeff) % p
                             : (p - std::uint64_t(-long(t.coeff)) % p) % p;
            if (c != 0) mt.entries[e].push_back({t.a, t.b, c});
        }
    return mt;
}

// Coordinates and coefficients are < p <= 5 and entries have < 64 terms, so
// a single reduction at the end is safe.
inline std::uint64_t eval_entry(const ModTable& mt, std::size_t e,
                                const std::uint64_t* x) {
    unsigned long long acc = 0;
    for (const ModTable::Term& t : mt.entries[e]) acc += x[t.a] * x[t.b] * t.c;
    return acc % mt.p;
}

inline void eval_phi(const ModTable& mt, const std::uint64_t* x, std::uint64_t* phi) {
    for (std::size_t e = 0; e < 36; ++e) phi[e] = eval_entry(mt, e, x);
}

// f1 = -f/4 with f = (phi^2)_11 = sum_k phi_1k phi_k1.
inline std::uint64_t f1_from_row_col(const ModTable& mt, const std::uint64_t* x) {
    const std::uint64_t p = mt.p;
    unsigned long long f = 0;
    for (std::size_t k = 0; k < 6; ++k)
        f += eval_entry(mt, k, x) * eval_entry(mt, 6 * k, x);
    f %= p;
    return mod_mul((p - f) % p, mt.inv4, p);
}

inline std::uint64_t f1_from_phi(const ModTable& mt, const std::uint64_t* phi) {
    const std::uint64_t p = mt.p;
    unsigned long long f = 0;
    for (std::size_t k = 0; k < 6; ++k) f += phi[k] * phi[6 * k];
    f %= p;
    return mod_mul((p - f) % p, mt.inv4, p);
}

// G = -(B + B^t)/4 with B = M_J phi: the top three rows of B are phi rows
// 4..6, the bottom three are the negated rows 1..3.
inline void gram_from_phi(const ModTable& mt, const std::uint64_t* phi,
                          std::uint64_t G[6][6]) {
    const std::uint64_t p = mt.p;
    std::uint64_t B[6][6];
    for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t i = 0; i < 3; ++i) {
            B[i][j] = phi[6 * (i + 3) + j];
            B[i + 3][j] = (p - phi[6 * i + j]) % p;
        }
    const std::uint64_t neg_quarter = (p - mt.inv4) % p;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            G[i][j] = mod_mul(mod_add(B[i][j], B[j][i], p), neg_quarter, p);
}

// ---------------------------------------------------------------------------
// counting points on quadrics

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

// Congruent diagonalization of a symmetric matrix mod p; returns the number
// of nonzero diagonal entries and their product (the discriminant of the
// nondegenerate part).
void congruent_rank_disc(const std::uint64_t Gin[6][6], std::uint64_t p,
                         unsigned* rank_out, std::uint64_t* disc_out) {
    std::uint64_t A[6][6];
    std::memcpy(A, Gin, sizeof(A));
    unsigned rank = 0;
    std::uint64_t disc = 1;
    for (std::size_t k = 0; k < 6; ++k) {
        if (A[k][k] == 0) {
            std::size_t pivot = k;
            for (std::size_t i = k + 1; i < 6 && A[pivot][pivot] == 0; ++i)
                if (A[i][i] != 0) pivot = i;
            if (A[pivot][pivot] != 0 && pivot != k) {
                for (std::size_t j = 0; j < 6; ++j) std::swap(A[k][j], A[pivot][j]);
                for (std::size_t j = 0; j < 6; ++j) std::swap(A[j][k], A[j][pivot]);
            } else if (A[k][k] == 0) {
                // No diagonal pivot: bring in an off-diagonal entry, whose
                // doubled value lands on the diagonal (p is odd).
                std::size_t bi = 6, bj = 6;
                for (std::size_t i = k; i < 6 && bi == 6; ++i)
                    for (std::size_t j = i + 1; j < 6; ++j)
                        if (A[i][j] != 0) {
                            bi = i;
                            bj = j;
                            break;
                        }
                if (bi == 6) break; // active block is zero: rank found
                for (std::size_t j = 0; j < 6; ++j)
                    A[bi][j] = mod_add(A[bi][j], A[bj][j], p);
                for (std::size_t j = 0; j < 6; ++j)
                    A[j][bi] = mod_add(A[j][bi], A[j][bj], p);
                if (bi != k) {
                    for (std::size_t j = 0; j < 6; ++j) std::swap(A[k][j], A[bi][j]);
                    for (std::size_t j = 0; j < 6; ++j) std::swap(A[j][k], A[j][bi]);
                }
            }
        }
        const std::uint64_t d = A[k][k];
        if (d == 0) continue;
        const std::uint64_t dinv = mod_inv(d, p);
        for (std::size_t i = k + 1; i < 6; ++i) {
            if (A[i][k] == 0) continue;
            const std::uint64_t f = mod_mul(A[i][k], dinv, p);
            for (std::size_t j = 0; j < 6; ++j)
                A[i][j] = mod_sub(A[i][j], mod_mul(f, A[k][j], p), p);
            // column operation mirrors the row operation on the updated
            // matrix, so it reads column k (already zeroed in row i)
            for (std::size_t j = 0; j < 6; ++j)
                A[j][i] = mod_sub(A[j][i], mod_mul(f, A[j][k], p), p);
        }
        ++rank;
        disc = mod_mul(disc, d, p);
    }
    *rank_out = rank;
    *disc_out = disc;
}

int chi(std::uint64_t a, std::uint64_t p) {
    return legendre_symbol(mpz_class(static_cast<unsigned long>(a % p)), p);
}

// N(q = t) on F_p^6 for t = 0..p-1, via rank r, discriminant and the
// standard character sums, scaled by p^(6-r) for the radical.
void value_counts_into(const std::uint64_t G[6][6], std::uint64_t p,
                       unsigned long long* out) {
    unsigned r = 0;
    std::uint64_t disc = 1;
    congruent_rank_disc(G, p, &r, &disc);
    const unsigned long long radical = pow_u64(p, 6 - r);
    if (r == 0) {
        out[0] = radical;
        for (std::uint64_t t = 1; t < p; ++t) out[t] = 0;
        return;
    }
    const unsigned long long lead = pow_u64(p, r - 1);
    if (r % 2 == 1) {
        const std::uint64_t sign_part = (((r - 1) / 2) % 2 == 1) ? p - 1 : 1;
        const unsigned long long half = pow_u64(p, (r - 1) / 2);
        out[0] = radical * lead;
        for (std::uint64_t t = 1; t < p; ++t) {
            const int s = chi(mod_mul(mod_mul(sign_part, disc, p), t, p), p);
            out[t] = radical * (s >= 0 ? lead + half * std::uint64_t(s)
                                       : lead - half);
        }
    } else {
        const std::uint64_t sign_part = ((r / 2) % 2 == 1) ? p - 1 : 1;
        const int s = chi(mod_mul(sign_part, disc, p), p);
        const unsigned long long small = pow_u64(p, r / 2 - 1);
        const unsigned long long big = pow_u64(p, r / 2);
        out[0] = radical * (s >= 0 ? lead + std::uint64_t(s) * (big - small)
                                   : lead - (big - small));
        for (std::uint64_t t = 1; t < p; ++t)
            out[t] = radical * (s >= 0 ? lead - std::uint64_t(s) * small
                                       : lead + small);
    }
    unsigned long long sum = 0;
    for (std::uint64_t t = 0; t < p; ++t) sum += out[t];
    if (sum != pow_u64(p, 6))
        throw InternalError("census: quadric value counts do not sum to p^6");
}

void brute_counts_into(const std::uint64_t G[6][6], std::uint64_t p,
                       unsigned long long* out) {
    for (std::uint64_t t = 0; t < p; ++t) out[t] = 0;
    std::uint64_t v[6] = {0, 0, 0, 0, 0, 0};
    const std::uint64_t total = pow_u64(p, 6);
    for (std::uint64_t idx = 0;; ++idx) {
        unsigned long long q = 0;
        for (std::size_t i = 0; i < 6; ++i) {
            q += G[i][i] * v[i] * v[i];
            for (std::size_t j = i + 1; j < 6; ++j) q += 2 * G[i][j] * v[i] * v[j];
        }
        ++out[q % p];
        if (idx + 1 == total) break;
        for (std::size_t d = 0;; ++d) {
            if (++v[d] < p) break;
            v[d] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// kernel-space scans

struct ScanContext {
    std::uint64_t p = 0;
    std::uint64_t total = 0; // p^14
    ModTable mt;
    std::vector<std::array<std::uint64_t, 20>> basis;
    // Brute mode only: per v in F_p^6 (odometer order) the 21 monomials
    // v_i v_j (doubled off the diagonal), as 21 contiguous blocks so the
    // per-point accumulation is a plain streaming multiply-add.
    std::size_t vcount = 0;
    std::vector<std::uint64_t> vmono;
};

ScanContext make_scan_context(std::uint64_t p, bool with_vmono = false) {
    ScanContext sc;
    sc.p = p;
    sc.total = pow_u64(p, 14);
    sc.mt = build_mod_table(p);
    sc.basis = kernel_basis_mod_p(p);
    if (sc.basis.size() != 14)
        throw InternalError("census: kernel basis does not have 14 elements");
    if (with_vmono) {
        sc.vcount = pow_u64(p, 6);
        sc.vmono.assign(21 * sc.vcount, 0);
        std::uint64_t v[6] = {0, 0, 0, 0, 0, 0};
        for (std::size_t idx = 0;; ++idx) {
            std::size_t k = 0;
            for (std::size_t i = 0; i < 6; ++i)
                for (std::size_t j = i; j < 6; ++j, ++k)
                    sc.vmono[k * sc.vcount + idx] =
                        (i == j ? v[i] * v[i] : 2 * v[i] * v[j]) % p;
            if (idx + 1 == sc.vcount) break;
            for (std::size_t d = 0;; ++d) {
                if (++v[d] < p) break;
                v[d] = 0;
            }
        }
    }
    return sc;
}

// Brute counts via the monomial table: one streaming pass per nonzero Gram
// coefficient, then a histogram of the residues.
void brute_counts_table(const ScanContext& sc, const std::uint64_t G[6][6],
                        std::vector<std::uint64_t>& acc, unsigned long long* out) {
    const std::uint64_t p = sc.p;
    const std::size_t n = sc.vcount;
    std::fill(acc.begin(), acc.end(), 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i; j < 6; ++j, ++k) {
            const std::uint64_t c = G[i][j];
            if (c == 0) continue;
            const std::uint64_t* mono = sc.vmono.data() + k * n;
            for (std::size_t idx = 0; idx < n; ++idx) acc[idx] += c * mono[idx];
        }
    for (std::uint64_t t = 0; t < p; ++t) out[t] = 0;
    for (std::size_t idx = 0; idx < n; ++idx) ++out[acc[idx] % p];
}

void decode_point(const ScanContext& sc, std::uint64_t idx, std::uint64_t* digits,
                  std::uint64_t* x) {
    for (std::size_t d = 0; d < 14; ++d) {
        digits[d] = idx % sc.p;
        idx /= sc.p;
    }
    for (std::size_t k = 0; k < 20; ++k) x[k] = 0;
    for (std::size_t d = 0; d < 14; ++d) {
        if (digits[d] == 0) continue;
        for (std::size_t k = 0; k < 20; ++k)
            x[k] = (x[k] + digits[d] * sc.basis[d][k]) % sc.p;
    }
}

// Advance the base-p odometer by one, updating the 20 coordinates.  A digit
// rolling over from p-1 to 0 changes the point by +b_d mod p exactly like a
// plain increment, so every visited digit contributes one vector addition.
inline void advance(const ScanContext& sc, std::uint64_t* digits, std::uint64_t* x) {
    for (std::size_t d = 0;; ++d) {
        const std::array<std::uint64_t, 20>& b = sc.basis[d];
        for (std::size_t k = 0; k < 20; ++k) {
            x[k] += b[k];
            if (x[k] >= sc.p) x[k] -= sc.p;
        }
        if (digits[d] + 1 < sc.p) {
            ++digits[d];
            break;
        }
        digits[d] = 0;
    }
}

std::vector<unsigned long long> scan_X_range(const ScanContext& sc, std::uint64_t begin,
                                             std::uint64_t end) {
    std::vector<unsigned long long> hist(sc.p, 0);
    if (begin >= end) return hist;
    std::uint64_t digits[14], x[20];
    decode_point(sc, begin, digits, x);
    for (std::uint64_t idx = begin;; ++idx) {
        ++hist[f1_from_row_col(sc.mt, x)];
        if (idx + 1 == end) break;
        advance(sc, digits, x);
    }
    return hist;
}

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct VPartial {
    std::vector<unsigned long long> cells; // (f1, t) -> count, row-major p x p
    unsigned long long dropped = 0;
    std::uint64_t sampled = 0;
    std::uint64_t failures = 0;
};

VPartial scan_V_range(const ScanContext& sc, std::uint64_t begin, std::uint64_t end,
                      CensusMode mode, std::uint64_t seed_mix,
                      std::uint64_t threshold) {
    const std::uint64_t p = sc.p;
    VPartial out;
    out.cells.assign(std::size_t(p) * p, 0);
    if (begin >= end) return out;
    std::uint64_t digits[14], x[20], phi[36], G[6][6];
    unsigned long long counts[8], check[8];
    std::vector<std::uint64_t> acc(sc.vcount, 0);
    decode_point(sc, begin, digits, x);
    for (std::uint64_t idx = begin;; ++idx) {
        eval_phi(sc.mt, x, phi);
        const std::uint64_t f1 = f1_from_phi(sc.mt, phi);
        if (f1 == 0) {
            ++out.dropped;
        } else {
            gram_from_phi(sc.mt, phi, G);
            if (mode == CensusMode::formula) {
                value_counts_into(G, p, counts);
                if ((splitmix64(idx ^ seed_mix) >> 32) < threshold) {
                    ++out.sampled;
                    brute_counts_into(G, p, check);
                    for (std::uint64_t t = 0; t < p; ++t)
                        if (counts[t] != check[t]) {
                            ++out.failures;
                            break;
                        }
                }
            } else {
                brute_counts_table(sc, G, acc, counts);
                ++out.sampled;
                value_counts_into(G, p, check);
                for (std::uint64_t t = 0; t < p; ++t)
                    if (counts[t] != check[t]) {
                        ++out.failures;
                        break;
                    }
            }
            for (std::uint64_t t = 1; t < p; ++t)
                out.cells[std::size_t(f1) * p + t] += counts[t];
        }
        if (idx + 1 == end) break;
        advance(sc, digits, x);
    }
    return out;
}

// ---------------------------------------------------------------------------
// shared plumbing

void check_budget(std::uint64_t p, bool extended) {
    FieldCtx::prime_field(p); // validates: odd prime in range
    if (p <= 3) return;
    if (p == 5 && extended) return;
    if (p == 5)
        throw BudgetError(
            "census: p = 5 scans 5^14 ~ 6.1e9 kernel points; pass the "
            "extended flag to run it deliberately");
    throw BudgetError("census: p > 5 is out of budget at every setting");
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> split_ranges(std::uint64_t total,
                                                                  int workers) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    const std::uint64_t w = std::uint64_t(workers);
    for (std::uint64_t c = 0; c < w; ++c) {
        const std::uint64_t lo = total / w * c + std::min<std::uint64_t>(c, total % w);
        const std::uint64_t hi =
            total / w * (c + 1) + std::min<std::uint64_t>(c + 1, total % w);
        ranges.emplace_back(lo, hi);
    }
    return ranges;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void finish_X_report(CensusReport& rep, const std::vector<unsigned long long>& hist) {
    const std::vector<CensusFiber> pred = predicted_orbit_counts(rep.p, CensusLevel::X);
    rep.match = true;
    rep.total = 0;
    for (std::uint64_t i = 1; i < rep.p; ++i) {
        CensusFiber f = pred[std::size_t(i) - 1];
        f.count = hist[std::size_t(i)];
        rep.total += f.count;
        if (f.count != f.predicted) rep.match = false;
        rep.fibers.push_back(f);
    }
    rep.dropped = hist[0];
}

void finish_V_report(CensusReport& rep, const VPartial& sum) {
    const std::vector<CensusFiber> pred = predicted_orbit_counts(rep.p, CensusLevel::V);
    rep.match = sum.failures == 0;
    rep.total = 0;
    std::size_t k = 0;
    for (std::uint64_t i = 1; i < rep.p; ++i)
        for (std::uint64_t t = 1; t < rep.p; ++t) {
            CensusFiber f = pred[k++];
            f.count = sum.cells[std::size_t(i) * rep.p + t];
            rep.total += f.count;
            if (f.count != f.predicted) rep.match = false;
            rep.fibers.push_back(f);
        }
    // dropped = pairs (x, v) in no semistable fiber, including all v over
    // f1 = 0 points and the f2 = 0 locus elsewhere.
    rep.dropped = pow_u64(rep.p, 14) * pow_u64(rep.p, 6) - rep.total;
    rep.cross_checked = sum.sampled;
    rep.cross_check_failures = sum.failures;
}

} // namespace

unsigned long long group_order_sp6(std::uint64_t p) {
    unsigned long long q = p;
    return q * q * q * q * q * q * q * q * q * (q * q - 1) * (q * q * q * q - 1) *
           (q * q * q * q * q * q - 1);
}

unsigned long long group_order_sl3(std::uint64_t p) {
    unsigned long long q = p;
    return q * q * q * (q * q - 1) * (q * q * q - 1);
}

unsigned long long group_order_su3(std::uint64_t p) {
    unsigned long long q = p;
    return q * q * q * (q * q - 1) * (q * q * q + 1);
}

unsigned long long group_order_sl2(std::uint64_t p) {
    unsigned long long q = p;
    return q * (q * q - 1);
}

std::vector<CensusFiber> predicted_orbit_counts(std::uint64_t p, CensusLevel level) {
    FieldCtx::prime_field(p);
    std::vector<CensusFiber> out;
    if (level == CensusLevel::X) {
        for (std::uint64_t i = 1; i < p; ++i) {
            CensusFiber f;
            f.f1 = i;
            const std::uint64_t neg = (p - i) % p;
            f.predicted = group_order_sp6(p) /
                          (chi(neg, p) == 1 ? group_order_sl3(p) : group_order_su3(p));
            out.push_back(f);
        }
    } else {
        for (std::uint64_t i = 1; i < p; ++i)
            for (std::uint64_t t = 1; t < p; ++t) {
                CensusFiber f;
                f.f1 = i;
                f.f2 = t;
                f.predicted = group_order_sp6(p) / group_order_sl2(p);
                out.push_back(f);
            }
    }
    return out;
}

std::vector<std::array<std::uint64_t, 20>> kernel_basis_mod_p(std::uint64_t p) {
    const FieldCtx F = FieldCtx::prime_field(p);
    Mat psi(F, 6, kTriCount);
    for (std::size_t a = 0; a < kTriCount; ++a) {
        Vec coords(kTriCount, F.zero());
        coords[a] = F.one();
        const Vec image = contract_psi(TriVector(F, std::move(coords)));
        for (std::size_t i = 0; i < 6; ++i) psi.at(i, a) = image[i];
    }
    const std::vector<Vec> null = psi.nullspace();
    std::vector<std::array<std::uint64_t, 20>> out;
    for (const Vec& v : null) {
        std::array<std::uint64_t, 20> row{};
        for (std::size_t k = 0; k < kTriCount; ++k) row[k] = v[k].fp_value();
        out.push_back(row);
    }
    return out;
}

std::uint64_t f1_mod_p(const std::array<std::uint64_t, 20>& coords, std::uint64_t p) {
    FieldCtx::prime_field(p);
    const ModTable mt = build_mod_table(p);
    std::uint64_t x[20];
    for (std::size_t k = 0; k < 20; ++k) x[k] = coords[k] % p;
    return f1_from_row_col(mt, x);
}

std::array<std::array<std::uint64_t, 6>, 6>
f2_gram_mod_p(const std::array<std::uint64_t, 20>& coords, std::uint64_t p) {
    FieldCtx::prime_field(p);
    const ModTable mt = build_mod_table(p);
    std::uint64_t x[20], phi[36], G[6][6];
    for (std::size_t k = 0; k < 20; ++k) x[k] = coords[k] % p;
    eval_phi(mt, x, phi);
    gram_from_phi(mt, phi, G);
    std::array<std::array<std::uint64_t, 6>, 6> out;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) out[i][j] = G[i][j];
    return out;
}

std::vector<unsigned long long>
quadric_value_counts(const std::array<std::array<std::uint64_t, 6>, 6>& Gin,
                     std::uint64_t p) {
    FieldCtx::prime_field(p);
    if (p > 7)
        throw PreconditionError("quadric_value_counts: p above the test range");
    std::uint64_t G[6][6];
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) G[i][j] = Gin[i][j] % p;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
            if (G[i][j] != G[j][i])
                throw PreconditionError("quadric_value_counts: Gram is not symmetric");
    unsigned long long buf[8];
    value_counts_into(G, p, buf);
    return std::vector<unsigned long long>(buf, buf + p);
}

std::vector<unsigned long long>
quadric_value_counts_brute(const std::array<std::array<std::uint64_t, 6>, 6>& Gin,
                           std::uint64_t p) {
    FieldCtx::prime_field(p);
    if (p > 7)
        throw PreconditionError("quadric_value_counts_brute: p above the test range");
    std::uint64_t G[6][6];
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) G[i][j] = Gin[i][j] % p;
    unsigned long long buf[8];
    brute_counts_into(G, p, buf);
    return std::vector<unsigned long long>(buf, buf + p);
}

CensusReport count_X_fibers(std::uint64_t p, int workers, bool extended) {
    if (workers < 1) throw PreconditionError("count_X_fibers: workers must be >= 1");
    check_budget(p, extended);
    const auto t0 = std::chrono::steady_clock::now();
    const ScanContext sc = make_scan_context(p);
    const auto ranges = split_ranges(sc.total, workers);
    std::vector<std::vector<unsigned long long>> partials(ranges.size());
#pragma omp parallel for num_threads(workers) schedule(dynamic)
    for (int c = 0; c < int(ranges.size()); ++c)
        partials[std::size_t(c)] =
            scan_X_range(sc, ranges[std::size_t(c)].first, ranges[std::size_t(c)].second);
    std::vector<unsigned long long> hist(p, 0);
    for (const auto& part : partials)
        for (std::uint64_t i = 0; i < p; ++i) hist[i] += part[i];

    CensusReport rep;
    rep.p = p;
    rep.level = CensusLevel::X;
    rep.workers = workers;
    finish_X_report(rep, hist);
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

CensusReport count_X_fibers_reference(std::uint64_t p, bool extended) {
    check_budget(p, extended);
    const auto t0 = std::chrono::steady_clock::now();
    const ScanContext sc = make_scan_context(p);
    std::vector<unsigned long long> hist(p, 0);
    std::uint64_t digits[14], x[20];
    for (std::uint64_t idx = 0; idx < sc.total; ++idx) {
        decode_point(sc, idx, digits, x);
        ++hist[f1_from_row_col(sc.mt, x)];
    }
    CensusReport rep;
    rep.p = p;
    rep.level = CensusLevel::X;
    rep.workers = 1;
    finish_X_report(rep, hist);
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

CensusReport count_V_fibers(std::uint64_t p, CensusMode mode, int workers,
                            unsigned seed, double sample_rate, bool extended) {
    if (workers < 1) throw PreconditionError("count_V_fibers: workers must be >= 1");
    if (sample_rate < 0.0 || sample_rate > 1.0)
        throw PreconditionError("count_V_fibers: sample_rate must lie in [0, 1]");
    check_budget(p, extended);
    if (mode == CensusMode::brute && p > 3)
        throw BudgetError("count_V_fibers: brute mode is only in budget at p = 3");
    const auto t0 = std::chrono::steady_clock::now();
    const ScanContext sc = make_scan_context(p, mode == CensusMode::brute);
    const std::uint64_t seed_mix = splitmix64(seed);
    const std::uint64_t threshold =
        std::uint64_t(sample_rate * 4294967296.0); // fraction of 2^32
    const auto ranges = split_ranges(sc.total, workers);
    std::vector<VPartial> partials(ranges.size());
#pragma omp parallel for num_threads(workers) schedule(dynamic)
    for (int c = 0; c < int(ranges.size()); ++c)
        partials[std::size_t(c)] =
            scan_V_range(sc, ranges[std::size_t(c)].first, ranges[std::size_t(c)].second,
                         mode, seed_mix, threshold);
    VPartial sum;
    sum.cells.assign(std::size_t(p) * p, 0);
    for (const VPartial& part : partials) {
        for (std::size_t i = 0; i < sum.cells.size(); ++i) sum.cells[i] += part.cells[i];
        sum.dropped += part.dropped;
        sum.sampled += part.sampled;
        sum.failures += part.failures;
    }
    CensusReport rep;
    rep.p = p;
    rep.level = CensusLevel::V;
    rep.mode = mode;
    rep.workers = workers;
    finish_V_report(rep, sum);
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

CensusReport count_V_fibers_reference(std::uint64_t p, bool extended) {
    check_budget(p, extended);
    const auto t0 = std::chrono::steady_clock::now();
    const ScanContext sc = make_scan_context(p);
    VPartial sum;
    sum.cells.assign(std::size_t(p) * p, 0);
    std::uint64_t digits[14], x[20], phi[36], G[6][6];
    unsigned long long counts[8];
    for (std::uint64_t idx = 0; idx < sc.total; ++idx) {
        decode_point(sc, idx, digits, x);
        eval_phi(sc.mt, x, phi);
        const std::uint64_t f1 = f1_from_phi(sc.mt, phi);
        if (f1 == 0) {
            ++sum.dropped;
            continue;
        }
        gram_from_phi(sc.mt, phi, G);
        value_counts_into(G, p, counts);
        for (std::uint64_t t = 1; t < p; ++t)
            sum.cells[std::size_t(f1) * p + t] += counts[t];
    }
    CensusReport rep;
    rep.p = p;
    rep.level = CensusLevel::V;
    rep.workers = 1;
    finish_V_report(rep, sum);
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

} // namespace sp6flags
