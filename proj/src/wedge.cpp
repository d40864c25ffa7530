#include "sp6flags/wedge.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "sp6flags/errors.hpp"

namespace sp6flags {

namespace {

std::array<std::array<int, 3>, kTriCount> build_tri_table() {
    std::array<std::array<int, 3>, kTriCount> t{};
    std::size_t n = 0;
    for (int i = 1; i <= 6; ++i)
        for (int j = i + 1; j <= 6; ++j)
            for (int l = j + 1; l <= 6; ++l) t[n++] = {i, j, l};
    return t;
}

void check_basis_index(int i) {
    if (i < 1 || i > 6) throw PreconditionError("basis index out of range 1..6");
}

// the m-th section generator is half the sum of two basis trivectors; this
// table lists the two index triples for each m (psi of the sum is 2 e_m)
constexpr int kSectionTriples[6][2][3] = {
    {{1, 2, 5}, {1, 3, 6}}, {{2, 1, 4}, {2, 3, 6}}, {{3, 1, 4}, {3, 2, 5}},
    {{4, 2, 5}, {4, 3, 6}}, {{5, 1, 4}, {5, 3, 6}}, {{6, 1, 4}, {6, 2, 5}},
};

Scalar det3_minor(const Mat& g, const std::array<int, 3>& rows,
                  const std::array<int, 3>& cols) {
    auto e = [&](int r, int c) { return g.at(rows[r] - 1, cols[c] - 1); };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
           e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

} // namespace

const std::array<std::array<int, 3>, kTriCount>& tri_table() {
    static const auto table = build_tri_table();
    return table;
}

std::size_t tri_index(int i, int j, int l) {
    if (!(i < j && j < l)) throw PreconditionError("triple is not sorted");
    check_basis_index(i);
    check_basis_index(l);
    const auto& table = tri_table();
    for (std::size_t n = 0; n < kTriCount; ++n)
        if (table[n][0] == i && table[n][1] == j && table[n][2] == l) return n;
    throw InternalError("triple table lookup failed");
}

TriRef tri_ref(int i, int j, int l) {
    check_basis_index(i);
    check_basis_index(j);
    check_basis_index(l);
    if (i == j || j == l || i == l) return {0, 0};
    int sign = 1;
    if (i > j) { std::swap(i, j); sign = -sign; }
    if (j > l) { std::swap(j, l); sign = -sign; }
    if (i > j) { std::swap(i, j); sign = -sign; }
    return {tri_index(i, j, l), sign};
}

TriVector::TriVector(const FieldCtx& c) : ctx(c), coords(kTriCount, c.zero()) {}

TriVector::TriVector(const FieldCtx& c, Vec coeffs) : ctx(c), coords(std::move(coeffs)) {
    if (coords.size() != kTriCount)
        throw PreconditionError("a trivector needs exactly 20 coordinates");
}

TriVector trivector_zero(const FieldCtx& ctx) { return TriVector(ctx); }

Scalar tv_coeff(const TriVector& T, int i, int j, int l) {
    TriRef r = tri_ref(i, j, l);
    if (r.sign == 0) return T.ctx.zero();
    Scalar c = T.coords[r.index];
    return r.sign > 0 ? c : -c;
}

void tv_add_term(TriVector& T, int i, int j, int l, const Scalar& c) {
    TriRef r = tri_ref(i, j, l);
    if (r.sign == 0) return;
    T.coords[r.index] = r.sign > 0 ? T.coords[r.index] + c : T.coords[r.index] - c;
}

TriVector tv_add(const TriVector& a, const TriVector& b) {
    return TriVector(a.ctx, vec_add(a.coords, b.coords));
}

TriVector tv_sub(const TriVector& a, const TriVector& b) {
    return TriVector(a.ctx, vec_sub(a.coords, b.coords));
}

TriVector tv_scale(const Scalar& c, const TriVector& T) {
    return TriVector(T.ctx, vec_scale(c, T.coords));
}

bool tv_is_zero(const TriVector& T) { return vec_is_zero(T.coords); }

// ---------------------------------------------------------------------------
// text grammar

namespace {

// true when s has a '+' or '-' outside parentheses after position 0
bool has_toplevel_sign(const std::string& s) {
    int depth = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        char c = s[k];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (depth == 0 && k > 0 && (c == '+' || c == '-')) return true;
    }
    return false;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

void parse_term(TriVector& T, const std::string& raw, int sign) {
    std::string term = trim(raw);
    if (term.empty()) throw ParseError("empty term in trivector expression");
    std::size_t epos = term.rfind('e');
    if (epos == std::string::npos || epos + 4 != term.size())
        throw ParseError("term must end with a basis marker e<ijl>: '" + term + "'");
    int idx[3];
    for (int k = 0; k < 3; ++k) {
        char c = term[epos + 1 + k];
        if (c < '1' || c > '6')
            throw ParseError("basis indices must be digits 1..6: '" + term + "'");
        idx[k] = c - '0';
    }
    if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2])
        throw ParseError("repeated basis index in '" + term + "'");
    std::string coeff_text = trim(term.substr(0, epos));
    Scalar c = T.ctx.one();
    if (!coeff_text.empty()) {
        if (coeff_text.back() != '*')
            throw ParseError("expected '*' between coefficient and basis marker in '" +
                             term + "'");
        coeff_text = trim(coeff_text.substr(0, coeff_text.size() - 1));
        if (coeff_text.empty())
            throw ParseError("missing coefficient before '*' in '" + term + "'");
        c = Scalar::parse(T.ctx, coeff_text);
    }
    if (sign < 0) c = -c;
    tv_add_term(T, idx[0], idx[1], idx[2], c);
}

} // namespace

std::string trivector_format(const TriVector& T) {
    std::ostringstream out;
    bool first = true;
    const auto& table = tri_table();
    for (std::size_t n = 0; n < kTriCount; ++n) {
        if (T.coords[n].is_zero()) continue;
        std::string s = T.coords[n].to_string();
        bool neg = false;
        if (has_toplevel_sign(s)) {
            s = "(" + s + ")";
        } else if (s.front() == '-') {
            neg = true;
            s = s.substr(1);
        }
        if (first) {
            if (neg) out << '-';
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        out << s << "*e" << table[n][0] << table[n][1] << table[n][2];
    }
    if (first) return "0";
    return out.str();
}

TriVector trivector_parse(const FieldCtx& ctx, const std::string& text) {
    std::string s = trim(text);
    if (s == "0") return trivector_zero(ctx);
    TriVector T(ctx);
    int depth = 0;
    int sign = 1;
    bool have_sign = false;
    std::string buffer;
    for (char c : s) {
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        if (depth == 0 && (c == '+' || c == '-') && trim(buffer).empty()) {
            if (have_sign) throw ParseError("consecutive signs in trivector expression");
            sign = (c == '-') ? -1 : 1;
            have_sign = true;
            continue;
        }
        if (depth == 0 && (c == '+' || c == '-')) {
            parse_term(T, buffer, sign);
            buffer.clear();
            sign = (c == '-') ? -1 : 1;
            have_sign = true;
            continue;
        }
        buffer += c;
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in trivector expression");
    parse_term(T, buffer, sign);
    return T;
}

// ---------------------------------------------------------------------------
// symplectic structure

int form_on_basis(int a, int b) {
    if (b == a + 3) return 1;
    if (a == b + 3) return -1;
    return 0;
}

Mat symplectic_form_matrix(const FieldCtx& ctx) {
    Mat m(ctx, 6, 6);
    for (int a = 1; a <= 6; ++a)
        for (int b = 1; b <= 6; ++b) m.at(a - 1, b - 1) = ctx.from_int(form_on_basis(a, b));
    return m;
}

SymplecticSpace symplectic_space(const FieldCtx& ctx) {
    return SymplecticSpace{ctx, symplectic_form_matrix(ctx)};
}

SympElement check_symplectic(const Mat& g) {
    if (g.rows() != 6 || g.cols() != 6)
        throw PreconditionError("similitude check needs a 6x6 matrix");
    Mat MJ = symplectic_form_matrix(g.ctx());
    Mat S = g * MJ * g.transpose();
    Scalar lambda = S.at(0, 3); // M_J has a 1 in that slot
    if (lambda.is_zero()) throw PreconditionError("not a similitude");
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            if (S.at(r, c) != lambda * MJ.at(r, c)) throw PreconditionError("not a similitude");
    return SympElement{g, lambda};
}

Mat similitude_h(const Scalar& a) {
    const FieldCtx& ctx = a.ctx();
    Mat m = Mat::identity(ctx, 6);
    for (int k = 0; k < 3; ++k) m.at(k, k) = a;
    return m;
}

Mat embed_gl3_pair(const Mat& A) {
    if (A.rows() != 3 || A.cols() != 3) throw PreconditionError("block must be 3x3");
    Mat inv_t = A.inverse().transpose();
    Mat m = Mat::identity(A.ctx(), 6);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            m.at(r, c) = A.at(r, c);
            m.at(r + 3, c + 3) = inv_t.at(r, c);
        }
    return m;
}

Mat embed_pair_gl3(const Mat& B) {
    if (B.rows() != 3 || B.cols() != 3) throw PreconditionError("block must be 3x3");
    Mat inv_t = B.inverse().transpose();
    Mat m = Mat::identity(B.ctx(), 6);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            m.at(r, c) = inv_t.at(r, c);
            m.at(r + 3, c + 3) = B.at(r, c);
        }
    return m;
}

Mat embed_sl2_block(const FieldCtx& ctx, int m, const Scalar& a, const Scalar& b,
                    const Scalar& c, const Scalar& d) {
    if (m < 1 || m > 3) throw PreconditionError("coordinate pair index must be 1..3");
    if (a * d - b * c != ctx.one())
        throw PreconditionError("SL2 block needs determinant 1");
    Mat g = Mat::identity(ctx, 6);
    int lo = m - 1, hi = m + 2;
    g.at(lo, lo) = a;
    g.at(lo, hi) = b;
    g.at(hi, lo) = c;
    g.at(hi, hi) = d;
    return g;
}

Mat transvection(const Vec& u, const Scalar& c) {
    if (u.size() != 6) throw PreconditionError("transvection direction must have 6 entries");
    const FieldCtx& ctx = c.ctx();
    Mat MJ = symplectic_form_matrix(ctx);
    Vec w = MJ.transpose().apply(u); // w = u^t M_J as a row
    Mat g = Mat::identity(ctx, 6);
    for (int r = 0; r < 6; ++r)
        for (int col = 0; col < 6; ++col) g.at(r, col) = g.at(r, col) + c * u[r] * w[col];
    return g;
}

Mat random_symplectic(Rng& rng, const FieldCtx& ctx, int word_len) {
    Mat m = Mat::identity(ctx, 6);
    for (int k = 0; k < word_len; ++k) {
        switch (rand_int(rng, 0, 2)) {
        case 0: {
            Vec u(6, ctx.zero());
            u[static_cast<std::size_t>(rand_int(rng, 0, 5))] = ctx.one();
            if (rand_int(rng, 0, 1) == 1)
                u[static_cast<std::size_t>(rand_int(rng, 0, 5))] =
                    ctx.from_int(rand_int(rng, -1, 1));
            Scalar c = rand_nonzero(rng, ctx, -2, 2);
            m = transvection(u, c) * m;
            break;
        }
        case 1: {
            Mat A = Mat::identity(ctx, 3);
            int r = rand_int(rng, 0, 2), s = rand_int(rng, 0, 2);
            if (r != s) A.at(r, s) = rand_nonzero(rng, ctx, -2, 2);
            m = embed_gl3_pair(A) * m;
            break;
        }
        default: {
            int blk = rand_int(rng, 1, 3);
            Scalar c = ctx.from_int(rand_int(rng, -2, 2));
            if (rand_int(rng, 0, 1) == 0)
                m = embed_sl2_block(ctx, blk, ctx.one(), c, ctx.zero(), ctx.one()) * m;
            else
                m = embed_sl2_block(ctx, blk, ctx.one(), ctx.zero(), c, ctx.one()) * m;
            break;
        }
        }
    }
    SympElement e = check_symplectic(m);
    if (!e.is_symplectic()) throw InternalError("random symplectic word drifted");
    return m;
}

// ---------------------------------------------------------------------------
// actions

TriVector act_gl6(const Mat& g, const TriVector& T) {
    if (g.rows() != 6 || g.cols() != 6) throw PreconditionError("action needs a 6x6 matrix");
    const auto& table = tri_table();
    TriVector out(T.ctx);
    for (std::size_t n = 0; n < kTriCount; ++n) {
        if (T.coords[n].is_zero()) continue;
        for (std::size_t m = 0; m < kTriCount; ++m) {
            Scalar minor = det3_minor(g, table[m], table[n]);
            if (!minor.is_zero())
                out.coords[m] = out.coords[m] + T.coords[n] * minor;
        }
    }
    return out;
}

TriVector act_wedge3(const SympElement& g, const TriVector& T) {
    return act_gl6(g.g, T);
}

TriVector act_pair(const SympElement& g, const TriVector& T) {
    SplitParts parts = split_components(T);
    return tv_add(act_gl6(g.g, parts.x_part), iota(g.g.apply(parts.v_part)));
}

TriVector act_derivation(const Mat& xi, const TriVector& T) {
    if (xi.rows() != 6 || xi.cols() != 6)
        throw PreconditionError("derivation action needs a 6x6 matrix");
    const auto& table = tri_table();
    TriVector out(T.ctx);
    for (std::size_t n = 0; n < kTriCount; ++n) {
        if (T.coords[n].is_zero()) continue;
        const auto& t = table[n];
        for (int slot = 0; slot < 3; ++slot)
            for (int r = 1; r <= 6; ++r) {
                const Scalar& entry = xi.at(r - 1, t[slot] - 1);
                if (entry.is_zero()) continue;
                int a = slot == 0 ? r : t[0];
                int b = slot == 1 ? r : t[1];
                int c = slot == 2 ? r : t[2];
                tv_add_term(out, a, b, c, T.coords[n] * entry);
            }
    }
    return out;
}

Vec contract_psi(const TriVector& T) {
    const FieldCtx& ctx = T.ctx;
    Vec v(6, ctx.zero());
    const auto& table = tri_table();
    for (std::size_t n = 0; n < kTriCount; ++n) {
        const Scalar& c = T.coords[n];
        if (c.is_zero()) continue;
        int i = table[n][0], j = table[n][1], l = table[n][2];
        if (int s = form_on_basis(j, l)) v[i - 1] = v[i - 1] + c * s;
        if (int s = form_on_basis(i, l)) v[j - 1] = v[j - 1] - c * s;
        if (int s = form_on_basis(i, j)) v[l - 1] = v[l - 1] + c * s;
    }
    return v;
}

TriVector iota(const Vec& v) {
    if (v.size() != 6) throw PreconditionError("section input must have 6 entries");
    const FieldCtx& ctx = v[0].ctx();
    Scalar half = ctx.one() / ctx.from_int(2);
    TriVector T(ctx);
    for (int m = 0; m < 6; ++m) {
        if (v[m].is_zero()) continue;
        Scalar c = half * v[m];
        for (int k = 0; k < 2; ++k) {
            const int* t = kSectionTriples[m][k];
            tv_add_term(T, t[0], t[1], t[2], c);
        }
    }
    return T;
}

SplitParts split_components(const TriVector& T) {
    Vec v = contract_psi(T);
    TriVector x = tv_sub(T, iota(v));
    if (!vec_is_zero(contract_psi(x)))
        throw InternalError("projection off the contraction kernel failed");
    return SplitParts{x, v};
}

// ---------------------------------------------------------------------------
// matrix-pair coordinates

ZCoords z_identify(const TriVector& T) {
    const FieldCtx& ctx = T.ctx;
    ZCoords z{-tv_coeff(T, 1, 2, 3), -tv_coeff(T, 4, 5, 6), Mat(ctx, 3, 3),
              Mat(ctx, 3, 3)};
    for (int i = 1; i <= 3; ++i) {
        z.a.at(i - 1, 0) = tv_coeff(T, 3 + i, 2, 3);
        z.a.at(i - 1, 1) = tv_coeff(T, 1, 3 + i, 3);
        z.a.at(i - 1, 2) = tv_coeff(T, 1, 2, 3 + i);
        z.b.at(i - 1, 0) = tv_coeff(T, i, 5, 6);
        z.b.at(i - 1, 1) = tv_coeff(T, 4, i, 6);
        z.b.at(i - 1, 2) = tv_coeff(T, 4, 5, i);
    }
    return z;
}

TriVector z_assemble(const ZCoords& z) {
    const FieldCtx& ctx = z.x0.ctx();
    TriVector T(ctx);
    tv_add_term(T, 1, 2, 3, -z.x0);
    tv_add_term(T, 4, 5, 6, -z.y0);
    for (int i = 1; i <= 3; ++i) {
        tv_add_term(T, 3 + i, 2, 3, z.a.at(i - 1, 0));
        tv_add_term(T, 1, 3 + i, 3, z.a.at(i - 1, 1));
        tv_add_term(T, 1, 2, 3 + i, z.a.at(i - 1, 2));
        tv_add_term(T, i, 5, 6, z.b.at(i - 1, 0));
        tv_add_term(T, 4, i, 6, z.b.at(i - 1, 1));
        tv_add_term(T, 4, 5, i, z.b.at(i - 1, 2));
    }
    return T;
}

} // namespace sp6flags
