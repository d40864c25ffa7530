#include "sp6flags/linalg.hpp"

namespace sp6flags {

Mat Mat::identity(const FieldCtx& ctx, std::size_t n) {
    Mat m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ctx.one();
    return m;
}

Mat Mat::diag(const FieldCtx& ctx, const Vec& entries) {
    Mat m(ctx, entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
    return m;
}

Mat Mat::from_rows(const FieldCtx& ctx, const std::vector<Vec>& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Mat m(ctx, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw PreconditionError("ragged row list");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw PreconditionError("matrix shape mismatch in +");
    Mat m(ctx_, r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + o.a_[k];
    return m;
}

Mat Mat::operator-(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw PreconditionError("matrix shape mismatch in -");
    Mat m(ctx_, r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - o.a_[k];
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (c_ != o.r_) throw PreconditionError("matrix shape mismatch in *");
    Mat m(ctx_, r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < o.c_; ++j)
                m.at(i, j) += aik * o.at(k, j);
        }
    return m;
}

Mat Mat::operator*(const Scalar& s) const {
    Mat m(ctx_, r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * s;
    return m;
}

Mat Mat::operator-() const {
    Mat m(ctx_, r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = -a_[k];
    return m;
}

bool Mat::operator==(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (a_[k] != o.a_[k]) return false;
    return true;
}

Mat Mat::transpose() const {
    Mat m(ctx_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

Vec Mat::apply(const Vec& v) const {
    if (v.size() != c_) throw PreconditionError("vector length mismatch in apply");
    Vec out(r_, ctx_.zero());
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if (!at(i, j).is_zero()) out[i] += at(i, j) * v[j];
    return out;
}

namespace {

// Row-reduce a copy of m; returns (echelon matrix, pivot column per pivot row,
// sign-tracking determinant accumulator valid for square full-rank inputs).
struct Echelon {
    Mat m;
    std::vector<std::size_t> pivot_cols;
    Scalar det_accum;
    bool singular_square = false;
};

Echelon row_reduce(const Mat& in) {
    Echelon e{in, {}, in.ctx().one(), false};
    Mat& m = e.m;
    std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m.at(piv, col).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != rank) {
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m.at(piv, j), m.at(rank, j));
            e.det_accum = -e.det_accum;
        }
        Scalar inv = m.at(rank, col).inverse();
        e.det_accum = e.det_accum * m.at(rank, col);
        for (std::size_t j = 0; j < cols; ++j)
            m.at(rank, j) = m.at(rank, j) * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col);
            for (std::size_t j = 0; j < cols; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
        }
        e.pivot_cols.push_back(col);
        ++rank;
    }
    return e;
}

} // namespace

Scalar Mat::det() const {
    if (r_ != c_) throw PreconditionError("determinant of a non-square matrix");
    if (r_ == 0) return ctx_.one();
    Echelon e = row_reduce(*this);
    if (e.pivot_cols.size() < r_) return ctx_.zero();
    return e.det_accum;
}

Mat Mat::inverse() const {
    if (r_ != c_) throw PreconditionError("inverse of a non-square matrix");
    // Augment with the identity and reduce.
    Mat aug(ctx_, r_, 2 * c_);
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, c_ + i) = ctx_.one();
    }
    Echelon e = row_reduce(aug);
    for (std::size_t i = 0; i < r_; ++i)
        if (i >= e.pivot_cols.size() || e.pivot_cols[i] != i)
            throw PreconditionError("matrix is singular");
    Mat inv(ctx_, r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) inv.at(i, j) = e.m.at(i, c_ + j);
    return inv;
}

std::size_t Mat::rank() const {
    if (a_.empty()) return 0;
    return row_reduce(*this).pivot_cols.size();
}

std::vector<Vec> Mat::nullspace() const {
    Echelon e = row_reduce(*this);
    std::vector<bool> is_pivot(c_, false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < c_; ++free) {
        if (is_pivot[free]) continue;
        Vec v(c_, ctx_.zero());
        v[free] = ctx_.one();
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
            v[e.pivot_cols[i]] = -e.m.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> Mat::solve(const Vec& b) const {
    if (b.size() != r_) throw PreconditionError("rhs length mismatch in solve");
    Mat aug(ctx_, r_, c_ + 1);
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, c_) = b[i];
    }
    Echelon e = row_reduce(aug);
    // Inconsistent iff some pivot lands in the rhs column.
    for (std::size_t c : e.pivot_cols)
        if (c == c_) return std::nullopt;
    Vec x(c_, ctx_.zero());
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
        x[e.pivot_cols[i]] = e.m.at(i, c_);
    return x;
}

bool Mat::is_zero() const {
    for (const Scalar& s : a_)
        if (!s.is_zero()) return false;
    return true;
}

bool Mat::is_scalar_multiple_of_identity(Scalar* value) const {
    if (r_ != c_ || r_ == 0) return false;
    const Scalar& v = at(0, 0);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) {
            if (i == j ? at(i, j) != v : !at(i, j).is_zero()) return false;
        }
    if (value) *value = v;
    return true;
}

bool Mat::is_symmetric() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = i + 1; j < c_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// vector helpers

Vec vec_add(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw PreconditionError("vector length mismatch");
    Vec out(x);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

Vec vec_sub(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw PreconditionError("vector length mismatch");
    Vec out(x);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
    return out;
}

Vec vec_scale(const Scalar& c, const Vec& x) {
    Vec out(x);
    for (Scalar& s : out) s = s * c;
    return out;
}

Scalar vec_dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size() || x.empty())
        throw PreconditionError("vector length mismatch");
    Scalar acc = x[0] * y[0];
    for (std::size_t i = 1; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

bool vec_is_zero(const Vec& v) {
    for (const Scalar& s : v)
        if (!s.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// congruence diagonalization

namespace {

Diagonalization diagonalize_impl(const Mat& G, bool allow_degenerate) {
    if (G.rows() != G.cols())
        throw PreconditionError("gram matrix must be square");
    if (!G.is_symmetric())
        throw PreconditionError("gram matrix must be symmetric");
    const FieldCtx& ctx = G.ctx();
    std::size_t n = G.rows();
    Mat A = G;
    Mat P = Mat::identity(ctx, n);

    auto add_col_row = [&](std::size_t dst, std::size_t src, const Scalar& f) {
        // simultaneous column + row operation keeping A = P^T G P
        for (std::size_t i = 0; i < n; ++i) A.at(i, dst) += f * A.at(i, src);
        for (std::size_t j = 0; j < n; ++j) A.at(dst, j) += f * A.at(src, j);
        for (std::size_t i = 0; i < n; ++i) P.at(i, dst) += f * P.at(i, src);
    };
    auto swap_col_row = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < n; ++i) std::swap(A.at(i, a), A.at(i, b));
        for (std::size_t j = 0; j < n; ++j) std::swap(A.at(a, j), A.at(b, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(P.at(i, a), P.at(i, b));
    };

    std::size_t k = 0;
    for (; k < n; ++k) {
        if (A.at(k, k).is_zero()) {
            // try to bring a nonzero diagonal entry to position k
            std::size_t j = k + 1;
            while (j < n && A.at(j, j).is_zero()) ++j;
            if (j < n) {
                swap_col_row(k, j);
            } else {
                // all remaining diagonal entries vanish; look off-diagonal
                std::size_t r = n, c = n;
                for (std::size_t i = k; i < n && r == n; ++i)
                    for (std::size_t l = i + 1; l < n; ++l)
                        if (!A.at(i, l).is_zero()) { r = i; c = l; break; }
                if (r == n) break; // remaining block is zero
                add_col_row(r, c, ctx.one()); // A(r,r) becomes 2*A(r,c) != 0
                if (r != k) swap_col_row(k, r);
            }
        }
        Scalar pivot = A.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (A.at(k, i).is_zero()) continue;
            add_col_row(i, k, -(A.at(k, i) / pivot));
        }
    }

    Diagonalization out;
    out.rank = k;
    out.transform = P;
    for (std::size_t i = 0; i < k; ++i) out.diag.push_back(A.at(i, i));

    if (k < n && !allow_degenerate)
        throw DegenerateFormError(n - k);

    // Certificate: P^T G P must equal diag(out.diag, 0...).
    Mat check = P.transpose() * G * P;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Scalar want = (i == j && i < k) ? out.diag[i] : ctx.zero();
            if (check.at(i, j) != want)
                throw InternalError("diagonalization certificate failed");
        }
    return out;
}

} // namespace

Diagonalization diagonalize_gram(const Mat& G) {
    return diagonalize_impl(G, false);
}

Diagonalization diagonalize_gram_allow_degenerate(const Mat& G) {
    return diagonalize_impl(G, true);
}

} // namespace sp6flags
