#ifndef SP6FLAGS_LINALG_HPP
#define SP6FLAGS_LINALG_HPP

#include <cstddef>
#include <vector>

#include "sp6flags/scalars.hpp"

namespace sp6flags {

using Vec = std::vector<Scalar>;

/// Dense matrix of Scalars over a fixed field context.  All algorithms are
/// exact (fraction-free only in the sense that Scalar arithmetic is exact).
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(const FieldCtx& ctx, std::size_t rows, std::size_t cols)
        : ctx_(ctx), r_(rows), c_(cols), a_(rows * cols, ctx.zero()) {}

    static Mat identity(const FieldCtx& ctx, std::size_t n);
    static Mat diag(const FieldCtx& ctx, const Vec& entries);
    static Mat from_rows(const FieldCtx& ctx, const std::vector<Vec>& rows);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    const FieldCtx& ctx() const { return ctx_; }

    Scalar& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator*(const Scalar& s) const;
    Mat operator-() const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const;
    Vec apply(const Vec& v) const; ///< matrix * column vector

    Scalar det() const;            ///< square only
    Mat inverse() const;           ///< throws PreconditionError if singular
    std::size_t rank() const;
    /// Basis of the right nullspace, in the deterministic echelon order.
    std::vector<Vec> nullspace() const;
    /// Solve A x = b exactly; nullopt if inconsistent.  For underdetermined
    /// systems returns the solution with free variables set to zero.
    std::optional<Vec> solve(const Vec& b) const;

    bool is_zero() const;
    bool is_scalar_multiple_of_identity(Scalar* value = nullptr) const;
    bool is_symmetric() const;

private:
    FieldCtx ctx_;
    std::size_t r_, c_;
    std::vector<Scalar> a_;
};

// Vector helpers (all require matching lengths / contexts).
Vec vec_add(const Vec& x, const Vec& y);
Vec vec_sub(const Vec& x, const Vec& y);
Vec vec_scale(const Scalar& c, const Vec& x);
Scalar vec_dot(const Vec& x, const Vec& y);
bool vec_is_zero(const Vec& v);

/// Result of symmetric congruence diagonalization: transform^T * G * transform
/// is the diagonal matrix with the given entries (certified on every call).
struct Diagonalization {
    Vec diag;      ///< nonzero diagonal entries, length = rank of G
    Mat transform; ///< invertible, square
    std::size_t rank = 0;
};

/// Diagonalize a symmetric Gram matrix by simultaneous row/column operations.
/// Works over any of the supported fields (characteristic != 2).  Throws
/// DegenerateFormError when G is singular, PreconditionError when G is not
/// symmetric, and InternalError if the certificate check fails.
Diagonalization diagonalize_gram(const Mat& G);

/// Same, but a singular G is allowed; diag holds only the rank many nonzero
/// entries and transform is still invertible.
Diagonalization diagonalize_gram_allow_degenerate(const Mat& G);

} // namespace sp6flags

#endif
