#ifndef SP6FLAGS_CENSUS_HPP
#define SP6FLAGS_CENSUS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "sp6flags/scalars.hpp"

namespace sp6flags {

/// Which invariant fibration is being counted: the 14-dimensional kernel
/// space fibered by f1, or the full split space fibered by (f1, f2).
enum class CensusLevel { X, V };

/// How the level-V fiber sizes are obtained: per point either a closed
/// character-sum formula for the number of solutions of a quadratic
/// equation, or exhaustive enumeration of the p^6 vectors.
enum class CensusMode { formula, brute };

struct CensusFiber {
    std::uint64_t f1 = 0;
    std::uint64_t f2 = 0; ///< unused (0) at level X
    unsigned long long count = 0;
    unsigned long long predicted = 0;
};

struct CensusReport {
    std::uint64_t p = 0;
    CensusLevel level = CensusLevel::X;
    CensusMode mode = CensusMode::formula;
    int workers = 1;
    /// Nonzero-invariant fibers in ascending (f1, f2) order.
    std::vector<CensusFiber> fibers;
    unsigned long long total = 0;   ///< sum over fibers (the semistable count)
    unsigned long long dropped = 0; ///< points outside every semistable fiber
    /// Level V: how many kernel points had their fiber contributions
    /// re-derived by the other counting method as a cross-check, and how
    /// many of those disagreed.  Any disagreement clears `match`.
    std::uint64_t cross_checked = 0;
    std::uint64_t cross_check_failures = 0;
    bool match = false; ///< every fiber count equals its prediction, exactly
    double elapsed_seconds = 0.0;
};

/// |Sp6(F_p)| = p^9 (p^2-1)(p^4-1)(p^6-1), and the three stabilizer orders
/// |SL3| = p^3 (p^2-1)(p^3-1), |SU3| = p^3 (p^2-1)(p^3+1),
/// |SL2| = p (p^2-1).
unsigned long long group_order_sp6(std::uint64_t p);
unsigned long long group_order_sl3(std::uint64_t p);
unsigned long long group_order_su3(std::uint64_t p);
unsigned long long group_order_sl2(std::uint64_t p);

/// Orbit-stabilizer predictions.  Level X: the fiber over f1 = i is a single
/// orbit with stabilizer SL3 when -i is a square mod p and SU3 otherwise.
/// Level V: every fiber over (f1, f2) nonzero has stabilizer SL2.
std::vector<CensusFiber> predicted_orbit_counts(std::uint64_t p, CensusLevel level);

/// Echelon basis of the 14-dimensional kernel of the contraction, reduced
/// mod p (coordinates in tri_table() order).
std::vector<std::array<std::uint64_t, 20>> kernel_basis_mod_p(std::uint64_t p);

/// Fast mod-p evaluation of f1 = -f/4 on a kernel point given by its 20
/// coordinates.  The quadratic coefficient tables are extracted once from
/// the exact implementation; tests bridge this path back to it.
std::uint64_t f1_mod_p(const std::array<std::uint64_t, 20>& coords, std::uint64_t p);

/// Fast mod-p Gram matrix of the quadratic form v -> f2((x, v)).
std::array<std::array<std::uint64_t, 6>, 6>
f2_gram_mod_p(const std::array<std::uint64_t, 20>& coords, std::uint64_t p);

/// Value counts [N(q = 0), N(q = 1), ..., N(q = p-1)] of a symmetric mod-p
/// Gram matrix on F_p^6: closed formula via congruent diagonalization,
/// radical splitting and the standard character sums; the counts are
/// verified to sum to p^6.  `quadric_value_counts_brute` enumerates instead.
std::vector<unsigned long long>
quadric_value_counts(const std::array<std::array<std::uint64_t, 6>, 6>& G,
                     std::uint64_t p);
std::vector<unsigned long long>
quadric_value_counts_brute(const std::array<std::array<std::uint64_t, 6>, 6>& G,
                           std::uint64_t p);

/// Scans all p^14 kernel points, tallying f1 values.  OpenMP-parallel over
/// `workers` contiguous index ranges with an ordered merge, so results are
/// identical for every worker count.  p = 3 by default; p = 5 only with
/// `extended` (a deliberate long run), larger p refused (BudgetError).
CensusReport count_X_fibers(std::uint64_t p, int workers = 1, bool extended = false);

/// Straightforward single-threaded rescan (index decoding and full
/// recomputation per point, no incremental updates); kept as the reference
/// the parallel kernel is tested and benchmarked against.
CensusReport count_X_fibers_reference(std::uint64_t p, bool extended = false);

/// Level-V census: for every semistable kernel point, adds the number of
/// 6-dim components with f2 = t to the fiber (f1, t).  In formula mode a
/// deterministic `sample_rate` fraction of the points (selected by hashing
/// the index with `seed`) is re-counted by brute force; in brute mode every
/// semistable point is enumerated and the formula is evaluated alongside as
/// the cross-check.  A disagreement clears `match` and is reported, never
/// repaired.  Budget policy as for count_X_fibers, except brute mode is
/// only in budget at p = 3.
CensusReport count_V_fibers(std::uint64_t p, CensusMode mode = CensusMode::formula,
                            int workers = 1, unsigned seed = 0,
                            double sample_rate = 0.01, bool extended = false);

/// Single-threaded formula-mode reference, mirroring count_X_fibers_reference.
CensusReport count_V_fibers_reference(std::uint64_t p, bool extended = false);

} // namespace sp6flags

#endif
