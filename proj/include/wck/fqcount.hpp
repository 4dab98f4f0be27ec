#pragma once

#include <cstdint>
#include <map>

#include "wck/exactnum.hpp"
#include "wck/lattice.hpp"
#include "wck/quiver.hpp"

namespace wck {

/// Enumeration guard: at most this many matrix tuples per count.
inline constexpr std::uint64_t kMaxTuples = 100'000'000;

/// q ∈ {2, 3, 5, 7}.
bool supported_prime(long q);

/// Tuples of matrices over F_q on the reduced quiver satisfying every relation.
/// Throws Error(kTooLarge), or Error(kInvalidArgument) for an unsupported q or a
/// relation coefficient with q in its denominator.
std::uint64_t count_reps(const QPData& qp, const DimVector& d, long q);

/// Those tuples with no subrepresentation d' where Im(Z(d)·conj Z(d')) < 0.
/// Throws Error(kTooLarge) as count_reps, and also when Σdᵢ > 5.
std::uint64_t count_semistable(const QPData& qp, const DimVector& d, long q, const CentralCharge& z);

/// Both counts from one pass.
struct FqCounts {
  std::uint64_t reps = 0;
  std::uint64_t semistable = 0;
};
FqCounts count_both(const QPData& qp, const DimVector& d, long q, const CentralCharge& z);

/// |GL_n(F_q)| by enumeration. Throws Error(kTooLarge) beyond the guard.
std::uint64_t count_gl(int n, long q);

/// ratfunc_eval(f, q) == count for every entry. Evaluation errors propagate.
bool verify_poly(const RatFunc& f, const std::map<long, std::uint64_t>& counts);

/// The polynomial in L = v² whose value at the largest q has balanced base-q
/// digits, checked against every other count.
/// Throws Error(kFitFailed) when some count disagrees.
RatFunc fit_class(const std::map<long, std::uint64_t>& counts);

/// Class table entries [R(J_{W,I},d)] for every d in the truncation, fitted from
/// count_reps at the given primes.
ClassTable fit_class_table(const QPData& qp, const Truncation& trunc, const std::vector<long>& primes);

/// Entries [R_Z(J_{W,I},d)] fitted from count_semistable in the same way.
ClassTable fit_semistable_table(const QPData& qp, const Truncation& trunc, const std::vector<long>& primes,
                                const CentralCharge& z);

}  // namespace wck
