#pragma once

#include <cstddef>
#include <vector>

#include "wreath/abelian.hpp"
#include "wreath/group_ring.hpp"

namespace wreath {

/// (A, B, f_1..f_m, h): do shifts delta_i and a subgroup N <= B of rank <= h
/// exist with sum f_i^{delta_i} = 0 in A^{B/N}?
struct QspInstance {
  GroupPresentation A;
  GroupPresentation B;
  std::vector<SupportedFunction> fs;
  Int h = 0;
};

/// Throws GroupMismatch if some f_i is not a function B -> A, and
/// PreconditionViolated for negative h.
void validate(const QspInstance& inst);

/// Size of a presentation with unary-coded factors: free rank + sum of a_i.
Int presentation_size(const GroupPresentation& g);

/// size(A) + size(B) + sum size(f_i) + h.
Int instance_size(const QspInstance& inst);

/// Sum of size(f_i).
Int functions_size(const std::vector<SupportedFunction>& fs);

struct Certificate {
  std::vector<GroupElement> deltas;
  std::vector<GroupElement> subgroup_gens;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// sum of f_i^{delta_i}. PreconditionViolated on a length mismatch.
SupportedFunction shifted_sum(const std::vector<SupportedFunction>& fs, const std::vector<GroupElement>& deltas);

/// Checks sum f_i^{delta_i} = 0 modulo <gens> and rank <gens> <= h.
/// Shape errors (wrong number of shifts, elements outside B) throw
/// PreconditionViolated / GroupMismatch.
bool verify_certificate(const QspInstance& inst, const Certificate& cert);

/// Blocks of a partition of {0..m-1}; each block sorted, blocks ordered by
/// their least index.
struct ClusterPartition {
  std::vector<std::vector<std::size_t>> blocks;
  friend bool operator==(const ClusterPartition&, const ClusterPartition&) = default;
  /// Index of the block containing i.
  std::size_t block_of(std::size_t i) const;
  /// Every block of *this lies inside a block of coarser.
  bool refines(const ClusterPartition& coarser) const;
};

/// Connected components of the graph joining i and j when the images of
/// supp(f_i^{delta_i}) and supp(f_j^{delta_j}) in B/N meet. Empty functions
/// form singleton blocks.
ClusterPartition clusters(const std::vector<SupportedFunction>& fs, const std::vector<GroupElement>& deltas,
                          const Subgroup& n);

/// Adds `shift_by` to delta_i for every i in `block`. PreconditionViolated
/// unless `block` is a block of clusters(fs, deltas, n).
std::vector<GroupElement> cluster_shift(const std::vector<SupportedFunction>& fs,
                                        const std::vector<GroupElement>& deltas, const Subgroup& n,
                                        const std::vector<std::size_t>& block, const GroupElement& shift_by);

/// Re-aligns a solution so every mod-N cluster is already a cluster in B,
/// then translates each cluster so that 0 lies in its support union.
/// PreconditionViolated if (deltas, n) is not a solution.
std::vector<GroupElement> normalize_deltas(const std::vector<SupportedFunction>& fs,
                                           const std::vector<GroupElement>& deltas, const Subgroup& n);

/// { p - q : p, q in supp(f) }, deduplicated and sorted.
std::vector<GroupElement> difference_set(const SupportedFunction& f);

/// <difference_set(f) ∩ N>.
Subgroup shrink_subgroup(const SupportedFunction& f, const Subgroup& n);

/// Drops generators (from the back) that are not needed to generate the
/// same subgroup.
std::vector<GroupElement> irredundant_generators(const Subgroup& s);

}  // namespace wreath
