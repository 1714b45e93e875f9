#ifndef BHV_SPLIT_HPP_
#define BHV_SPLIT_HPP_

// Bipartitions of the leaf set {1,...,n} and the compatibility relation.
//
// A split is stored as a bitmask over at most 64 leaves (bit i-1 is leaf i).
// Only the canonical side is kept: the smaller side of the bipartition, or, when
// both sides have n/2 leaves, the side containing leaf 1. The complement is
// always derived.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace bhv {

using LeafMask = std::uint64_t;

inline constexpr int kMaxLeafCount = 64;

// Number of leaves n, validated to lie in [3, 64].
class LeafCount {
 public:
  explicit LeafCount(int n);
  int value() const { return n_; }
  LeafMask full_mask() const {
    return n_ == 64 ? ~LeafMask{0} : (LeafMask{1} << n_) - 1;
  }
  friend bool operator==(LeafCount, LeafCount) = default;

 private:
  int n_;
};

LeafMask MaskOf(std::span<const int> leaves);
LeafMask MaskOf(std::initializer_list<int> leaves);
std::vector<int> LeavesOf(LeafMask mask);
inline int PopCount(LeafMask mask) { return __builtin_popcountll(mask); }
inline LeafMask LeafBit(int leaf) { return LeafMask{1} << (leaf - 1); }

class Split {
 public:
  // Canonicalizes the bipartition {subset, complement}. Throws
  // SubsetTooSmall when either side has fewer than two leaves.
  static Split FromMask(LeafMask subset, LeafCount n);

  LeafMask side() const { return side_; }
  LeafMask complement() const { return ~side_ & LeafCount(n_).full_mask(); }
  int n() const { return n_; }
  int size() const { return PopCount(side_); }
  bool contains(int leaf) const { return (side_ & LeafBit(leaf)) != 0; }
  std::vector<int> leaves() const { return LeavesOf(side_); }

  friend bool operator==(const Split &, const Split &) = default;
  // Orders by (|side|, lexicographic sorted side); splits of different leaf
  // counts order by n first.
  friend std::strong_ordering operator<=>(const Split &a, const Split &b);

 private:
  Split(LeafMask side, int n) : side_(side), n_(n) {}
  LeafMask side_;
  int n_;
};

Split MakeSplit(std::span<const int> subset, LeafCount n);
Split MakeSplit(std::initializer_list<int> subset, int n);

// True iff one of A∩B, A∩B^c, A^c∩B, A^c∩B^c is empty.
bool AreCompatible(const Split &a, const Split &b);
// The same relation evaluated through the size-ordered containment form
// (A∩B = ∅, A ⊆ B, A ⊆ B^c or B^c ⊆ A with |A| ≤ |B|).
bool AreCompatibleByContainment(const Split &a, const Split &b);

// All canonical splits of [n], ordered by (|side|, lexicographic side).
std::vector<Split> EnumerateSplits(LeafCount n);

// A bijection of {1,...,n}; images()[i-1] is the image of leaf i.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation Identity(int n);
  // Cycle notation on 1-based leaves, e.g. Cycle(6, {1, 6}) is the
  // transposition exchanging leaves 1 and 6.
  static Permutation Cycle(int n, std::initializer_list<int> cycle);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int leaf) const { return images_[leaf - 1]; }
  const std::vector<int> &images() const { return images_; }
  Permutation Inverse() const;
  LeafMask Apply(LeafMask mask) const;

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &, const Permutation &) = default;

 private:
  std::vector<int> images_;
};

// (sigma ∘ tau)(i) = sigma(tau(i)).
Permutation Compose(const Permutation &sigma, const Permutation &tau);
// All n! permutations in lexicographic order of images.
std::vector<Permutation> AllPermutations(int n);

Split ApplyPermutation(const Permutation &sigma, const Split &s);

}  // namespace bhv

#endif  // BHV_SPLIT_HPP_
