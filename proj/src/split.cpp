#include "bhv/split.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bhv/error.hpp"

namespace bhv {

LeafCount::LeafCount(int n) : n_(n) {
  if (n < 3 || n > kMaxLeafCount) {
    throw Error(ErrorCode::kInvalidLeafCount,
                "leaf count must lie in [3, 64], got " + std::to_string(n));
  }
}

LeafMask MaskOf(std::span<const int> leaves) {
  LeafMask mask = 0;
  for (int leaf : leaves) {
    if (leaf < 1 || leaf > kMaxLeafCount) {
      throw Error(ErrorCode::kLeafOutOfRange, "leaf " + std::to_string(leaf) + " out of range");
    }
    mask |= LeafBit(leaf);
  }
  return mask;
}

LeafMask MaskOf(std::initializer_list<int> leaves) {
  return MaskOf(std::span<const int>(leaves.begin(), leaves.size()));
}

std::vector<int> LeavesOf(LeafMask mask) {
  std::vector<int> leaves;
  leaves.reserve(PopCount(mask));
  while (mask != 0) {
    leaves.push_back(__builtin_ctzll(mask) + 1);
    mask &= mask - 1;
  }
  return leaves;
}

Split Split::FromMask(LeafMask subset, LeafCount n) {
  if ((subset & ~n.full_mask()) != 0) {
    throw Error(ErrorCode::kLeafOutOfRange, "subset contains a leaf outside 1.." +
                                                std::to_string(n.value()));
  }
  LeafMask complement = ~subset & n.full_mask();
  int size = PopCount(subset);
  int other = n.value() - size;
  if (size < 2 || other < 2) {
    throw Error(ErrorCode::kSubsetTooSmall,
                "both sides of a split need at least two leaves");
  }
  if (size < other) return Split(subset, n.value());
  if (other < size) return Split(complement, n.value());
  return (subset & 1) ? Split(subset, n.value()) : Split(complement, n.value());
}

std::strong_ordering operator<=>(const Split &a, const Split &b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (a.side_ == b.side_) return std::strong_ordering::equal;
  // Equal sizes: the sorted lists first differ at the lowest differing leaf.
  LeafMask lowest = (a.side_ ^ b.side_) & (~(a.side_ ^ b.side_) + 1);
  return (a.side_ & lowest) ? std::strong_ordering::less : std::strong_ordering::greater;
}

Split MakeSplit(std::span<const int> subset, LeafCount n) {
  for (int leaf : subset) {
    if (leaf < 1 || leaf > n.value()) {
      throw Error(ErrorCode::kLeafOutOfRange,
                  "leaf " + std::to_string(leaf) + " not in 1.." + std::to_string(n.value()));
    }
  }
  return Split::FromMask(MaskOf(subset), n);
}

Split MakeSplit(std::initializer_list<int> subset, int n) {
  return MakeSplit(std::span<const int>(subset.begin(), subset.size()), LeafCount(n));
}

namespace {
void RequireSameN(const Split &a, const Split &b) {
  if (a.n() != b.n()) {
    throw Error(ErrorCode::kLeafCountMismatch, "splits over different leaf counts");
  }
}
}  // namespace

bool AreCompatible(const Split &a, const Split &b) {
  RequireSameN(a, b);
  LeafMask a1 = a.side(), a2 = a.complement(), b1 = b.side(), b2 = b.complement();
  return (a1 & b1) == 0 || (a1 & b2) == 0 || (a2 & b1) == 0 || (a2 & b2) == 0;
}

bool AreCompatibleByContainment(const Split &a, const Split &b) {
  RequireSameN(a, b);
  const Split &small = a.size() <= b.size() ? a : b;
  const Split &large = a.size() <= b.size() ? b : a;
  LeafMask A = small.side(), B = large.side(), Bc = large.complement();
  auto subset = [](LeafMask x, LeafMask y) { return (x & ~y) == 0; };
  return (A & B) == 0 || subset(A, B) || subset(A, Bc) || subset(Bc, A);
}

std::vector<Split> EnumerateSplits(LeafCount n) {
  std::vector<Split> splits;
  const int nv = n.value();
  // Gosper's hack over k-subsets, k = 2..n/2; canonical subsets kept.
  for (int k = 2; 2 * k <= nv; ++k) {
    LeafMask subset = (LeafMask{1} << k) - 1;
    while ((subset & ~n.full_mask()) == 0) {
      if (2 * k < nv || (subset & 1)) splits.push_back(Split::FromMask(subset, n));
      LeafMask low = subset & (~subset + 1);
      LeafMask ripple = subset + low;
      if (ripple == 0) break;
      subset = (((ripple ^ subset) >> 2) / low) | ripple;
    }
  }
  std::sort(splits.begin(), splits.end());
  return splits;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  if (n > kMaxLeafCount) {
    throw Error(ErrorCode::kInvalidPermutation, "permutation on more than 64 leaves");
  }
  std::vector<bool> seen(n + 1, false);
  for (int image : images_) {
    if (image < 1 || image > n || seen[image]) {
      throw Error(ErrorCode::kInvalidPermutation, "images are not a bijection on 1..n");
    }
    seen[image] = true;
  }
}

Permutation Permutation::Identity(int n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::Cycle(int n, std::initializer_list<int> cycle) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  std::vector<int> c(cycle);
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 1 || c[i] > n) {
      throw Error(ErrorCode::kInvalidPermutation, "cycle entry out of range");
    }
    images[c[i] - 1] = c[(i + 1) % c.size()];
  }
  return Permutation(std::move(images));
}

Permutation Permutation::Inverse() const {
  std::vector<int> inverse(images_.size());
  for (size_t i = 0; i < images_.size(); ++i) inverse[images_[i] - 1] = static_cast<int>(i) + 1;
  return Permutation(std::move(inverse));
}

LeafMask Permutation::Apply(LeafMask mask) const {
  LeafMask image = 0;
  for (int leaf : LeavesOf(mask)) image |= LeafBit(images_[leaf - 1]);
  return image;
}

Permutation Compose(const Permutation &sigma, const Permutation &tau) {
  if (sigma.n() != tau.n()) {
    throw Error(ErrorCode::kLeafCountMismatch, "composing permutations of different sizes");
  }
  std::vector<int> images(sigma.n());
  for (int i = 1; i <= sigma.n(); ++i) images[i - 1] = sigma(tau(i));
  return Permutation(std::move(images));
}

std::vector<Permutation> AllPermutations(int n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> all;
  do {
    all.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return all;
}

Split ApplyPermutation(const Permutation &sigma, const Split &s) {
  if (sigma.n() != s.n()) {
    throw Error(ErrorCode::kLeafCountMismatch, "permutation and split sizes differ");
  }
  return Split::FromMask(sigma.Apply(s.side()), LeafCount(s.n()));
}

}  // namespace bhv
