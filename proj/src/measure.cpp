#include "bhv/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bhv/error.hpp"

namespace bhv {

namespace {

std::string Shortest(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

}  // namespace

TreePoint TreePoint::Make(const std::vector<std::pair<Split, double>> &edges, LeafCount n,
                          std::map<int, double> leaf_lengths) {
  std::vector<Split> splits;
  for (const auto &[split, length] : edges) {
    if (!(length > 0.0)) {
      std::ostringstream os;
      os << "internal edge lengths must be positive, got " << length;
      throw Error(ErrorCode::kNonpositiveLength, os.str());
    }
    splits.push_back(split);
  }
  for (const auto &[leaf, length] : leaf_lengths) {
    if (leaf < 1 || leaf > n.value()) {
      throw Error(ErrorCode::kLeafOutOfRange, "leaf length for unknown leaf");
    }
    if (!(length >= 0.0)) {
      throw Error(ErrorCode::kNegativeLength, "leaf edge lengths must be nonnegative");
    }
  }
  Topology topology = MakeTopology(splits, n);
  if (topology.p() != static_cast<int>(edges.size())) {
    throw Error(ErrorCode::kIncompatiblePair, "the same split was given two lengths");
  }
  std::vector<double> lengths(edges.size());
  for (const auto &[split, length] : edges) {
    auto it = std::lower_bound(topology.splits().begin(), topology.splits().end(), split);
    lengths[it - topology.splits().begin()] = length;
  }
  return TreePoint(std::move(topology), std::move(lengths), std::move(leaf_lengths));
}

TreePoint TreePoint::ConePoint(LeafCount n) { return TreePoint(Topology::ConePoint(n), {}, {}); }

std::optional<double> TreePoint::LengthOf(const Split &s) const {
  const auto &splits = topology_.splits();
  auto it = std::lower_bound(splits.begin(), splits.end(), s);
  if (it == splits.end() || *it != s) return std::nullopt;
  return lengths_[it - splits.begin()];
}

double TreePoint::MinEdgeLength() const {
  if (lengths_.empty()) return std::numeric_limits<double>::infinity();
  return *std::min_element(lengths_.begin(), lengths_.end());
}

double TreePoint::Norm() const {
  double sum = 0.0;
  for (double l : lengths_) sum += l * l;
  return std::sqrt(sum);
}

TreePoint ApplyPermutation(const Permutation &sigma, const TreePoint &x) {
  std::vector<std::pair<Split, double>> edges;
  for (size_t i = 0; i < x.lengths().size(); ++i) {
    edges.emplace_back(ApplyPermutation(sigma, x.topology().splits()[i]), x.lengths()[i]);
  }
  std::map<int, double> leaf_lengths;
  for (const auto &[leaf, length] : x.leaf_lengths()) leaf_lengths[sigma(leaf)] = length;
  return TreePoint::Make(edges, LeafCount(x.n()), std::move(leaf_lengths));
}

bool IsConePoint(const TreePoint &x) { return x.p() == 0; }

bool IsOnUnitLink(const TreePoint &x, double tolerance) {
  return std::abs(x.Norm() - 1.0) <= tolerance;
}

double EuclideanBallVolume(int m, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kNonpositiveRadius, "ball radius must be positive");
  if (m < 0) throw Error(ErrorCode::kPOutOfRange, "negative dimension");
  const double half = 0.5 * m;
  return std::pow(std::numbers::pi, half) * std::pow(eps, m) / std::tgamma(half + 1.0);
}

BigRational BallVolumeCoefficient(const Topology &t) {
  BigInt denominator = BigInt(1) << (t.n() - 3 - t.p());
  return BigRational(CountRefiningOrthants(t), denominator);
}

BallVolume ComputeBallVolume(const TreePoint &x, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kNonpositiveRadius, "ball radius must be positive");
  const double min_edge = x.MinEdgeLength();
  if (!(eps < min_edge)) {
    throw Error(ErrorCode::kEpsilonTooLarge, "epsilon " + Shortest(eps) +
                                                 " is not below the minimum edge length " +
                                                 Shortest(min_edge));
  }
  BallVolume volume;
  volume.n = x.n();
  volume.p = x.p();
  volume.s_f = CountRefiningOrthants(x.topology());
  volume.coefficient = BigRational(volume.s_f, BigInt(1) << (x.n() - 3 - x.p()));
  volume.epsilon = eps;
  volume.value = volume.coefficient.convert_to<double>() * EuclideanBallVolume(x.n() - 3, eps);
  return volume;
}

VolumeBounds BallVolumeBounds(LeafCount n, int p, double eps) {
  if (p < 0 || p > n.value() - 3) {
    throw Error(ErrorCode::kPOutOfRange, "p must satisfy 0 <= p <= n-3");
  }
  const double ball = EuclideanBallVolume(n.value() - 3, eps);
  VolumeBounds bounds;
  bounds.upper_coefficient = BigRational(DoubleFactorial(2 * n.value() - 2 * p - 5),
                                         BigInt(1) << (n.value() - 3 - p));
  bounds.lower = ball;
  bounds.upper = bounds.upper_coefficient.convert_to<double>() * ball;
  return bounds;
}

namespace {

void RequireSameN(const TreePoint &a, const TreePoint &b) {
  if (a.n() != b.n()) {
    throw Error(ErrorCode::kLeafCountMismatch, "trees have different leaf counts");
  }
}

}  // namespace

std::optional<double> SameOrthantDistance(const TreePoint &a, const TreePoint &b) {
  RequireSameN(a, b);
  for (const auto &s : a.topology().splits()) {
    for (const auto &t : b.topology().splits()) {
      if (!AreCompatible(s, t)) return std::nullopt;
    }
  }
  // Merge the sorted split lists; a split missing on one side has length 0.
  const auto &sa = a.topology().splits();
  const auto &sb = b.topology().splits();
  double sum = 0.0;
  size_t i = 0, j = 0;
  while (i < sa.size() || j < sb.size()) {
    double delta;
    if (j == sb.size() || (i < sa.size() && sa[i] < sb[j])) {
      delta = a.lengths()[i++];
    } else if (i == sa.size() || sb[j] < sa[i]) {
      delta = b.lengths()[j++];
    } else {
      delta = a.lengths()[i++] - b.lengths()[j++];
    }
    sum += delta * delta;
  }
  return std::sqrt(sum);
}

double ConePathLength(const TreePoint &a, const TreePoint &b) {
  RequireSameN(a, b);
  return a.Norm() + b.Norm();
}

double DistanceUpperBound(const TreePoint &a, const TreePoint &b) {
  const double cone = ConePathLength(a, b);
  if (auto direct = SameOrthantDistance(a, b)) return std::min(*direct, cone);
  return cone;
}

}  // namespace bhv
