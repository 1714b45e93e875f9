#ifndef BHV_MEASURE_HPP_
#define BHV_MEASURE_HPP_

// Points of tree space and the local volume of small balls around them.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bhv/topology.hpp"

namespace bhv {

using BigRational = boost::multiprecision::cpp_rational;

// A topology with a strictly positive length on each of its internal edges.
// Leaf edge lengths ride along as metadata; they take no part in coordinates,
// norms or distances.
class TreePoint {
 public:
  // Throws NonpositiveLength for a length <= 0 (or NaN).
  static TreePoint Make(const std::vector<std::pair<Split, double>> &edges, LeafCount n,
                        std::map<int, double> leaf_lengths = {});
  static TreePoint ConePoint(LeafCount n);

  int n() const { return topology_.n(); }
  int p() const { return topology_.p(); }
  const Topology &topology() const { return topology_; }
  // Aligned with topology().splits().
  const std::vector<double> &lengths() const { return lengths_; }
  std::optional<double> LengthOf(const Split &s) const;
  const std::map<int, double> &leaf_lengths() const { return leaf_lengths_; }
  double MinEdgeLength() const;
  // Euclidean norm of the internal edge length vector, the distance to the
  // cone point.
  double Norm() const;

  friend bool operator==(const TreePoint &, const TreePoint &) = default;

 private:
  TreePoint(Topology topology, std::vector<double> lengths, std::map<int, double> leaf_lengths)
      : topology_(std::move(topology)),
        lengths_(std::move(lengths)),
        leaf_lengths_(std::move(leaf_lengths)) {}
  Topology topology_;
  std::vector<double> lengths_;
  std::map<int, double> leaf_lengths_;
};

TreePoint ApplyPermutation(const Permutation &sigma, const TreePoint &x);

bool IsConePoint(const TreePoint &x);
// True when x lies on the unit sphere about the cone point (to `tolerance`).
bool IsOnUnitLink(const TreePoint &x, double tolerance = 1e-12);

// Volume of the radius-eps ball in R^m: pi^(m/2) eps^m / Gamma(m/2 + 1).
double EuclideanBallVolume(int m, double eps);

struct BallVolume {
  double value;
  int n;
  int p;
  BigInt s_f;
  // s_f / 2^(n-3-p), kept exact.
  BigRational coefficient;
  double epsilon;
};

// Volume of the eps-ball about x. Valid only while eps is below every edge
// length of x, otherwise throws EpsilonTooLarge.
BallVolume ComputeBallVolume(const TreePoint &x, double eps);

// The ball volume coefficient for a face: s(F) / 2^(n-3-p).
BigRational BallVolumeCoefficient(const Topology &t);

struct VolumeBounds {
  double lower;
  double upper;
  BigRational upper_coefficient;
};

// A_{n-3}(eps) and (2n-2p-5)!! 2^p / 2^(n-3) A_{n-3}(eps). Throws POutOfRange.
VolumeBounds BallVolumeBounds(LeafCount n, int p, double eps);

// Length of the straight segment between a and b in a closed orthant holding
// both, when one exists.
std::optional<double> SameOrthantDistance(const TreePoint &a, const TreePoint &b);
// Length of the path a -> cone point -> b.
double ConePathLength(const TreePoint &a, const TreePoint &b);
// min(same-orthant segment, cone path); never below the geodesic distance.
double DistanceUpperBound(const TreePoint &a, const TreePoint &b);

}  // namespace bhv

#endif  // BHV_MEASURE_HPP_
