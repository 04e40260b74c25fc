// Feasible sets and Euclidean projections.
//
// A ConvexDomain is an intersection of simple sets (balls and boxes) whose
// individual projections are closed form. Projections onto intersections go
// through Dykstra's alternating projection scheme, with shortcuts for the
// common case where one exact projection already lands in every other set.

#pragma once

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace tncopt {

using Point = Eigen::VectorXd;

// Membership slack that absorbs projection round-off.
inline constexpr double kMembershipTol = 1e-9;
// Dykstra stops once a full sweep moves the iterate less than this.
inline constexpr double kDykstraTol = 1e-10;
inline constexpr int kDykstraMaxIter = 10000;

class ProjectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Ball {
  Point center;
  double radius = 1.0;
};

struct Box {
  Point lower;
  Point upper;
};

using SimpleSet = std::variant<Ball, Box>;

class ConvexDomain {
 public:
  static ConvexDomain MakeBall(Point center, double radius);
  static ConvexDomain MakeBox(Point lower, Point upper);
  static ConvexDomain MakeIntersection(Ball ball, Box box);
  // [0,1]^d intersected with the closed unit ball.
  static ConvexDomain StandardSet(int dim);

  int dim() const { return dim_; }
  const std::vector<SimpleSet>& pieces() const { return pieces_; }

  // Upper bound on max ||x - y|| over the domain.
  double diameter_bound() const;

  // Box midpoint or ball center, projected onto the domain.
  Point center_point() const;

 private:
  explicit ConvexDomain(std::vector<SimpleSet> pieces);

  std::vector<SimpleSet> pieces_;
  int dim_ = 0;
};

bool contains(const SimpleSet& set, const Point& x, double tol = kMembershipTol);
bool contains(const ConvexDomain& domain, const Point& x, double tol = kMembershipTol);

Point project(const SimpleSet& set, const Point& x);
Point project(const ConvexDomain& domain, const Point& x);

// Projection onto domain ∩ B(center, radius).
Point project_epoch(const ConvexDomain& domain, const Point& center, double radius,
                    const Point& x);

// Projection onto the intersection of `sets`: exact when one primitive
// projection already lies in all other sets, Dykstra otherwise.
Point project_intersection(std::span<const SimpleSet* const> sets, const Point& x);

// Dykstra's algorithm over an arbitrary list of simple sets. Throws
// ProjectionError when the sweep does not settle within kDykstraMaxIter.
Point dykstra(std::span<const SimpleSet* const> sets, const Point& x);

}  // namespace tncopt
