#include "tncopt/geometry.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace tncopt {
namespace {

int set_dim(const SimpleSet& set) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return static_cast<int>(s.center.size());
        } else {
          return static_cast<int>(s.lower.size());
        }
      },
      set);
}

void check_dim(int expected, const Point& x) {
  if (x.size() != expected) {
    throw std::invalid_argument("dimension mismatch: domain has d=" + std::to_string(expected) +
                                ", point has d=" + std::to_string(x.size()));
  }
}

void validate(const Ball& b) {
  if (b.center.size() < 1) throw std::invalid_argument("ball needs dimension >= 1");
  if (!(b.radius > 0.0) || !std::isfinite(b.radius)) {
    throw std::invalid_argument("ball radius must be positive and finite");
  }
  if (!b.center.allFinite()) throw std::invalid_argument("ball center must be finite");
}

void validate(const Box& b) {
  if (b.lower.size() < 1 || b.lower.size() != b.upper.size()) {
    throw std::invalid_argument("box bounds must have matching dimension >= 1");
  }
  if (!b.lower.allFinite() || !b.upper.allFinite()) {
    throw std::invalid_argument("box bounds must be finite");
  }
  if ((b.lower.array() > b.upper.array()).any()) {
    throw std::invalid_argument("box is empty: lower > upper in some coordinate");
  }
}

// Exact projections for the two primitive shapes.
Point project_ball(const Ball& b, const Point& x) {
  Point diff = x - b.center;
  const double n = diff.norm();
  if (n <= b.radius) return x;
  return b.center + diff * (b.radius / n);
}

Point project_box(const Box& b, const Point& x) {
  return x.cwiseMax(b.lower).cwiseMin(b.upper);
}

bool all_contain(std::span<const SimpleSet* const> sets, const Point& x, std::size_t skip) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i != skip && !contains(*sets[i], x)) return false;
  }
  return true;
}

}  // namespace

ConvexDomain::ConvexDomain(std::vector<SimpleSet> pieces) : pieces_(std::move(pieces)) {
  dim_ = set_dim(pieces_.front());
  for (const auto& p : pieces_) {
    if (set_dim(p) != dim_) throw std::invalid_argument("domain pieces disagree on dimension");
  }
}

ConvexDomain ConvexDomain::MakeBall(Point center, double radius) {
  Ball b{std::move(center), radius};
  validate(b);
  return ConvexDomain({SimpleSet{std::move(b)}});
}

ConvexDomain ConvexDomain::MakeBox(Point lower, Point upper) {
  Box b{std::move(lower), std::move(upper)};
  validate(b);
  return ConvexDomain({SimpleSet{std::move(b)}});
}

ConvexDomain ConvexDomain::MakeIntersection(Ball ball, Box box) {
  validate(ball);
  validate(box);
  if (ball.center.size() != box.lower.size()) {
    throw std::invalid_argument("ball and box dimensions differ");
  }
  // Nonempty iff the box point closest to the ball center is inside the ball.
  const Point nearest = project_box(box, ball.center);
  if ((nearest - ball.center).norm() > ball.radius + kMembershipTol) {
    throw std::invalid_argument("ball and box do not intersect");
  }
  return ConvexDomain({SimpleSet{std::move(ball)}, SimpleSet{std::move(box)}});
}

ConvexDomain ConvexDomain::StandardSet(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  return MakeIntersection(Ball{Point::Zero(dim), 1.0},
                          Box{Point::Zero(dim), Point::Ones(dim)});
}

double ConvexDomain::diameter_bound() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) {
    const double d = std::visit(
        [](const auto& s) -> double {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Ball>) {
            return 2.0 * s.radius;
          } else {
            return (s.upper - s.lower).norm();
          }
        },
        p);
    best = std::min(best, d);
  }
  return best;
}

Point ConvexDomain::center_point() const {
  // Prefer the box midpoint: for S* it sits inside the orthant.
  for (const auto& p : pieces_) {
    if (const auto* box = std::get_if<Box>(&p)) {
      return project(*this, 0.5 * (box->lower + box->upper));
    }
  }
  return std::get<Ball>(pieces_.front()).center;
}

bool contains(const SimpleSet& set, const Point& x, double tol) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          check_dim(static_cast<int>(s.center.size()), x);
          return (x - s.center).norm() <= s.radius + tol;
        } else {
          check_dim(static_cast<int>(s.lower.size()), x);
          return ((x.array() >= s.lower.array() - tol) && (x.array() <= s.upper.array() + tol))
              .all();
        }
      },
      set);
}

bool contains(const ConvexDomain& domain, const Point& x, double tol) {
  check_dim(domain.dim(), x);
  return std::all_of(domain.pieces().begin(), domain.pieces().end(),
                     [&](const SimpleSet& s) { return contains(s, x, tol); });
}

Point project(const SimpleSet& set, const Point& x) {
  return std::visit(
      [&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ball>) {
          check_dim(static_cast<int>(s.center.size()), x);
          return project_ball(s, x);
        } else {
          check_dim(static_cast<int>(s.lower.size()), x);
          return project_box(s, x);
        }
      },
      set);
}

Point project(const ConvexDomain& domain, const Point& x) {
  check_dim(domain.dim(), x);
  std::array<const SimpleSet*, 4> refs{};
  std::size_t n = 0;
  for (const auto& p : domain.pieces()) refs[n++] = &p;
  return project_intersection(std::span<const SimpleSet* const>(refs.data(), n), x);
}

Point project_epoch(const ConvexDomain& domain, const Point& center, double radius,
                    const Point& x) {
  check_dim(domain.dim(), x);
  check_dim(domain.dim(), center);
  if (!(radius > 0.0)) throw std::invalid_argument("epoch radius must be positive");
  if (!contains(domain, center)) throw std::invalid_argument("epoch center outside the domain");

  const SimpleSet epoch_ball{Ball{center, radius}};
  std::array<const SimpleSet*, 4> refs{};
  std::size_t n = 0;
  for (const auto& p : domain.pieces()) refs[n++] = &p;
  refs[n++] = &epoch_ball;
  return project_intersection(std::span<const SimpleSet* const>(refs.data(), n), x);
}

Point project_intersection(std::span<const SimpleSet* const> sets, const Point& x) {
  if (sets.size() == 1) return project(*sets[0], x);
  if (all_contain(sets, x, sets.size())) return x;
  // A projection onto a superset that lands inside the intersection is the
  // projection onto the intersection.
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Point y = project(*sets[i], x);
    if (all_contain(sets, y, i)) return y;
  }
  return dykstra(sets, x);
}

Point dykstra(std::span<const SimpleSet* const> sets, const Point& x) {
  if (sets.empty()) return x;
  std::vector<Point> increments(sets.size(), Point::Zero(x.size()));
  Point current = x;
  for (int iter = 0; iter < kDykstraMaxIter; ++iter) {
    const Point sweep_start = current;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const Point shifted = current + increments[i];
      Point next = project(*sets[i], shifted);
      increments[i] = shifted - next;
      current = std::move(next);
    }
    if ((current - sweep_start).norm() < kDykstraTol) return current;
  }
  throw ProjectionError("Dykstra projection did not converge in " +
                        std::to_string(kDykstraMaxIter) + " sweeps");
}

}  // namespace tncopt
