#pragma once

namespace dyadic {

// A point (x1, x2) = (<w>, <w^p>) of the Bellman domain.
struct DomainPoint {
  double x1 = 1.0;
  double x2 = 1.0;

  friend bool operator==(const DomainPoint&, const DomainPoint&) = default;
};

inline DomainPoint midpoint(const DomainPoint& a, const DomainPoint& b) {
  return {(a.x1 + b.x1) / 2, (a.x2 + b.x2) / 2};
}

// (1 - s) a + s b
inline DomainPoint lerp(const DomainPoint& a, const DomainPoint& b, double s) {
  return {a.x1 + s * (b.x1 - a.x1), a.x2 + s * (b.x2 - a.x2)};
}

}  // namespace dyadic
