#pragma once

// Continuation paths in the t-plane made of straight segments and circular
// arcs, with a clearance contract against the singular points 0 and 1.

#include <vector>

#include "hgreg/numerics/complex.hpp"

namespace hgreg {

struct PathSegment {
  enum class Kind { line, arc };
  Kind kind = Kind::line;
  Complex from, to;
  // arcs: center, radius, start angle and signed sweep (ccw positive)
  Complex center;
  Real radius = 0, theta0 = 0, sweep = 0;

  Complex point(const Real& s) const {
    if (kind == Kind::line) return from + (to - from) * s;
    return center + polar(radius, theta0 + sweep * s);
  }
  Real length() const { return kind == Kind::line ? abs(to - from) : abs(sweep) * radius; }
};

inline Real distance_to_singularities(const Complex& z) { return std::min(abs(z), abs(z - Complex(Real(1)))); }

class PathSpec {
 public:
  explicit PathSpec(const Complex& start, const Real& clearance = Real(1) / 20)
      : start_(start), end_(start), clearance_(clearance) {
    if (!(clearance > 0)) throw Error(ErrorCode::invalid_argument, "clearance must be positive");
  }

  PathSpec& line_to(const Complex& p) {
    PathSegment s;
    s.kind = PathSegment::Kind::line;
    s.from = end_;
    s.to = p;
    segs_.push_back(s);
    end_ = p;
    return *this;
  }

  // Arc around center by the signed angle sweep, starting at the current end.
  PathSpec& arc(const Complex& center, const Real& sweep) {
    PathSegment s;
    s.kind = PathSegment::Kind::arc;
    s.from = end_;
    s.center = center;
    s.radius = abs(end_ - center);
    s.theta0 = arg(end_ - center);
    s.sweep = sweep;
    s.to = s.point(Real(1));
    segs_.push_back(s);
    end_ = s.to;
    return *this;
  }

  const Complex& start() const { return start_; }
  const Complex& end() const { return end_; }
  const Real& clearance() const { return clearance_; }
  const std::vector<PathSegment>& segments() const { return segs_; }

  // Smallest distance from the path to {0, 1}.
  Real min_distance() const {
    Real best = distance_to_singularities(start_);
    for (const auto& s : segs_) {
      if (s.kind == PathSegment::Kind::line) {
        for (const Complex& target : {Complex(Real(0)), Complex(Real(1))}) {
          Complex d = s.to - s.from;
          Real len2 = norm(d);
          Real u = len2 == 0 ? Real(0) : ((target - s.from).re * d.re + (target - s.from).im * d.im) / len2;
          u = std::clamp(u, Real(0), Real(1));
          best = std::min(best, abs(s.point(u) - target));
        }
      } else {
        // Dense sampling plus the analytic nearest point if it lies on the arc.
        const int samples = 256;
        for (int k = 0; k <= samples; ++k) best = std::min(best, distance_to_singularities(s.point(Real(k) / samples)));
        for (const Complex& target : {Complex(Real(0)), Complex(Real(1))}) {
          Real dc = abs(target - s.center);
          if (dc == 0) {
            best = std::min(best, s.radius);
            continue;
          }
          Real ang = arg(target - s.center);
          const Real& pi = constants().pi;
          for (int wrap = -2; wrap <= 2; ++wrap) {
            Real u = (ang + 2 * pi * wrap - s.theta0) / s.sweep;
            if (u >= 0 && u <= 1) best = std::min(best, abs(dc - s.radius));
          }
        }
      }
    }
    return best;
  }

  void validate() const {
    if (min_distance() < clearance_)
      throw Error(ErrorCode::path_clearance, "path comes closer than the clearance to 0 or 1");
  }

  bool closed() const { return abs(end_ - start_) <= tolerance(5) * (1 + abs(start_)); }

  PathSpec conjugated() const {
    PathSpec p(conj(start_), clearance_);
    for (const auto& s : segs_) {
      if (s.kind == PathSegment::Kind::line)
        p.line_to(conj(s.to));
      else
        p.arc(conj(s.center), -s.sweep);
    }
    return p;
  }

  PathSpec reversed() const {
    PathSpec p(end_, clearance_);
    for (auto it = segs_.rbegin(); it != segs_.rend(); ++it) {
      if (it->kind == PathSegment::Kind::line)
        p.line_to(it->from);
      else
        p.arc(it->center, -it->sweep);
    }
    return p;
  }

  // Concatenation; other must start where this one ends.
  PathSpec then(const PathSpec& other) const {
    PathSpec p = *this;
    for (const auto& s : other.segs_) {
      if (s.kind == PathSegment::Kind::line)
        p.line_to(s.to);
      else
        p.arc(s.center, s.sweep);
    }
    p.clearance_ = std::min(clearance_, other.clearance_);
    return p;
  }

  // Base point 1/10; straight toward t_end, with upper-half-plane semicircle
  // detours of radius 1/4 around 1 and of radius 1/10 around 0.
  static PathSpec canonical(const Complex& t_end) {
    const Real t0 = Real(1) / 10;
    const Real quarter = Real(1) / 4;
    const Real& pi = constants().pi;
    PathSpec p(Complex(t0), Real(1) / 20);
    bool real_end = t_end.im == 0;
    if (real_end && t_end.re > 1) {
      if (t_end.re - 1 < Real(1) / 20)
        throw Error(ErrorCode::path_clearance, "t_end too close to 1 for the canonical path");
      p.line_to(Complex(1 - quarter)).arc(Complex(Real(1)), -pi).line_to(t_end);
      return p;
    }
    if (real_end && t_end.re < 0) {
      if (-t_end.re < Real(1) / 20)
        throw Error(ErrorCode::path_clearance, "t_end too close to 0 for the canonical path");
      p.arc(Complex(Real(0)), pi).line_to(t_end);
      return p;
    }
    p.line_to(t_end);
    if (p.min_distance() >= p.clearance()) return p;
    // Route through the upper half plane.
    PathSpec q(Complex(t0), Real(1) / 20);
    q.line_to(Complex(Real(1) / 2, Real(1) / 2)).line_to(t_end);
    q.validate();
    return q;
  }

 private:
  Complex start_, end_;
  Real clearance_;
  std::vector<PathSegment> segs_;
};

}  // namespace hgreg
