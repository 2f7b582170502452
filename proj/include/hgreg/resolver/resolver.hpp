#pragma once

// The blow-up resolution of the compactified total space, run on chart
// shapes. A chart stands for the local model
//   A^{d+1}(z, w, v) ⊃ {z_1...z_r = u w_1^{m_1}...w_s^{m_s}} ⊃ {w_1...w_s v_1...v_l = 0}
// and blowing up {z_a = w_b = 0} yields the two affine pieces
//   U1: z_a becomes a boundary coordinate of exponent m_b - 1, w_b/z_a keeps m_b;
//   U2: z_a/w_b stays a root coordinate, m_b drops by one.
// A boundary coordinate of exponent 0 no longer enters the equation and is
// recorded as a v-coordinate.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "hgreg/periods/scheme.hpp"

namespace hgreg {

struct Chart {
  long r = 0;
  std::vector<long> m;  // non-increasing
  long l = 0;
  bool unit = true;    // the factor u; always a unit, carried for the record
  std::string origin;  // the boundary point of the initial chart this descends from

  long s() const { return static_cast<long>(m.size()); }
  long dimension() const { return r + s() + l; }

  void normalize() { std::sort(m.begin(), m.end(), std::greater<>()); }

  void validate() const {
    if (r < 0 || l < 0) throw Error(ErrorCode::invalid_argument, "chart counts must be non-negative");
    for (long v : m)
      if (v < 1) throw Error(ErrorCode::invalid_argument, "chart exponents must be at least 1");
  }

  std::string shape() const {
    std::string out = "(r=" + std::to_string(r) + ", m={";
    for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "," : "") + std::to_string(m[i]);
    return out + "}, l=" + std::to_string(l) + ")";
  }

  bool same_shape(const Chart& o) const { return r == o.r && m == o.m && l == o.l; }
};

inline bool operator<(const Chart& a, const Chart& b) {
  return std::tie(a.r, a.m, a.l, a.origin) < std::tie(b.r, b.m, b.l, b.origin);
}
inline bool operator==(const Chart& a, const Chart& b) {
  return a.same_shape(b) && a.origin == b.origin && a.unit == b.unit;
}

enum class ChartClass { a, b, c, d, non_standard };

inline const char* to_string(ChartClass c) {
  switch (c) {
    case ChartClass::a: return "a";
    case ChartClass::b: return "b";
    case ChartClass::c: return "c";
    case ChartClass::d: return "d";
    case ChartClass::non_standard: return "non-standard";
  }
  return "?";
}

// Checked in the order d, c, b, a; (r=1, m={1}) is reported as c.
inline ChartClass classify(const Chart& c) {
  if (c.r < 1) return ChartClass::non_standard;
  if (c.s() == 0) return ChartClass::d;
  if (c.r == 1) return ChartClass::c;
  bool all_one = std::all_of(c.m.begin(), c.m.end(), [](long v) { return v == 1; });
  if (c.s() == 1 && all_one) return ChartClass::b;
  if (c.s() >= 2 && all_one) return ChartClass::a;
  return ChartClass::non_standard;
}

inline bool is_terminal(const Chart& c) {
  ChartClass k = classify(c);
  return k == ChartClass::b || k == ChartClass::c || k == ChartClass::d;
}

// Lexicographic in r, then in the exponents sorted in decreasing order (a
// proper prefix is smaller). U1 lowers r; U2 keeps r and lowers or removes a
// largest exponent, so both pieces are strictly smaller and the order is
// well founded. The sum r + sum (m_j - 1) is not monotone: U1 at m_b >= 4
// raises it, and U2 of an all-ones chart leaves it unchanged.
struct ChartMeasure {
  long r = 0;
  std::vector<long> m;

  friend bool operator<(const ChartMeasure& a, const ChartMeasure& b) {
    if (a.r != b.r) return a.r < b.r;
    return std::lexicographical_compare(a.m.begin(), a.m.end(), b.m.begin(), b.m.end());
  }
  friend bool operator==(const ChartMeasure& a, const ChartMeasure& b) { return a.r == b.r && a.m == b.m; }
};

inline ChartMeasure measure(const Chart& c) {
  ChartMeasure out{c.r, c.m};
  std::sort(out.m.begin(), out.m.end(), std::greater<>());
  return out;
}

// One boundary point per choice of disjoint root directions (with a root of
// unity nu_i for each) and pole directions; the remaining directions are
// free coordinates, padded in as v.
inline std::vector<Chart> initial_charts(const std::vector<long>& n) {
  if (n.size() < 2) throw Error(ErrorCode::invalid_argument, "need at least two exponents");
  for (long v : n)
    if (v < 1) throw Error(ErrorCode::invalid_argument, "exponents must be at least 1");
  const long D = static_cast<long>(n.size());
  std::vector<Chart> out;
  // role: 0 free, 1 root, 2 pole
  std::vector<int> role(n.size(), 0);
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == n.size()) {
      long r = std::count(role.begin(), role.end(), 1), s = std::count(role.begin(), role.end(), 2);
      if (r < 1 || s < 1) return;
      Chart base;
      base.r = r;
      base.l = D - r - s;
      for (std::size_t k = 0; k < n.size(); ++k)
        if (role[k] == 2) base.m.push_back(n[k]);
      base.normalize();
      // enumerate root choices
      std::vector<long> roots;
      for (std::size_t k = 0; k < n.size(); ++k)
        if (role[k] == 1) roots.push_back(static_cast<long>(k));
      std::vector<long> choice(roots.size(), 0);
      while (true) {
        Chart c = base;
        for (std::size_t k = 0, ri = 0; k < n.size(); ++k) {
          if (k) c.origin += " ";
          c.origin += "x" + std::to_string(k) + "=";
          if (role[k] == 1)
            c.origin += "nu^" + std::to_string(choice[ri++]);
          else
            c.origin += role[k] == 2 ? "inf" : "*";
        }
        out.push_back(c);
        std::size_t j = 0;
        for (; j < roots.size(); ++j) {
          if (++choice[j] < n[roots[j]]) break;
          choice[j] = 0;
        }
        if (j == roots.size()) break;
      }
      return;
    }
    for (int k = 0; k < 3; ++k) {
      role[i] = k;
      assign(i + 1);
    }
    role[i] = 0;
  };
  assign(0);
  return out;
}

inline std::vector<Chart> initial_charts(const SchemeDescriptor& scheme) { return initial_charts(scheme.n); }

// Blow-up along {z_a = w_b = 0}, 1-based indices into the root coordinates
// and the (non-increasing) boundary exponents.
inline std::pair<Chart, Chart> blow_up(const Chart& c, long a, long b) {
  c.validate();
  if (a < 1 || a > c.r || b < 1 || b > c.s())
    throw Error(ErrorCode::invalid_center, "center (" + std::to_string(a) + ", " + std::to_string(b) +
                                               ") outside chart " + c.shape());
  if (is_terminal(c))
    throw Error(ErrorCode::invalid_center, "chart " + c.shape() + " is already terminal");
  const long mb = c.m[b - 1];
  Chart u1 = c, u2 = c;
  // U1: z_a leaves the roots; w_b / z_a keeps m_b, z_a carries m_b - 1
  u1.r = c.r - 1;
  if (mb > 1)
    u1.m.push_back(mb - 1);
  else
    ++u1.l;
  u1.normalize();
  // U2: z_a / w_b stays a root, w_b drops to m_b - 1
  u2.m[b - 1] = mb - 1;
  if (mb == 1) {
    u2.m.erase(u2.m.begin() + (b - 1));
    ++u2.l;
  }
  u2.normalize();
  u1.origin = c.origin + " /U1";
  u2.origin = c.origin + " /U2";
  return {u1, u2};
}

struct ResolveStep {
  Chart before;
  long a = 1, b = 1;
  ChartClass matched;  // shape class of the chart that was blown up
  Chart u1, u2;
  ChartMeasure measure_before, measure_u1, measure_u2;

  nlohmann::json to_json() const {
    auto chart = [](const Chart& c) {
      return nlohmann::json{{"r", c.r}, {"m", c.m}, {"l", c.l}, {"origin", c.origin}};
    };
    auto meas = [](const ChartMeasure& m) {
      return nlohmann::json{{"r", m.r}, {"m", m.m}};
    };
    return {{"chart_before", chart(before)},
            {"center", {a, b}},
            {"rule", to_string(matched)},
            {"charts_after", {chart(u1), chart(u2)}},
            {"measure_before", meas(measure_before)},
            {"measure_after", {meas(measure_u1), meas(measure_u2)}}};
  }
};

enum class WorklistOrder { fifo, lifo };

struct ResolveResult {
  std::vector<Chart> initial;
  std::vector<ResolveStep> steps;
  std::vector<Chart> terminal;  // sorted

  std::map<ChartClass, std::size_t> class_counts() const {
    std::map<ChartClass, std::size_t> out;
    for (const auto& c : terminal) ++out[classify(c)];
    return out;
  }

  bool measure_decreasing() const {
    for (const auto& s : steps)
      if (!(s.measure_u1 < s.measure_before) || !(s.measure_u2 < s.measure_before)) return false;
    return true;
  }

  bool all_terminal_standard() const {
    return std::all_of(terminal.begin(), terminal.end(), [](const Chart& c) { return is_terminal(c); });
  }

  std::string trace_jsonl() const {
    std::string out;
    for (const auto& s : steps) out += s.to_json().dump() + "\n";
    return out;
  }
};

// Worklist rewriting: every chart that is not (b), (c) or (d) is blown up at
// z_1 and the first boundary coordinate of maximal exponent. The decrease of
// the measure is asserted at every step.
inline ResolveResult resolve(const std::vector<long>& n, std::size_t step_limit = 1'000'000,
                             WorklistOrder order = WorklistOrder::fifo) {
  ResolveResult out;
  out.initial = initial_charts(n);
  const long D = static_cast<long>(n.size());
  std::deque<Chart> work(out.initial.begin(), out.initial.end());
  while (!work.empty()) {
    Chart c;
    if (order == WorklistOrder::fifo) {
      c = work.front();
      work.pop_front();
    } else {
      c = work.back();
      work.pop_back();
    }
    if (c.dimension() != D) throw Error(ErrorCode::invalid_argument, "chart lost its dimension: " + c.shape());
    if (is_terminal(c)) {
      out.terminal.push_back(c);
      continue;
    }
    if (out.steps.size() >= step_limit)
      throw Error(ErrorCode::step_limit_exceeded, "resolution exceeded " + std::to_string(step_limit) + " steps");
    ResolveStep step;
    step.before = c;
    step.matched = classify(c);
    // m is non-increasing, so the first exponent is a maximal one
    step.a = 1;
    step.b = 1;
    std::tie(step.u1, step.u2) = blow_up(c, step.a, step.b);
    step.measure_before = measure(c);
    step.measure_u1 = measure(step.u1);
    step.measure_u2 = measure(step.u2);
    if (!(step.measure_u1 < step.measure_before) || !(step.measure_u2 < step.measure_before))
      throw Error(ErrorCode::invalid_argument, "termination measure failed to decrease at " + c.shape());
    work.push_back(step.u1);
    work.push_back(step.u2);
    out.steps.push_back(std::move(step));
  }
  std::sort(out.terminal.begin(), out.terminal.end());
  return out;
}

inline ResolveResult resolve(const SchemeDescriptor& scheme, std::size_t step_limit = 1'000'000,
                             WorklistOrder order = WorklistOrder::fifo) {
  return resolve(scheme.n, step_limit, order);
}

}  // namespace hgreg
