#pragma once

/**
 * @file saturate.hpp
 * @brief Truncated greedy construction of saturating sets in a projective plane.
 *
 * A point is covered by a running set S when it belongs to S or lies on a line
 * meeting S in at least two points; S is saturating once every point is
 * covered. The construction starts from two seed points (leaving exactly q^2
 * uncovered points), adds one point per step until at most xi points remain
 * uncovered, then finishes by adding one point for every pair of leftovers.
 *
 * Two step rules are provided:
 *  - skew-line rule: take the line disjoint from S carrying the fewest
 *    uncovered points, then add its point that covers the most new points;
 *  - plain greedy: add the point of the plane that covers the most new points.
 * Ties always go to the smallest index, so every run is deterministic.
 */

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "satset/errors.hpp"
#include "satset/geometry.hpp"

namespace satset {

enum class Strategy { Nagy, Plain };

inline const char* strategy_name(Strategy s) { return s == Strategy::Nagy ? "nagy" : "plain"; }

/// One greedy step. `i` is |S| before the step.
struct StepLog {
  std::uint64_t i = 0;
  std::optional<LineId> line;
  bool skew_available = false;
  PointId point = 0;
  std::uint64_t r_before = 0;
  std::uint64_t r_after = 0;
  // r_before * (1 - i(q-1)/(q(q+1))), reduced.
  std::int64_t bound_num = 0;
  std::int64_t bound_den = 1;

  bool within_bound() const {
    return static_cast<std::int64_t>(r_after) * bound_den <= bound_num;
  }
};

/// Exact value of r * (1 - i(q-1)/(q(q+1))) as a reduced fraction.
inline std::pair<std::int64_t, std::int64_t> step_bound(std::uint64_t r, std::uint64_t i, std::uint32_t q) {
  const std::int64_t den = std::int64_t(q) * (q + 1);
  std::int64_t num = std::int64_t(r) * (den - std::int64_t(i) * (q - 1));
  const std::int64_t g = std::gcd(num, den);
  return {num / (g ? g : 1), den / (g ? g : 1)};
}

/// Running set S together with incremental secant and coverage counters.
class CoverageState {
 public:
  explicit CoverageState(const PlaneModel& plane)
      : plane_(&plane),
        in_set_(plane.num_points(), 0),
        covered_(plane.num_points(), 0),
        secants_(plane.num_lines(), 0),
        uncovered_on_(plane.num_lines(), plane.line_size()),
        uncovered_(plane.num_points()) {}

  const PlaneModel& plane() const noexcept { return *plane_; }
  std::span<const PointId> chosen() const noexcept { return set_; }
  std::size_t size() const noexcept { return set_.size(); }
  std::uint64_t uncovered_count() const noexcept { return uncovered_; }
  bool saturated() const noexcept { return uncovered_ == 0; }
  bool in_set(PointId p) const { return in_set_[p] != 0; }
  bool covered(PointId p) const { return covered_[p] != 0; }
  /// |line ∩ S|
  std::uint32_t secant_count(LineId line) const { return secants_[line]; }
  /// |line ∩ R|
  std::uint32_t uncovered_on(LineId line) const { return uncovered_on_[line]; }

  /// Number of currently uncovered points that adding `p` would cover.
  std::uint64_t gain(PointId p) const {
    const std::uint64_t self = covered_[p] ? 0 : 1;
    std::uint64_t total = self;
    for (LineId L : plane_->lines_through(p))
      if (secants_[L] == 1) total += uncovered_on_[L] - self;
    return total;
  }

  void add(PointId p) {
    if (p >= plane_->num_points()) throw DomainError("point " + std::to_string(p) + " out of range");
    if (in_set_[p]) throw DomainError("point " + std::to_string(p) + " already chosen");
    set_.push_back(p);
    in_set_[p] = 1;
    cover(p);
    for (LineId L : plane_->lines_through(p)) {
      if (++secants_[L] != 2) continue;
      for (PointId x : plane_->points_on(L)) cover(x);
    }
  }

  std::vector<PointId> uncovered_points() const {
    std::vector<PointId> out;
    for (PointId p = 0; p < plane_->num_points(); ++p)
      if (!covered_[p]) out.push_back(p);
    return out;
  }

 private:
  void cover(PointId x) {
    if (covered_[x]) return;
    covered_[x] = 1;
    --uncovered_;
    for (LineId M : plane_->lines_through(x)) --uncovered_on_[M];
  }

  const PlaneModel* plane_;
  std::vector<PointId> set_;
  std::vector<std::uint8_t> in_set_;
  std::vector<std::uint8_t> covered_;
  std::vector<std::uint32_t> secants_;
  std::vector<std::uint32_t> uncovered_on_;
  std::uint64_t uncovered_;
};

/// Seeds S with two points (canonical indices 0 and 1 by default).
inline CoverageState init_state(const PlaneModel& plane, std::optional<std::pair<PointId, PointId>> seeds = {}) {
  const auto [a, b] = seeds.value_or(std::pair<PointId, PointId>{0, 1});
  if (a == b) throw SamePoint("seed points must be distinct");
  if (a >= plane.num_points() || b >= plane.num_points()) throw DomainError("seed point out of range");
  CoverageState state(plane);
  state.add(a);
  state.add(b);
  return state;
}

namespace detail {

inline StepLog finish_step(CoverageState& state, PointId point, std::optional<LineId> line, bool skew) {
  StepLog log;
  log.i = state.size();
  log.line = line;
  log.skew_available = skew;
  log.point = point;
  log.r_before = state.uncovered_count();
  state.add(point);
  log.r_after = state.uncovered_count();
  std::tie(log.bound_num, log.bound_den) = step_bound(log.r_before, log.i, state.plane().order());
  return log;
}

}  // namespace detail

/// Adds the point of the plane covering the most uncovered points.
inline StepLog plain_greedy_step(CoverageState& state) {
  if (state.saturated()) throw AlreadySaturating("no uncovered points remain");
  const PlaneModel& plane = state.plane();
  PointId best = 0;
  std::uint64_t best_gain = 0;
  bool found = false;
  for (PointId p = 0; p < plane.num_points(); ++p) {
    if (state.in_set(p)) continue;
    const std::uint64_t g = state.gain(p);
    if (!found || g > best_gain) {
      best = p;
      best_gain = g;
      found = true;
    }
  }
  return detail::finish_step(state, best, std::nullopt, false);
}

/// Skew-line step; falls back to plain_greedy_step when S meets every line.
inline StepLog nagy_step(CoverageState& state) {
  if (state.saturated()) throw AlreadySaturating("no uncovered points remain");
  const PlaneModel& plane = state.plane();
  std::optional<LineId> skew;
  std::uint32_t fewest = 0;
  for (LineId L = 0; L < plane.num_lines(); ++L) {
    if (state.secant_count(L) != 0) continue;
    if (!skew || state.uncovered_on(L) < fewest) {
      skew = L;
      fewest = state.uncovered_on(L);
    }
  }
  if (!skew) return plain_greedy_step(state);

  const auto pts = plane.points_on(*skew);
  PointId best = pts.front();
  std::uint64_t best_gain = state.gain(best);
  for (PointId p : pts.subspan(1)) {
    const std::uint64_t g = state.gain(p);
    if (g > best_gain) {
      best = p;
      best_gain = g;
    }
  }
  return detail::finish_step(state, best, skew, true);
}

struct FinishReport {
  std::size_t added = 0;
  // Pairs for which no covering intersection point existed.
  std::size_t fallbacks = 0;
};

/**
 * Completes S to a saturating set, adding at most ceil(|R|/2) points.
 *
 * For the two smallest uncovered points P < Q, adds X = (P s1) ∩ (Q s2) for the
 * first pair s1 != s2 of S (ascending indices) with X outside {P, Q}; X then
 * puts P on the secant through s1 and Q on the secant through s2. A single
 * leftover P gets the smallest free point on the line joining it to the
 * smallest point of S.
 */
inline FinishReport finish_pairing(CoverageState& state) {
  if (state.size() < 2) throw DomainError("pairing needs at least two chosen points");
  const PlaneModel& plane = state.plane();
  FinishReport report;
  PointId cursor = 0;
  auto next_uncovered = [&](PointId from) -> std::optional<PointId> {
    for (PointId p = from; p < plane.num_points(); ++p)
      if (!state.covered(p)) return p;
    return std::nullopt;
  };

  while (state.uncovered_count() >= 2) {
    const PointId P = *next_uncovered(cursor);
    const PointId Q = *next_uncovered(P + 1);
    cursor = P;
    std::vector<PointId> base(state.chosen().begin(), state.chosen().end());
    std::sort(base.begin(), base.end());

    std::optional<PointId> pick;
    for (std::size_t a = 0; a < base.size() && !pick; ++a) {
      const LineId l1 = plane.line_through(P, base[a]);
      for (std::size_t b = 0; b < base.size(); ++b) {
        if (a == b) continue;
        const LineId l2 = plane.line_through(Q, base[b]);
        if (l1 == l2) continue;
        const PointId X = plane.meet(l1, l2);
        if (X == P || X == Q || state.in_set(X)) continue;
        pick = X;
        break;
      }
    }
    if (pick) {
      state.add(*pick);
    } else {
      state.add(P);
      ++report.fallbacks;
    }
    ++report.added;
  }

  if (state.uncovered_count() == 1) {
    const PointId P = *next_uncovered(cursor);
    const PointId s = *std::min_element(state.chosen().begin(), state.chosen().end());
    for (PointId X : plane.points_on(plane.line_through(P, s))) {
      if (X == P || state.in_set(X)) continue;
      state.add(X);
      break;
    }
    ++report.added;
  }
  return report;
}

struct SaturationCheck {
  bool saturating = false;
  std::optional<PointId> witness;  // an uncovered point when not saturating

  explicit operator bool() const noexcept { return saturating; }
};

/// Direct check of the saturating property, independent of CoverageState.
inline SaturationCheck verify_saturating(const PlaneModel& plane, std::span<const PointId> set) {
  std::vector<std::uint8_t> mark(plane.num_points(), 0);
  for (PointId p : set) {
    if (p >= plane.num_points()) throw DomainError("point " + std::to_string(p) + " out of range");
    mark[p] = 1;
  }
  std::vector<std::uint8_t> ok(mark);
  for (LineId L = 0; L < plane.num_lines(); ++L) {
    const auto pts = plane.points_on(L);
    unsigned hits = 0;
    for (PointId x : pts) hits += mark[x];
    if (hits >= 2)
      for (PointId x : pts) ok[x] = 1;
  }
  for (PointId p = 0; p < plane.num_points(); ++p)
    if (!ok[p]) return {false, p};
  return {true, std::nullopt};
}

struct RunOptions {
  double xi = 1.0;
  Strategy strategy = Strategy::Nagy;
  std::optional<std::pair<PointId, PointId>> seeds;
};

struct RunResult {
  std::vector<PointId> final_set;
  std::size_t size = 0;
  std::vector<StepLog> trajectory;
  double xi_used = 0;
  std::size_t seed_count = 0;
  std::size_t k_executed = 0;
  std::size_t finish_added = 0;
  std::size_t pairing_fallbacks = 0;
  std::uint64_t r_at_truncation = 0;
  bool verified = false;
};

/// Greedy steps until at most xi points are uncovered, then finish_pairing.
inline RunResult run_truncated(const PlaneModel& plane, const RunOptions& options) {
  if (!(options.xi >= 1.0)) throw DomainError("xi must be at least 1");
  CoverageState state = init_state(plane, options.seeds);
  RunResult result;
  result.xi_used = options.xi;
  result.seed_count = state.size();
  while (static_cast<long double>(state.uncovered_count()) > static_cast<long double>(options.xi)) {
    result.trajectory.push_back(options.strategy == Strategy::Nagy ? nagy_step(state) : plain_greedy_step(state));
  }
  result.k_executed = result.trajectory.size();
  result.r_at_truncation = state.uncovered_count();
  const FinishReport finish = finish_pairing(state);
  result.finish_added = finish.added;
  result.pairing_fallbacks = finish.fallbacks;
  result.final_set.assign(state.chosen().begin(), state.chosen().end());
  result.size = result.final_set.size();
  result.verified = verify_saturating(plane, result.final_set).saturating;
  return result;
}

inline RunResult run_truncated(const PlaneModel& plane, double xi, Strategy strategy = Strategy::Nagy) {
  return run_truncated(plane, RunOptions{xi, strategy, std::nullopt});
}

struct OracleResult {
  std::size_t size = 0;
  std::vector<PointId> example;
};

/// Smallest saturating set by size-increasing subset enumeration.
/// Throws ResourceLimit if the plane has more than `max_points` points.
inline OracleResult exhaustive_min_saturating(const PlaneModel& plane, std::uint32_t max_points = 31) {
  const std::uint32_t v = plane.num_points();
  if (v > max_points || v > 64)
    throw ResourceLimit("exhaustive search over " + std::to_string(v) + " points exceeds cap " +
                        std::to_string(std::min<std::uint32_t>(max_points, 64)));
  const std::uint64_t all = v == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << v) - 1;
  std::vector<std::uint64_t> masks(plane.num_lines(), 0);
  for (LineId L = 0; L < plane.num_lines(); ++L)
    for (PointId x : plane.points_on(L)) masks[L] |= std::uint64_t{1} << x;

  auto saturating = [&](std::uint64_t s) {
    std::uint64_t cov = s;
    for (std::uint64_t m : masks)
      if (std::popcount(m & s) >= 2) cov |= m;
    return cov == all;
  };

  for (std::uint32_t k = 1; k <= v; ++k) {
    std::vector<std::uint32_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0u);
    while (true) {
      std::uint64_t s = 0;
      for (auto i : idx) s |= std::uint64_t{1} << i;
      if (saturating(s)) return {k, std::vector<PointId>(idx.begin(), idx.end())};
      std::uint32_t j = k;
      while (j-- > 0 && idx[j] == v - k + j) {
      }
      if (j == std::uint32_t(-1)) break;
      ++idx[j];
      for (std::uint32_t t = j + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  throw Error("no saturating set found");  // the full point set always saturates
}

}  // namespace satset
