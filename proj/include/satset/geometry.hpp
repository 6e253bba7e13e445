#pragma once

/**
 * @file geometry.hpp
 * @brief Projective planes of order q as explicit incidence structures.
 *
 * A PlaneModel stores, for every line, the sorted list of its q+1 points and,
 * for every point, the sorted list of the q+1 lines through it. Planes are
 * either generated as PG(2,q) from a GaloisField or loaded from an incidence
 * file (which is how non-Desarguesian planes enter the library).
 *
 * Point order in PG(N,q): normalized coordinate vectors (leftmost nonzero
 * coordinate equal to 1) sorted lexicographically by element codes. Lines of
 * PG(2,q) are indexed by their normalized dual coordinates in the same order,
 * so that line i is {x : <c_i, x> = 0}. With that choice the point->lines table
 * coincides with the line->points table and the two share storage.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "satset/errors.hpp"
#include "satset/field.hpp"

namespace satset {

using PointId = std::uint32_t;
using LineId = std::uint32_t;

struct ProjPoint {
  std::vector<Element> coords;
  std::uint32_t index = 0;
};

struct LineRecord {
  LineId index = 0;
  std::span<const PointId> points;
};

enum class PlaneSource { GeneratedPG, LoadedFile };

/// Number of points of PG(N,q); throws ResourceLimit past `cap`.
inline std::uint64_t pg_point_count(std::uint64_t q, unsigned N, std::uint64_t cap = ~std::uint64_t{0}) {
  std::uint64_t count = 0, power = 1;
  for (unsigned j = 0; j <= N; ++j) {
    count += power;  // 1 + q + ... + q^N
    if (count > cap) throw ResourceLimit("PG(" + std::to_string(N) + "," + std::to_string(q) + ") exceeds point cap");
    if (j < N) power *= q;
  }
  return count;
}

namespace detail {

using Vec3 = std::array<Element, 3>;

inline Vec3 normalize3(const GaloisField& F, Vec3 x) {
  for (std::size_t j = 0; j < 3; ++j) {
    if (x[j] == 0) continue;
    if (x[j] != 1) {
      const Element s = F.inv(x[j]);
      for (std::size_t k = j; k < 3; ++k) x[k] = F.mul(x[k], s);
    }
    return x;
  }
  return x;
}

inline Vec3 cross3(const GaloisField& F, const Vec3& a, const Vec3& b) {
  return {F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])), F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
          F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))};
}

inline std::uint32_t sorted_common(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      return *i;
  }
  throw Error("no common element in sorted incidence lists");
}

}  // namespace detail

class PlaneModel {
 public:
  /// Index of a normalized point (or dual line) of PG(2,q).
  static std::uint32_t pg2_index(std::uint32_t q, const detail::Vec3& x) {
    if (x[0] == 1) return 1 + q + x[1] * q + x[2];
    if (x[1] == 1) return 1 + x[2];
    return 0;
  }

  static detail::Vec3 pg2_coords(std::uint32_t q, std::uint32_t index) {
    if (index == 0) return {0, 0, 1};
    if (index <= q) return {0, 1, index - 1};
    const std::uint32_t rest = index - 1 - q;
    return {1, rest / q, rest % q};
  }

  /// Generates PG(2,q). Throws ResourceLimit if q exceeds `max_order`.
  static PlaneModel pg2(std::shared_ptr<const GaloisField> field, std::uint32_t max_order = 1024) {
    const std::uint32_t q = field->order();
    if (q > max_order)
      throw ResourceLimit("PG(2," + std::to_string(q) + ") exceeds plane cap q <= " + std::to_string(max_order));
    const GaloisField& F = *field;
    const std::uint32_t v = q * q + q + 1;
    const std::uint32_t k = q + 1;
    auto table = std::make_shared<std::vector<PointId>>(std::size_t(v) * k);
    for (LineId L = 0; L < v; ++L) {
      const auto a = pg2_coords(q, L);
      PointId* row = table->data() + std::size_t(L) * k;
      if (a[0] == 1) {
        // x0 + a1 x1 + a2 x2 = 0, emitted in ascending point index.
        PointId* out = row;
        if (a[2] == 0) *out++ = 0;
        if (a[2] != 0) {
          *out++ = 1 + F.div(F.neg(a[1]), a[2]);
          const Element scale = F.inv(F.neg(a[2]));
          for (Element x1 = 0; x1 < q; ++x1) *out++ = 1 + q + x1 * q + F.mul(F.add(1, F.mul(a[1], x1)), scale);
        } else if (a[1] == 0) {
          for (Element z = 0; z < q; ++z) *out++ = 1 + z;
        } else {
          const Element x1 = F.neg(F.inv(a[1]));
          for (Element x2 = 0; x2 < q; ++x2) *out++ = 1 + q + x1 * q + x2;
        }
        continue;
      }
      detail::Vec3 u, w;
      if (a[1] == 1) {
        u = {1, 0, 0};
        w = {0, F.neg(a[2]), 1};
      } else {
        u = {1, 0, 0};
        w = {0, 1, 0};
      }
      row[0] = pg2_index(q, detail::normalize3(F, w));
      for (Element t = 0; t < q; ++t) {
        const detail::Vec3 x{F.add(u[0], F.mul(t, w[0])), F.add(u[1], F.mul(t, w[1])), F.add(u[2], F.mul(t, w[2]))};
        row[t + 1] = pg2_index(q, detail::normalize3(F, x));
      }
      std::sort(row, row + k);
    }
    PlaneModel plane(q, table, table, PlaneSource::GeneratedPG);
    plane.field_ = std::move(field);
    return plane;
  }

  /// Builds a plane from explicit lines, checking every plane axiom.
  static PlaneModel from_lines(std::uint32_t q, std::uint64_t v, std::uint64_t b,
                               std::vector<std::vector<PointId>> lines) {
    const std::uint64_t expect = std::uint64_t(q) * q + q + 1;
    if (q < 2) throw AxiomViolation(Axiom::Counts, "order must be at least 2");
    if (v != expect || b != expect)
      throw AxiomViolation(Axiom::Counts, "v=" + std::to_string(v) + " b=" + std::to_string(b) +
                                              " but q^2+q+1=" + std::to_string(expect));
    if (lines.size() != b)
      throw AxiomViolation(Axiom::Counts, "header declares " + std::to_string(b) + " lines, found " +
                                              std::to_string(lines.size()));
    const std::uint32_t k = q + 1;
    auto table = std::make_shared<std::vector<PointId>>();
    table->reserve(std::size_t(b) * k);
    for (std::size_t L = 0; L < lines.size(); ++L) {
      auto& pts = lines[L];
      if (pts.size() != k)
        throw AxiomViolation(Axiom::LineSize, "line " + std::to_string(L) + " has " + std::to_string(pts.size()) +
                                                  " points, expected " + std::to_string(k));
      std::sort(pts.begin(), pts.end());
      if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
        throw AxiomViolation(Axiom::LineSize, "line " + std::to_string(L) + " repeats a point");
      if (pts.back() >= v) throw AxiomViolation(Axiom::LineSize, "line " + std::to_string(L) + " has out-of-range point");
      table->insert(table->end(), pts.begin(), pts.end());
    }

    std::vector<std::vector<LineId>> through(v);
    for (LineId L = 0; L < b; ++L)
      for (std::uint32_t j = 0; j < k; ++j) through[(*table)[std::size_t(L) * k + j]].push_back(L);

    std::vector<std::uint32_t> seen(v, ~0u);
    for (PointId a = 0; a < v; ++a) {
      for (LineId L : through[a]) {
        for (std::uint32_t j = 0; j < k; ++j) {
          const PointId x = (*table)[std::size_t(L) * k + j];
          if (x == a) continue;
          if (seen[x] == a)
            throw AxiomViolation(Axiom::PairUniqueness,
                                 "points " + std::to_string(a) + " and " + std::to_string(x) + " share two lines");
          seen[x] = a;
        }
      }
    }

    auto incid = std::make_shared<std::vector<LineId>>();
    incid->reserve(std::size_t(v) * k);
    for (PointId a = 0; a < v; ++a) {
      if (through[a].size() != k)
        throw AxiomViolation(Axiom::PointDegree, "point " + std::to_string(a) + " lies on " +
                                                     std::to_string(through[a].size()) + " lines");
      incid->insert(incid->end(), through[a].begin(), through[a].end());
    }
    return PlaneModel(q, table, incid, PlaneSource::LoadedFile);
  }

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t num_points() const noexcept { return v_; }
  std::uint32_t num_lines() const noexcept { return v_; }
  std::uint32_t line_size() const noexcept { return q_ + 1; }
  PlaneSource source() const noexcept { return source_; }
  /// Coordinatizing field, only for generated PG(2,q).
  const GaloisField* field() const noexcept { return field_.get(); }
  bool has_coordinates() const noexcept { return field_ != nullptr; }

  std::span<const PointId> points_on(LineId line) const {
    return {lines_->data() + std::size_t(line) * (q_ + 1), q_ + 1};
  }
  std::span<const LineId> lines_through(PointId point) const {
    return {incid_->data() + std::size_t(point) * (q_ + 1), q_ + 1};
  }
  LineRecord line(LineId index) const { return {index, points_on(index)}; }

  bool incident(PointId point, LineId line) const {
    const auto pts = points_on(line);
    return std::binary_search(pts.begin(), pts.end(), point);
  }

  LineId line_through(PointId a, PointId b) const {
    if (a == b) throw SamePoint("line through a point and itself (" + std::to_string(a) + ")");
    if (field_) {
      const auto c = detail::cross3(*field_, pg2_coords(q_, a), pg2_coords(q_, b));
      return pg2_index(q_, detail::normalize3(*field_, c));
    }
    return detail::sorted_common(lines_through(a), lines_through(b));
  }

  PointId meet(LineId l1, LineId l2) const {
    if (l1 == l2) throw SamePoint("intersection of a line with itself (" + std::to_string(l1) + ")");
    if (field_) {
      const auto c = detail::cross3(*field_, pg2_coords(q_, l1), pg2_coords(q_, l2));
      return pg2_index(q_, detail::normalize3(*field_, c));
    }
    return detail::sorted_common(points_on(l1), points_on(l2));
  }

  /// Homogeneous coordinates of a point; generated planes only.
  std::optional<std::array<Element, 3>> coords(PointId point) const {
    if (!field_) return std::nullopt;
    return pg2_coords(q_, point);
  }

 private:
  PlaneModel(std::uint32_t q, std::shared_ptr<const std::vector<PointId>> lines,
             std::shared_ptr<const std::vector<LineId>> incid, PlaneSource source)
      : q_(q), v_(q * q + q + 1), lines_(std::move(lines)), incid_(std::move(incid)), source_(source) {}

  std::uint32_t q_;
  std::uint32_t v_;
  std::shared_ptr<const std::vector<PointId>> lines_;
  std::shared_ptr<const std::vector<LineId>> incid_;
  PlaneSource source_;
  std::shared_ptr<const GaloisField> field_;
};

inline PlaneModel build_pg2(const GaloisField& field, std::uint32_t max_order = 1024) {
  if (field.order() > max_order)
    throw ResourceLimit("PG(2," + std::to_string(field.order()) + ") exceeds plane cap q <= " +
                        std::to_string(max_order));
  return PlaneModel::pg2(std::make_shared<GaloisField>(field), max_order);
}

inline PlaneModel build_pg2(std::uint32_t q, std::uint32_t max_order = 1024) {
  if (q > max_order)
    throw ResourceLimit("PG(2," + std::to_string(q) + ") exceeds plane cap q <= " + std::to_string(max_order));
  return PlaneModel::pg2(std::make_shared<GaloisField>(q), max_order);
}

// ---- incidence files -------------------------------------------------------

/// Writes `plane v b q` followed by one sorted line per row.
inline void serialize_plane(const PlaneModel& plane, std::ostream& os) {
  os << "plane " << plane.num_points() << ' ' << plane.num_lines() << ' ' << plane.order() << '\n';
  for (LineId L = 0; L < plane.num_lines(); ++L) {
    const auto pts = plane.points_on(L);
    for (std::size_t j = 0; j < pts.size(); ++j) os << (j ? " " : "") << pts[j];
    os << '\n';
  }
}

inline PlaneModel load_plane(std::istream& is) {
  std::string raw;
  std::size_t lineno = 0;
  std::optional<std::array<std::uint64_t, 3>> header;
  std::vector<std::vector<PointId>> lines;
  while (std::getline(is, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    if (!header) {
      std::string tag;
      if (!(ss >> tag)) continue;
      std::array<std::uint64_t, 3> h{};
      std::string extra;
      if (tag != "plane" || !(ss >> h[0] >> h[1] >> h[2]) || (ss >> extra))
        throw ParseError("line " + std::to_string(lineno) + ": expected header 'plane v b q'");
      header = h;
      continue;
    }
    std::vector<PointId> pts;
    std::string tok;
    while (ss >> tok) {
      std::size_t used = 0;
      unsigned long value = 0;
      try {
        value = std::stoul(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || tok[0] == '-')
        throw ParseError("line " + std::to_string(lineno) + ": bad point index '" + tok + "'");
      pts.push_back(static_cast<PointId>(value));
    }
    if (!pts.empty()) lines.push_back(std::move(pts));
  }
  if (!header) throw ParseError("missing 'plane v b q' header");
  const auto [v, b, q] = *header;
  if (q < 2 || q > 65535) throw ParseError("order " + std::to_string(q) + " out of range");
  return PlaneModel::from_lines(static_cast<std::uint32_t>(q), v, b, std::move(lines));
}

inline PlaneModel load_plane_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return load_plane(in);
}

/// All points of PG(N,q) in canonical order.
inline std::vector<ProjPoint> enumerate_pg_points(const GaloisField& field, unsigned N,
                                                  std::uint64_t cap = 10'000'000) {
  if (N < 1) throw DomainError("dimension must be at least 1");
  const std::uint32_t q = field.order();
  const std::uint64_t total = pg_point_count(q, N, cap);
  std::vector<ProjPoint> out;
  out.reserve(total);
  // Lead position N first: tuples with more leading zeros sort earlier.
  for (unsigned lead = N + 1; lead-- > 0;) {
    const unsigned tail = N - lead;
    std::uint64_t count = 1;
    for (unsigned j = 0; j < tail; ++j) count *= q;
    for (std::uint64_t t = 0; t < count; ++t) {
      ProjPoint pt;
      pt.coords.assign(N + 1, 0);
      pt.coords[lead] = 1;
      std::uint64_t rest = t;
      for (unsigned j = N + 1; j-- > lead + 1;) {
        pt.coords[j] = static_cast<Element>(rest % q);
        rest /= q;
      }
      pt.index = static_cast<std::uint32_t>(out.size());
      out.push_back(std::move(pt));
    }
  }
  return out;
}

}  // namespace satset
