#pragma once

/**
 * @file codes.hpp
 * @brief Covering codes from point sets: parity-check matrices and covering radius.
 *
 * The normalized coordinate vectors of n points of PG(r-1,q) form the columns
 * of an r x n parity-check matrix. The point set is saturating exactly when
 * every syndrome in GF(q)^r is a combination of at most two columns, i.e. the
 * code has covering radius at most 2.
 */

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "satset/bounds.hpp"
#include "satset/errors.hpp"
#include "satset/field.hpp"
#include "satset/geometry.hpp"

namespace satset {

struct CodeMatrix {
  std::uint32_t q = 0;
  unsigned r = 0;
  std::size_t n = 0;
  std::vector<Element> entries;  // row-major r x n
  std::string origin;

  Element at(unsigned row, std::size_t col) const { return entries[row * n + col]; }
  Element& at(unsigned row, std::size_t col) { return entries[row * n + col]; }

  std::vector<Element> column(std::size_t col) const {
    std::vector<Element> out(r);
    for (unsigned j = 0; j < r; ++j) out[j] = at(j, col);
    return out;
  }
};

namespace detail {

inline std::vector<Element> normalized(const GaloisField& F, std::vector<Element> x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    const Element s = F.inv(x[j]);
    for (std::size_t k = j; k < x.size(); ++k) x[k] = F.mul(x[k], s);
    return x;
  }
  throw DomainError("zero vector is not a projective point");
}

}  // namespace detail

/// Columns are the normalized coordinates of `points`, in order (r = N+1).
inline CodeMatrix parity_check_from_set(const GaloisField& field, unsigned N, std::span<const ProjPoint> points) {
  CodeMatrix code;
  code.q = field.order();
  code.r = N + 1;
  code.n = points.size();
  code.entries.assign(std::size_t(code.r) * code.n, 0);
  code.origin = "point set in PG(" + std::to_string(N) + "," + std::to_string(code.q) + ")";
  std::set<std::vector<Element>> seen;
  for (std::size_t c = 0; c < points.size(); ++c) {
    if (points[c].coords.size() != code.r)
      throw DomainError("point " + std::to_string(c) + " does not have " + std::to_string(code.r) + " coordinates");
    for (Element e : points[c].coords)
      if (e >= code.q) throw DomainError("coordinate out of range for GF(" + std::to_string(code.q) + ")");
    auto col = detail::normalized(field, points[c].coords);
    if (!seen.insert(col).second) throw DuplicatePoint("column " + std::to_string(c) + " repeats an earlier point");
    for (unsigned j = 0; j < code.r; ++j) code.at(j, c) = col[j];
  }
  return code;
}

/// Same, from point indices of a generated PG(2,q).
inline CodeMatrix parity_check_from_plane(const PlaneModel& plane, std::span<const PointId> set) {
  if (!plane.has_coordinates()) throw DomainError("plane has no coordinates (loaded from an incidence file)");
  std::vector<ProjPoint> pts;
  pts.reserve(set.size());
  for (PointId p : set) {
    if (p >= plane.num_points()) throw DomainError("point " + std::to_string(p) + " out of range");
    const auto c = *plane.coords(p);
    pts.push_back({{c.begin(), c.end()}, p});
  }
  return parity_check_from_set(*plane.field(), 2, pts);
}

/// Covering radius, or nullopt when some syndrome is unreachable (rank < r).
using CoveringRadius = std::optional<unsigned>;

/// Breadth-first closure over all q^r syndromes; level l holds syndromes that
/// need exactly l columns. Throws ResourceLimit when q^r exceeds `cap`.
inline CoveringRadius covering_radius(const GaloisField& field, const CodeMatrix& code,
                                      std::uint64_t cap = 10'000'000) {
  if (field.order() != code.q) throw DomainError("field order does not match code");
  const std::uint32_t q = code.q;
  std::uint64_t total = 1;
  for (unsigned j = 0; j < code.r; ++j) {
    total *= q;
    if (total > cap) throw ResourceLimit("q^r syndrome space exceeds cap " + std::to_string(cap));
  }

  auto encode = [&](const std::vector<Element>& s) {
    std::uint64_t c = 0;
    for (unsigned j = code.r; j-- > 0;) c = c * q + s[j];
    return c;
  };
  auto decode = [&](std::uint64_t c, std::vector<Element>& s) {
    for (unsigned j = 0; j < code.r; ++j) {
      s[j] = static_cast<Element>(c % q);
      c /= q;
    }
  };

  std::vector<std::vector<Element>> multiples;
  for (std::size_t c = 0; c < code.n; ++c) {
    const auto col = code.column(c);
    for (Element a = 1; a < q; ++a) {
      std::vector<Element> m(code.r);
      for (unsigned j = 0; j < code.r; ++j) m[j] = field.mul(a, col[j]);
      multiples.push_back(std::move(m));
    }
  }

  constexpr std::uint8_t kUnseen = 0xff;
  std::vector<std::uint8_t> level(total, kUnseen);
  level[0] = 0;
  std::uint64_t reached = 1;
  std::vector<std::uint64_t> frontier{0}, next;
  std::vector<Element> s(code.r), t(code.r);
  unsigned depth = 0;
  while (reached < total) {
    if (frontier.empty() || depth == 254) return std::nullopt;
    ++depth;
    next.clear();
    for (std::uint64_t c : frontier) {
      decode(c, s);
      for (const auto& m : multiples) {
        for (unsigned j = 0; j < code.r; ++j) t[j] = field.add(s[j], m[j]);
        const std::uint64_t e = encode(t);
        if (level[e] != kUnseen) continue;
        level[e] = static_cast<std::uint8_t>(depth);
        ++reached;
        next.push_back(e);
      }
    }
    frontier.swap(next);
  }
  return depth;
}

struct LengthReport {
  std::uint32_t q = 0;
  unsigned r = 0;
  std::size_t n = 0;
  bounds::Real trivial_lower = 0;
  bool above_trivial = false;  // n > trivial lower bound (otherwise impossible)
  std::optional<bounds::Real> upper;
  std::string upper_name;
  std::optional<bool> within_upper;
  std::vector<std::string> notes;
};

/// Places a length-n, codimension-r, radius-2 code against the known bounds.
inline LengthReport check_length_function(std::uint32_t q, unsigned r, std::size_t n) {
  LengthReport rep;
  rep.q = q;
  rep.r = r;
  rep.n = n;
  const auto qr = static_cast<bounds::Real>(q);
  const auto nr = static_cast<bounds::Real>(n);
  if (r < 3) {
    rep.notes.push_back("no bounds tabulated for codimension < 3");
    rep.above_trivial = true;
    return rep;
  }
  if (r == 3) {
    rep.trivial_lower = bounds::trivial_lower(qr);
    try {
      rep.upper = bounds::upsilon(qr);
      rep.upper_name = "upsilon";
    } catch (const DomainError& e) {
      rep.notes.push_back(e.what());
    }
  } else {
    const unsigned N = r - 1;
    rep.trivial_lower = bounds::space_trivial_lower(N, qr);
    try {
      const auto sb = bounds::space_bounds(N, q);
      rep.upper = sb.upper();
      rep.upper_name = sb.even_general ? "space_even" : sb.even_special ? "space_even_8_12" : "space_odd";
    } catch (const BranchInapplicable& e) {
      rep.notes.push_back(e.what());
    }
  }
  rep.above_trivial = nr > rep.trivial_lower;
  if (!rep.above_trivial) rep.notes.push_back("length at or below the trivial lower bound: impossible");
  if (rep.upper) rep.within_upper = bounds::fits_under(nr, *rep.upper);
  return rep;
}

// ---- matrix files ----------------------------------------------------------

/// `code q r n` then r rows of n element codes.
inline void write_matrix(const CodeMatrix& code, std::ostream& os) {
  os << "code " << code.q << ' ' << code.r << ' ' << code.n << '\n';
  for (unsigned j = 0; j < code.r; ++j) {
    for (std::size_t c = 0; c < code.n; ++c) os << (c ? " " : "") << code.at(j, c);
    os << '\n';
  }
}

inline CodeMatrix read_matrix(std::istream& is) {
  std::vector<std::string> rows;
  std::string raw;
  while (std::getline(is, raw)) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") != std::string::npos) rows.push_back(raw);
  }
  if (rows.empty()) throw ParseError("empty matrix file");
  std::istringstream head(rows[0]);
  std::string tag;
  CodeMatrix code;
  if (!(head >> tag >> code.q >> code.r >> code.n) || tag != "code")
    throw ParseError("expected header 'code q r n'");
  if (rows.size() != code.r + 1u) throw ParseError("expected " + std::to_string(code.r) + " matrix rows");
  code.entries.assign(std::size_t(code.r) * code.n, 0);
  for (unsigned j = 0; j < code.r; ++j) {
    std::istringstream row(rows[j + 1]);
    for (std::size_t c = 0; c < code.n; ++c) {
      long long value = -1;
      if (!(row >> value) || value < 0 || value >= static_cast<long long>(code.q))
        throw ParseError("row " + std::to_string(j) + ": bad entry at column " + std::to_string(c));
      code.at(j, c) = static_cast<Element>(value);
    }
    std::string extra;
    if (row >> extra) throw ParseError("row " + std::to_string(j) + " has more than n entries");
  }
  code.origin = "matrix file";
  return code;
}

}  // namespace satset
