#pragma once

// Facet-vector assignments on simplices and polygons: validity of hyper and
// rational characteristic functions, the pairwise extension condition for
// tetrahedra, and translation by torus automorphisms.

#include "lenscob/exactlin.hpp"

namespace lenscob {

// Vectors in Z^{n+1} attached to the n+1 facets of the n-simplex.  Facet i
// is the facet opposite vertex i.
struct HyperCharFn {
  int n = 0;
  std::vector<std::vector<Int>> facet_vectors;
};

// Vectors in Z^m attached to the m+1 facets of the m-simplex.  Validity only
// constrains facet subsets meeting in a face of positive dimension.
struct RationalCharFn {
  int dim = 0;
  std::vector<std::vector<Int>> facet_vectors;
};

// Edge vectors of a polygon in cyclic order; at most one edge may be left
// unlabeled (the boundary edge of a chain certificate realization).
struct PolygonCharFn {
  std::vector<std::optional<std::vector<Int>>> edges;
};

struct ValidityReport {
  bool valid = true;
  // every failing facet subset, as sorted facet indices, by size then lex
  std::vector<std::vector<int>> offending;
};

namespace detail {

inline ValidityReport validate_facet_subsets(const std::vector<std::vector<Int>>& vecs,
                                             int max_subset) {
  ValidityReport rep;
  const int count = static_cast<int>(vecs.size());
  std::vector<int> pick;
  std::vector<std::vector<Int>> cols;
  for (int size = 1; size <= max_subset; ++size) {
    pick.assign(size, 0);
    for (int i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      cols.clear();
      for (int i : pick) cols.push_back(vecs[i]);
      if (!is_part_of_basis(cols)) rep.offending.push_back(pick);
      // next combination in lex order
      int i = size - 1;
      while (i >= 0 && pick[i] == count - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  rep.valid = rep.offending.empty();
  return rep;
}

inline void check_vector_shape(const std::vector<std::vector<Int>>& vecs,
                               std::size_t expected_count, std::size_t expected_len,
                               const char* what) {
  if (vecs.size() != expected_count)
    throw std::invalid_argument(std::string(what) + ": wrong number of facet vectors");
  for (const auto& v : vecs)
    if (v.size() != expected_len)
      throw std::invalid_argument(std::string(what) + ": wrong facet vector length");
}

}  // namespace detail

// Every facet subset of size <= n must span a direct summand of matching
// rank.  The report lists all failing subsets.
inline ValidityReport validate_hyper(int n, const std::vector<std::vector<Int>>& vecs) {
  if (n < 1) throw std::invalid_argument("validate_hyper: dimension must be positive");
  detail::check_vector_shape(vecs, static_cast<std::size_t>(n) + 1,
                             static_cast<std::size_t>(n) + 1, "validate_hyper");
  return detail::validate_facet_subsets(vecs, n);
}

inline ValidityReport validate_hyper(const HyperCharFn& f) {
  return validate_hyper(f.n, f.facet_vectors);
}

// Simplex of dimension dim: subsets of size <= dim - 1 meet in a face of
// positive dimension and must span summands; vertex subsets are exempt.
inline ValidityReport validate_rational_simplex(int dim,
                                                const std::vector<std::vector<Int>>& vecs) {
  if (dim < 2)
    throw std::invalid_argument("validate_rational_simplex: dimension must be at least 2");
  detail::check_vector_shape(vecs, static_cast<std::size_t>(dim) + 1,
                             static_cast<std::size_t>(dim), "validate_rational_simplex");
  return detail::validate_facet_subsets(vecs, dim - 1);
}

inline ValidityReport validate_rational_simplex(const RationalCharFn& f) {
  return validate_rational_simplex(f.dim, f.facet_vectors);
}

// Polygon validity: labeled edges are primitive and any two adjacent labeled
// edges have determinant +-1, so that all corners between labeled edges stay
// nonsingular.
inline ValidityReport validate_rational_polygon(const PolygonCharFn& poly) {
  const int k = static_cast<int>(poly.edges.size());
  if (k < 3)
    throw std::invalid_argument("validate_rational_polygon: need at least 3 edges");
  int unlabeled = 0;
  for (const auto& e : poly.edges) {
    if (!e) {
      ++unlabeled;
      continue;
    }
    if (e->size() != 2)
      throw std::invalid_argument("validate_rational_polygon: edge vectors live in Z^2");
  }
  if (unlabeled > 1)
    throw std::invalid_argument("validate_rational_polygon: at most one unlabeled edge");

  ValidityReport rep;
  for (int i = 0; i < k; ++i) {
    const auto& e = poly.edges[i];
    if (e && gcd_int((*e)[0], (*e)[1]) != 1) rep.offending.push_back({i});
  }
  for (int i = 0; i < k; ++i) {
    const int j = (i + 1) % k;
    const auto& a = poly.edges[i];
    const auto& b = poly.edges[j];
    if (!a || !b) continue;
    Int d = (*a)[0] * (*b)[1] - (*a)[1] * (*b)[0];
    if (abs_int(d) != 1) rep.offending.push_back({i, j});
  }
  rep.valid = rep.offending.empty();
  return rep;
}

// Whether (a, b, c) extends the standard lens assignment on the triangle with
// parameters (q1, q2, p) to a rational characteristic function of the
// tetrahedron.  Assumes gcd(p, q1) == gcd(p, q2) == 1.
inline bool rational_extension_condition(const Int& a, const Int& b, const Int& c,
                                         const Int& q1, const Int& q2, const Int& p) {
  return gcd_int(a, c) == 1 && gcd_int(b, c) == 1 &&
         gcd_many({b * p + q2 * c, -(a * p + q1 * c), b * q1 - a * q2}) == 1;
}

// A torus automorphism, as a unimodular integer matrix.
struct DeltaTranslation {
  IntMatrix delta;

  explicit DeltaTranslation(IntMatrix m) : delta(std::move(m)) {
    if (!delta.square() || abs_int(det(delta)) != 1)
      throw std::invalid_argument("DeltaTranslation: matrix must be unimodular");
  }
};

// Applies the automorphism to every facet vector.  The result is stored as
// the literal matrix-vector product; all downstream predicates are invariant
// under per-vector sign choices.
inline HyperCharFn translate_charfun(const DeltaTranslation& t, const HyperCharFn& f) {
  if (t.delta.rows() != static_cast<std::size_t>(f.n) + 1)
    throw std::invalid_argument("translate_charfun: size mismatch");
  HyperCharFn out;
  out.n = f.n;
  out.facet_vectors.reserve(f.facet_vectors.size());
  for (const auto& v : f.facet_vectors) {
    if (v.size() != t.delta.cols())
      throw std::invalid_argument("translate_charfun: size mismatch");
    out.facet_vectors.push_back(t.delta * v);
  }
  return out;
}

}  // namespace lenscob
