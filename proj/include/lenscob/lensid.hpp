#pragma once

// Identification of the torus quotient defined by a hyper characteristic
// function: sphere, lens space with explicit rotation parameters, or
// S^1 x CP^n.  Also lens-parameter translation by SL(n, Z), the classical
// three-dimensional diffeomorphism test, and a canonical form for lens
// parameters.

#include "lenscob/charfun.hpp"

#include <variant>

namespace lenscob {

enum class LensKind { Sphere, Lens, ProductS1CPn };

struct LensClass {
  LensKind kind = LensKind::Sphere;
  int n = 0;               // the quotient has dimension 2n + 1
  Int p = 1;               // order of the quotient group; 1 for spheres
  std::vector<Int> r;      // rotation parameters in [1, p-1]; empty otherwise
};

inline LensClass sphere_class(int n) { return {LensKind::Sphere, n, 1, {}}; }

inline LensClass lens_class(int n, Int p, std::vector<Int> r) {
  return {LensKind::Lens, n, std::move(p), std::move(r)};
}

inline LensClass product_class(int n) { return {LensKind::ProductS1CPn, n, 1, {}}; }

inline bool operator==(const LensClass& a, const LensClass& b) {
  return a.kind == b.kind && a.n == b.n && a.p == b.p && a.r == b.r;
}
inline bool operator!=(const LensClass& a, const LensClass& b) { return !(a == b); }

inline std::string to_string(const LensClass& c) {
  std::ostringstream os;
  switch (c.kind) {
    case LensKind::Sphere:
      os << "S^" << 2 * c.n + 1;
      break;
    case LensKind::ProductS1CPn:
      os << "S^1 x CP^" << c.n;
      break;
    case LensKind::Lens:
      os << "L(" << c.p << "; ";
      for (std::size_t i = 0; i < c.r.size(); ++i) {
        if (i) os << ", ";
        os << c.r[i];
      }
      os << ")";
      break;
  }
  return os.str();
}

// The quotient group exists but is not a free cyclic rotation group, so the
// space has no standard lens presentation.  Carries the elementary divisors
// different from 1.
struct NonCyclicQuotient {
  std::vector<Int> divisors;
};

using IdentifyResult = std::variant<LensClass, NonCyclicQuotient>;

// Identification without the validity precondition; used on raw matrices.
// The non-lens outcomes are only reachable for invalid assignments.
inline IdentifyResult identify_unchecked(const HyperCharFn& f) {
  const int n = f.n;
  if (n < 1) throw std::invalid_argument("identify: dimension must be positive");
  detail::check_vector_shape(f.facet_vectors, static_cast<std::size_t>(n) + 1,
                             static_cast<std::size_t>(n) + 1, "identify");

  // Source coordinates are ordered so that coordinate j carries facet j for
  // j = 1..n and the last coordinate carries facet 0; the residual rotation
  // then acts on the last homogeneous coordinate.
  IntMatrix span(n + 1, n + 1);
  for (int j = 1; j <= n; ++j)
    for (int i = 0; i <= n; ++i) span(i, j - 1) = f.facet_vectors[j][i];
  for (int i = 0; i <= n; ++i) span(i, n) = f.facet_vectors[0][i];

  SmithForm sf = smith_form(span);
  std::vector<Int> divisors(static_cast<std::size_t>(n) + 1);
  std::size_t rank = 0;
  Int p = 1;
  for (int t = 0; t <= n; ++t) {
    divisors[t] = sf.d(t, t);
    if (divisors[t] != 0) {
      ++rank;
      p *= divisors[t];
    }
  }
  if (rank < static_cast<std::size_t>(n))
    throw std::invalid_argument("identify: facet vectors have rank below n");
  if (rank == static_cast<std::size_t>(n)) return product_class(n);
  if (p == 1) return sphere_class(n);

  std::vector<Int> nontrivial;
  for (const Int& d : divisors)
    if (d != 1) nontrivial.push_back(d);
  if (nontrivial.size() > 1) return NonCyclicQuotient{std::move(nontrivial)};

  // Cyclic of order p.  Pull the quotient generator back through u and read
  // the rotation exponents from the scaled kernel lattice.
  IntMatrix u_inv = inverse_unimodular(sf.u);
  std::vector<Int> gen = adjugate(span) * u_inv.column(n);
  for (auto& x : gen) x = mod_floor(x, p);
  if (gcd_int(gcd_many(gen), p) != 1)
    throw std::logic_error("identify: cyclic quotient without an order-p generator");
  for (const Int& x : gen)
    if (gcd_int(x, p) != 1) return NonCyclicQuotient{std::move(nontrivial)};

  Int unit = *inverse_mod(gen[n], p);
  std::vector<Int> r(n);
  for (int i = 0; i < n; ++i) r[i] = mod_floor(unit * gen[i], p);
  return lens_class(n, p, std::move(r));
}

inline IdentifyResult identify(const HyperCharFn& f) {
  if (!validate_hyper(f).valid)
    throw std::invalid_argument("identify: not a valid hyper characteristic function");
  return identify_unchecked(f);
}

// identify, expecting a sphere/lens/product outcome (guaranteed on valid
// input).
inline LensClass identify_class(const HyperCharFn& f) {
  IdentifyResult res = identify(f);
  if (const LensClass* c = std::get_if<LensClass>(&res)) return *c;
  throw std::logic_error("identify_class: valid assignment produced a non-lens quotient");
}

// Lexicographically least parameter vector under: a common unit multiple
// mod p, negation of any coordinate mod p, and permutation of coordinates.
inline std::vector<Int> canonical_form(const Int& p, const std::vector<Int>& r) {
  if (p < 2) throw std::invalid_argument("canonical_form: p must be at least 2");
  for (const Int& x : r)
    if (gcd_int(x, p) != 1)
      throw std::invalid_argument("canonical_form: parameters must be units mod p");
  std::optional<std::vector<Int>> best;
  std::vector<Int> w(r.size());
  for (Int u = 1; u < p; ++u) {
    if (gcd_int(u, p) != 1) continue;
    for (std::size_t i = 0; i < r.size(); ++i) {
      Int v = mod_floor(u * r[i], p);
      w[i] = std::min(v, Int(p - v));
    }
    std::sort(w.begin(), w.end());
    if (!best || w < *best) best = w;
  }
  return *best;
}

// Least parameter vector over all weakly-equivariant relabelings of the
// presentation: any of the n+1 homogeneous coordinates may carry the unit
// exponent (forcing the unit multiple), coordinates may flip sign, and the
// rest is sorted.  Unlike canonical_form, every move here is realized by a
// relabeling or sign change of the characteristic vectors, so equal normal
// forms are genuinely the same space.
inline std::vector<Int> lens_normal_form(const Int& p, const std::vector<Int>& r) {
  if (p < 2) throw std::invalid_argument("lens_normal_form: p must be at least 2");
  const std::size_t n = r.size();
  std::vector<Int> full(r);
  full.push_back(1);
  std::optional<std::vector<Int>> best;
  std::vector<Int> w(n);
  for (std::size_t c = 0; c <= n; ++c) {
    auto inv = inverse_mod(full[c], p);
    if (!inv) throw std::invalid_argument("lens_normal_form: parameters must be units mod p");
    std::size_t k = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == c) continue;
      Int v = mod_floor(*inv * full[j], p);
      w[k++] = std::min(v, Int(p - v));
    }
    std::sort(w.begin(), w.end());
    if (!best || w < *best) best = w;
  }
  return *best;
}

// Classical three-dimensional test: L(p; q) and L(p; r) agree iff
// r == +-q or q*r == +-1 mod p.
inline bool lens_diffeo_dim3(const Int& p, const Int& q, const Int& r) {
  if (p < 1) throw std::invalid_argument("lens_diffeo_dim3: p must be positive");
  if (gcd_int(p, q) != 1 || gcd_int(p, r) != 1)
    throw std::invalid_argument("lens_diffeo_dim3: parameters must be coprime to p");
  Int qq = mod_floor(q, p), rr = mod_floor(r, p);
  if (rr == qq || rr == mod_floor(-qq, p)) return true;
  Int prod = mod_floor(qq * rr, p);
  return prod == mod_floor(Int(1), p) || prod == mod_floor(Int(-1), p);
}

// Translation of lens parameters along a unimodular change of the first n
// torus coordinates: q -> a = B(-q) reduced into [0, p-1], then
// r = -B^-1 a reduced into [1, p-1].  B^-1 is taken as the adjugate, the
// exact inverse when det B = 1; for det B = -1 this negates r mod p, which
// stays in the same equivalence class.
inline std::vector<Int> translate_lens_params(const Int& p, const std::vector<Int>& q,
                                              const IntMatrix& b) {
  const std::size_t n = q.size();
  if (n == 0) throw std::invalid_argument("translate_lens_params: empty parameters");
  if (p < 2) throw std::invalid_argument("translate_lens_params: p must be at least 2");
  if (!b.square() || b.rows() != n)
    throw std::invalid_argument("translate_lens_params: B must be n x n");
  Int db = det(b);
  if (db != 1 && db != -1)
    throw std::invalid_argument("translate_lens_params: B is not in SL(n, Z)");
  for (const Int& x : q)
    if (gcd_int(x, p) != 1)
      throw std::invalid_argument("translate_lens_params: parameters must be coprime to p");

  std::vector<Int> neg(n);
  for (std::size_t i = 0; i < n; ++i) neg[i] = -q[i];
  std::vector<Int> a = b * neg;
  for (auto& x : a) x = mod_floor(x, p);
  std::vector<Int> back = adjugate(b) * a;
  std::vector<Int> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = mod_floor(-back[i], p);
    if (r[i] == 0)
      throw std::logic_error("translate_lens_params: translated parameter vanished mod p");
  }
  return r;
}

}  // namespace lenscob
