#pragma once

// Null-cobordism certificate machinery: unimodular chains and polygon
// certificates in dimension 3, the {0,-1} extension search, vertex-cut
// boundary enumeration, recursive reduction trees with an independent
// verifier, and exhaustive surveys of the extension conditions.

#include "lenscob/lensid.hpp"

#include <cstdint>
#include <functional>
#include <numeric>
#include <thread>

namespace lenscob {

using PlaneVec = std::array<Int, 2>;

inline Int det2(const PlaneVec& a, const PlaneVec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline bool is_primitive(const PlaneVec& a) { return gcd_int(a[0], a[1]) == 1; }

// One refinement step: given primitive u, w with |det(u, w)| = r > 1, produce
// a primitive e with |det(u, e)| = 1 and |det(w, e)| < r.  Conjugates u to
// (1, 0), picks the nearest admissible lattice point on the second row, and
// conjugates back.
inline PlaneVec chain_step(const PlaneVec& u, const PlaneVec& w) {
  if (!is_primitive(u) || !is_primitive(w))
    throw std::invalid_argument("chain_step: inputs must be primitive");
  Int r = abs_int(det2(u, w));
  if (r <= 1) throw std::invalid_argument("chain_step: nothing to reduce");

  Bezout e = extended_gcd(u[0], u[1]);
  Int c = e.x * w[0] + e.y * w[1];
  Int d = -u[1] * w[0] + u[0] * w[1];  // = +-r
  Int uf = floor_div(c, d);
  Int rem = c - d * uf;
  Int alt = rem - d;
  Int k;
  if (abs_int(rem) < abs_int(alt))
    k = uf;
  else if (abs_int(alt) < abs_int(rem))
    k = uf + 1;
  else
    k = abs_int(uf) <= abs_int(uf + 1) ? uf : uf + 1;
  PlaneVec out{u[0] * k - e.y, u[1] * k + e.x};
  if (abs_int(det2(u, out)) != 1 || !is_primitive(out) || abs_int(det2(w, out)) >= r)
    throw std::logic_error("chain_step: postcondition violated");
  return out;
}

// Sequence of primitive plane vectors from (1, 0) to (-q, p) whose
// consecutive determinants are all +-1.
struct ChainCert {
  Int q, p;
  std::vector<PlaneVec> chain;
};

struct ChainReport {
  bool accepted = true;
  std::string reason;
};

inline ChainCert unimodular_chain(const Int& q, const Int& p) {
  if (!(q > 0 && q < p))
    throw std::invalid_argument("unimodular_chain: need 0 < q < p");
  if (gcd_int(q, p) != 1)
    throw std::invalid_argument("unimodular_chain: gcd(q, p) must be 1");
  ChainCert cert{q, p, {}};
  PlaneVec cur{1, 0};
  const PlaneVec target{-q, p};
  cert.chain.push_back(cur);
  while (abs_int(det2(cur, target)) > 1) {
    cur = chain_step(cur, target);
    cert.chain.push_back(cur);
  }
  cert.chain.push_back(target);
  return cert;
}

inline ChainReport check_chain(const ChainCert& c) {
  auto fail = [](std::string reason) { return ChainReport{false, std::move(reason)}; };
  if (!(c.q > 0 && c.q < c.p) || gcd_int(c.q, c.p) != 1)
    return fail("target parameters are not a normalized lens pair");
  if (c.chain.size() < 2) return fail("chain has fewer than two vectors");
  if (c.chain.front() != PlaneVec{1, 0}) return fail("chain does not start at (1, 0)");
  if (c.chain.back() != PlaneVec{-c.q, c.p}) return fail("chain does not end at (-q, p)");
  for (std::size_t i = 0; i < c.chain.size(); ++i)
    if (!is_primitive(c.chain[i]))
      return fail("chain vector " + std::to_string(i) + " is not primitive");
  for (std::size_t i = 0; i + 1 < c.chain.size(); ++i)
    if (abs_int(det2(c.chain[i], c.chain[i + 1])) != 1)
      return fail("consecutive determinant at position " + std::to_string(i) +
                  " is not a unit");
  return {true, ""};
}

// Full acceptance for a chain certificate: the chain invariants plus the
// polygon realization (the chain labels all but one edge of a (k+1)-gon
// whose single unlabeled edge carries the target lens space).
inline ChainReport verify_chain_cert(const ChainCert& c) {
  ChainReport rep = check_chain(c);
  if (!rep.accepted) return rep;
  PolygonCharFn poly;
  for (const auto& v : c.chain) poly.edges.emplace_back(std::vector<Int>{v[0], v[1]});
  poly.edges.emplace_back(std::nullopt);
  ValidityReport vrep = validate_rational_polygon(poly);
  if (!vrep.valid) return {false, "polygon realization is not valid"};
  return rep;
}

struct PolygonCertificate {
  ChainCert cert;
  ChainReport acceptance;
};

inline PolygonCertificate polygon_certificate(const Int& p, const Int& q) {
  PolygonCertificate out{unimodular_chain(q, p), {}};
  out.acceptance = verify_chain_cert(out.cert);
  return out;
}

// Entries of the extension vector live in {0, -1}.
using Epsilon = std::vector<int>;

namespace detail {

inline void require_lens_tuple(const std::vector<Int>& q, const Int& p, const char* what) {
  if (q.empty()) throw std::invalid_argument(std::string(what) + ": empty tuple");
  if (p < 2) throw std::invalid_argument(std::string(what) + ": p must be at least 2");
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] > 0 && q[i] < p))
      throw std::invalid_argument(std::string(what) + ": parameters must lie in (0, p)");
    if (i > 0 && q[i] < q[i - 1])
      throw std::invalid_argument(std::string(what) + ": parameters must be ascending");
    if (gcd_int(q[i], p) != 1)
      throw std::invalid_argument(std::string(what) + ": parameters must be coprime to p");
  }
}

}  // namespace detail

// The rational assignment on the (n+1)-simplex determined by the lens tuple
// and an extension vector: facet 0 gets (-q_1, ..., -q_n, p), facets 1..n the
// standard basis, and the last facet (eps_1, ..., eps_n, 1).
inline RationalCharFn epsilon_extension(const std::vector<Int>& q, const Int& p,
                                        const Epsilon& eps) {
  const int n = static_cast<int>(q.size());
  if (static_cast<int>(eps.size()) != n)
    throw std::invalid_argument("epsilon_extension: extension vector has wrong length");
  RationalCharFn eta;
  eta.dim = n + 1;
  eta.facet_vectors.assign(n + 2, std::vector<Int>(n + 1));
  for (int i = 0; i < n; ++i) eta.facet_vectors[0][i] = -q[i];
  eta.facet_vectors[0][n] = p;
  for (int i = 1; i <= n; ++i) eta.facet_vectors[i][i - 1] = 1;
  for (int i = 0; i < n; ++i) eta.facet_vectors[n + 1][i] = eps[i];
  eta.facet_vectors[n + 1][n] = 1;
  return eta;
}

// Fast path for n = 2: the four candidate extensions reduce to single gcd
// conditions, tried in the fixed order (0,0), (-1,0), (0,-1), (-1,-1).
inline std::optional<Epsilon> find_extension_dim3(const Int& q1, const Int& q2,
                                                  const Int& p) {
  detail::require_lens_tuple({q1, q2}, p, "find_extension_dim3");
  if (gcd_int(q1, q2) == 1) return Epsilon{0, 0};
  if (gcd_int(p - q1, q2) == 1) return Epsilon{-1, 0};
  if (gcd_int(q1, p - q2) == 1) return Epsilon{0, -1};
  if (gcd_int(p - q1, p - q2) == 1) return Epsilon{-1, -1};
  return std::nullopt;
}

// Scans extension vectors in {0,-1}^n (first coordinate varying fastest, the
// same order as the dim-3 fast path) and returns the first one whose
// epsilon extension is a valid rational characteristic function.
inline std::optional<Epsilon> find_extension(const std::vector<Int>& q, const Int& p) {
  detail::require_lens_tuple(q, p, "find_extension");
  const int n = static_cast<int>(q.size());
  if (n > 62) throw std::invalid_argument("find_extension: tuple too long");
  Epsilon eps(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (int i = 0; i < n; ++i) eps[i] = (mask >> i) & 1 ? -1 : 0;
    if (validate_rational_simplex(epsilon_extension(q, p, eps)).valid) return eps;
  }
  return std::nullopt;
}

// For each vertex of the simplex, restrict the assignment to the facets
// through that vertex and identify the resulting boundary component.
inline std::vector<std::pair<int, LensClass>> vertex_cut_boundaries(
    const RationalCharFn& eta) {
  if (!validate_rational_simplex(eta).valid)
    throw std::invalid_argument(
        "vertex_cut_boundaries: not a valid rational characteristic function");
  const int m = eta.dim;
  std::vector<std::pair<int, LensClass>> out;
  out.reserve(m + 2);
  for (int i = 0; i <= m; ++i) {
    HyperCharFn f;
    f.n = m - 1;
    for (int j = 0; j <= m; ++j)
      if (j != i) f.facet_vectors.push_back(eta.facet_vectors[j]);
    out.emplace_back(i, identify_class(f));
  }
  return out;
}

// Recursive certificate: each lens node carries its normalized parameters,
// the extension vector used, and one child per cut vertex except the one
// that reproduces the node itself.
struct ReductionNode {
  Int p = 1;
  std::vector<Int> q;       // sorted into [1, p-1]; empty for sphere leaves
  Epsilon eps;              // empty for sphere leaves
  std::vector<ReductionNode> children;

  bool sphere() const { return p == 1; }
  Int sum() const {
    Int s = p;
    for (const Int& x : q) s += x;
    return s;
  }
};

struct ReductionTree {
  int n = 0;
  ReductionNode root;
};

namespace detail {

inline std::optional<ReductionNode> build_node(const Int& p, const std::vector<Int>& q) {
  auto eps = find_extension(q, p);
  if (!eps) return std::nullopt;
  const int n = static_cast<int>(q.size());
  auto components = vertex_cut_boundaries(epsilon_extension(q, p, *eps));

  // the last vertex carries the node itself
  const LensClass& self = components[n + 1].second;
  if (self.kind != LensKind::Lens || self.p != p ||
      lens_normal_form(p, self.r) != lens_normal_form(p, q))
    throw std::logic_error("build_certificate: self boundary component mismatch");

  ReductionNode node{p, q, *eps, {}};
  for (int i = 0; i <= n; ++i) {
    const LensClass& comp = components[i].second;
    if (comp.kind == LensKind::Sphere) {
      node.children.push_back(ReductionNode{});
      continue;
    }
    if (comp.kind != LensKind::Lens)
      throw std::logic_error("build_certificate: unexpected boundary component kind");
    if (!(comp.p < p))
      throw std::logic_error("build_certificate: boundary order failed to decrease");
    // recurse on the weakly-equivariant normal form of the component; the
    // raw rotation exponents can dead-end even when an equivalent
    // presentation reduces further
    auto child = build_node(comp.p, lens_normal_form(comp.p, comp.r));
    if (!child) return std::nullopt;
    node.children.push_back(std::move(*child));
  }
  return node;
}

}  // namespace detail

// Builds the reduction tree for L(p; q_1, ..., q_n), normalizing the
// parameters mod p into [1, p-1] and sorting first.  Returns nothing when
// the extension search dead-ends at some node.
inline std::optional<ReductionTree> build_certificate(const Int& p, std::vector<Int> q) {
  if (p < 1) throw std::invalid_argument("build_certificate: p must be positive");
  if (q.empty()) throw std::invalid_argument("build_certificate: empty parameters");
  const int n = static_cast<int>(q.size());
  if (p == 1) return ReductionTree{n, ReductionNode{}};
  for (auto& x : q) {
    x = mod_floor(x, p);
    if (x == 0 || gcd_int(x, p) != 1)
      throw std::invalid_argument("build_certificate: parameters must be coprime to p");
  }
  std::sort(q.begin(), q.end());
  auto root = detail::build_node(p, q);
  if (!root) return std::nullopt;
  return ReductionTree{n, std::move(*root)};
}

struct VerifyReport {
  bool accepted = true;
  std::string path;
  std::string reason;
};

namespace detail {

inline bool verify_node(const ReductionNode& node, int n, const std::string& path,
                        VerifyReport& rep) {
  auto reject = [&](std::string reason, const std::string& at) {
    rep = {false, at, std::move(reason)};
    return false;
  };
  if (node.p < 1) return reject("order must be positive", path);
  if (node.p == 1) {
    if (!node.q.empty() || !node.eps.empty())
      return reject("sphere leaf carries lens data", path);
    if (!node.children.empty()) return reject("sphere leaf has children", path);
    return true;
  }
  if (static_cast<int>(node.q.size()) != n)
    return reject("lens node has wrong parameter count", path);
  for (std::size_t i = 0; i < node.q.size(); ++i) {
    if (!(node.q[i] > 0 && node.q[i] < node.p) || gcd_int(node.q[i], node.p) != 1)
      return reject("lens parameters out of range", path);
    if (i > 0 && node.q[i] < node.q[i - 1])
      return reject("lens parameters not sorted", path);
  }
  if (static_cast<int>(node.eps.size()) != n)
    return reject("missing or malformed extension vector", path);
  for (int e : node.eps)
    if (e != 0 && e != -1) return reject("extension entries must be 0 or -1", path);

  RationalCharFn eta = epsilon_extension(node.q, node.p, node.eps);
  if (!validate_rational_simplex(eta).valid)
    return reject("extension is not a valid rational characteristic function", path);

  auto components = vertex_cut_boundaries(eta);
  const LensClass& self = components[n + 1].second;
  if (self.kind != LensKind::Lens || self.p != node.p ||
      lens_normal_form(node.p, self.r) != lens_normal_form(node.p, node.q))
    return reject("self boundary component mismatch", path);

  if (static_cast<int>(node.children.size()) != n + 1)
    return reject("wrong number of children", path);
  for (int i = 0; i <= n; ++i) {
    const std::string child_path = path + ".children[" + std::to_string(i) + "]";
    const ReductionNode& child = node.children[i];
    if (!verify_node(child, n, child_path, rep)) return false;
    const LensClass& expect = components[i].second;
    if (expect.kind == LensKind::Sphere) {
      if (!child.sphere()) return reject("component should be a sphere", child_path);
      continue;
    }
    if (expect.kind != LensKind::Lens)
      return reject("unexpected boundary component kind", child_path);
    if (child.p != expect.p) return reject("component order mismatch", child_path);
    if (!(child.p < node.p))
      return reject("order must strictly decrease", child_path);
    if (lens_normal_form(child.p, child.q) != lens_normal_form(expect.p, expect.r))
      return reject("component parameters mismatch", child_path);
  }
  return true;
}

}  // namespace detail

// Independent re-derivation of every node: validity of the extension,
// recomputed boundary components matched against the stored children up to
// canonical form, strict order decrease, sphere leaves.
inline VerifyReport verify_certificate(const ReductionTree& t) {
  VerifyReport rep;
  if (t.n < 1) {
    rep = {false, "root", "dimension must be positive"};
    return rep;
  }
  detail::verify_node(t.root, t.n, "root", rep);
  return rep;
}

struct SurveyRow {
  long long sum = 0;
  std::uint64_t tuples = 0;
  std::uint64_t failures = 0;
};

struct SurveyReport {
  int dimension = 0;
  long long max_sum = 0;
  std::vector<SurveyRow> rows;              // one row per sum, ascending
  std::vector<std::vector<Int>> failing;    // (q_1, ..., q_n, p), scan order
  std::uint64_t total_tuples = 0;
  std::uint64_t total_failures = 0;
  long long verified_bound = 0;             // largest all-pass prefix of sums
};

namespace detail {

struct SumScan {
  SurveyRow row;
  std::vector<std::vector<Int>> failing;
};

inline SumScan survey_scan_sum(int n, long long s) {
  SumScan out;
  out.row.sum = s;
  std::vector<long long> q(n);
  std::function<void(int, long long, long long)> rec = [&](int idx, long long lo,
                                                           long long used) {
    if (idx == n) {
      const long long p = s - used;
      if (p <= q[n - 1]) return;
      for (int i = 0; i < n; ++i)
        if (std::gcd(q[i], p) != 1) return;
      ++out.row.tuples;
      bool ok;
      if (n == 2) {
        ok = find_extension_dim3(q[0], q[1], p).has_value();
      } else {
        std::vector<Int> qi(q.begin(), q.end());
        ok = find_extension(qi, p).has_value();
      }
      if (!ok) {
        ++out.row.failures;
        std::vector<Int> tuple(q.begin(), q.end());
        tuple.emplace_back(p);
        out.failing.push_back(std::move(tuple));
      }
      return;
    }
    for (long long v = lo; used + v * (n - idx) + v + 1 <= s; ++v) {
      q[idx] = v;
      rec(idx + 1, v, used + v);
    }
  };
  rec(0, 1, 0);
  return out;
}

}  // namespace detail

// Enumerates every normalized tuple (q_1 <= ... <= q_n, p) with
// q_1 + ... + q_n + p <= max_sum and runs the extension search on each.
// Sums are distributed round-robin over the workers and merged in sum order,
// so the report does not depend on the number of jobs.
inline SurveyReport survey(int n, long long max_sum, int jobs = 1) {
  if (n < 2) throw std::invalid_argument("survey: dimension must be at least 2");
  if (max_sum < 3) throw std::invalid_argument("survey: max_sum must be at least 3");
  if (jobs < 1) jobs = 1;

  const long long first_sum = n + 2;
  std::vector<long long> sums;
  for (long long s = first_sum; s <= max_sum; ++s) sums.push_back(s);

  std::vector<detail::SumScan> scans(sums.size());
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(jobs), std::max<std::size_t>(sums.size(), 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < sums.size(); ++i)
      scans[i] = detail::survey_scan_sum(n, sums[i]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < sums.size(); i += workers)
          scans[i] = detail::survey_scan_sum(n, sums[i]);
      });
    for (auto& th : pool) th.join();
  }

  SurveyReport rep;
  rep.dimension = n;
  rep.max_sum = max_sum;
  rep.verified_bound = max_sum;
  bool clean = true;
  for (auto& scan : scans) {
    rep.rows.push_back(scan.row);
    rep.total_tuples += scan.row.tuples;
    rep.total_failures += scan.row.failures;
    if (clean && scan.row.failures > 0) {
      clean = false;
      rep.verified_bound = scan.row.sum - 1;
    }
    for (auto& t : scan.failing) rep.failing.push_back(std::move(t));
  }
  return rep;
}

}  // namespace lenscob
