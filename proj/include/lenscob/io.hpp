#pragma once

// Text and JSON formats: the `a,b;c,d` matrix format, characteristic-function
// documents, certificate serialization (reduction trees and chains), and
// survey report rendering.  JSON objects keep a stable field order.

#include "lenscob/cobord.hpp"

#include <json.hpp>

#include <iomanip>

namespace lenscob {

using ojson = nlohmann::ordered_json;

inline Int int_from_string(std::string s) {
  auto drop = [](std::string& str) {
    std::size_t b = str.find_first_not_of(" \t\r\n");
    std::size_t e = str.find_last_not_of(" \t\r\n");
    str = b == std::string::npos ? "" : str.substr(b, e - b + 1);
  };
  drop(s);
  if (s.empty()) throw std::invalid_argument("expected an integer, got an empty field");
  std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (start == s.size())
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("expected an integer, got '" + s + "'");
  // cpp_int rejects an explicit leading '+'
  return Int(s[0] == '+' ? s.substr(1) : s);
}

inline std::string int_to_string(const Int& v) { return v.str(); }

// Integers are emitted as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; both are accepted on input.
inline ojson json_from_int(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
  return v.str();
}

inline Int int_from_json(const ojson& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) return int_from_string(j.get<std::string>());
  throw std::invalid_argument("expected an integer value");
}

inline std::vector<Int> int_list_from_json(const ojson& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of integers");
  std::vector<Int> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(int_from_json(e));
  return out;
}

inline ojson json_from_int_list(const std::vector<Int>& xs) {
  ojson arr = ojson::array();
  for (const Int& x : xs) arr.push_back(json_from_int(x));
  return arr;
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

}  // namespace detail

// "1,2,3" -> vector
inline std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  for (const auto& field : detail::split(text, ',')) out.push_back(int_from_string(field));
  return out;
}

inline std::string format_int_list(const std::vector<Int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i].str();
  }
  return out;
}

// Rows separated by ';', entries by ',':  "3,5;2,3"
inline IntMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Int>> rows;
  for (const auto& row : detail::split(text, ';')) rows.push_back(parse_int_list(row));
  for (const auto& r : rows)
    if (r.size() != rows.front().size())
      throw std::invalid_argument("matrix rows have unequal length");
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline std::string format_matrix(const IntMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ";";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += m(i, j).str();
    }
  }
  return out;
}

// Characteristic-function document: line 1 is the dimension, each following
// line one facet vector (`a,b,c`), in facet index order.  A line holding only
// `-` marks an unlabeled polygon edge.
struct CharFnDocument {
  int dim = 0;
  std::vector<std::optional<std::vector<Int>>> lines;
};

inline CharFnDocument parse_charfun_text(const std::string& text) {
  CharFnDocument doc;
  std::istringstream in(text);
  std::string line;
  bool have_dim = false;
  while (std::getline(in, line)) {
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    std::string body = line.substr(b, e - b + 1);
    if (!have_dim) {
      Int d = int_from_string(body);
      if (d < 1 || d > 64) throw std::invalid_argument("unreasonable dimension line");
      doc.dim = d.convert_to<int>();
      have_dim = true;
      continue;
    }
    if (body == "-")
      doc.lines.emplace_back(std::nullopt);
    else
      doc.lines.emplace_back(parse_int_list(body));
  }
  if (!have_dim) throw std::invalid_argument("empty characteristic-function document");
  if (doc.lines.empty()) throw std::invalid_argument("document has no facet vectors");
  return doc;
}

inline HyperCharFn hyper_from_document(const CharFnDocument& doc) {
  HyperCharFn f;
  f.n = doc.dim;
  for (const auto& line : doc.lines) {
    if (!line) throw std::invalid_argument("unlabeled facets are only allowed on polygons");
    f.facet_vectors.push_back(*line);
  }
  return f;
}

inline RationalCharFn rational_simplex_from_document(const CharFnDocument& doc) {
  RationalCharFn f;
  f.dim = doc.dim;
  for (const auto& line : doc.lines) {
    if (!line) throw std::invalid_argument("unlabeled facets are only allowed on polygons");
    f.facet_vectors.push_back(*line);
  }
  return f;
}

inline PolygonCharFn polygon_from_document(const CharFnDocument& doc) {
  if (doc.dim != 2) throw std::invalid_argument("polygons are two-dimensional");
  PolygonCharFn poly;
  poly.edges = doc.lines;
  return poly;
}

inline std::string format_hyper(const HyperCharFn& f) {
  std::string out = std::to_string(f.n) + "\n";
  for (const auto& v : f.facet_vectors) out += format_int_list(v) + "\n";
  return out;
}

// Chain certificate: {"p": .., "q": .., "chain": [[q1, p1], ...]}
inline ojson chain_to_json(const ChainCert& c) {
  ojson j;
  j["p"] = json_from_int(c.p);
  j["q"] = json_from_int(c.q);
  ojson arr = ojson::array();
  for (const auto& v : c.chain) arr.push_back(ojson::array({json_from_int(v[0]), json_from_int(v[1])}));
  j["chain"] = std::move(arr);
  return j;
}

inline ChainCert chain_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("q") || !j.contains("chain"))
    throw std::invalid_argument("chain certificate needs p, q and chain fields");
  ChainCert c;
  c.p = int_from_json(j.at("p"));
  c.q = int_from_json(j.at("q"));
  if (!j.at("chain").is_array())
    throw std::invalid_argument("chain field must be an array");
  for (const auto& e : j.at("chain")) {
    std::vector<Int> v = int_list_from_json(e);
    if (v.size() != 2) throw std::invalid_argument("chain vectors live in Z^2");
    c.chain.push_back({v[0], v[1]});
  }
  return c;
}

namespace detail {

inline ojson node_to_json(const ReductionNode& node) {
  ojson j;
  j["p"] = json_from_int(node.p);
  if (node.sphere()) return j;
  j["q"] = json_from_int_list(node.q);
  ojson eps = ojson::array();
  for (int e : node.eps) eps.push_back(e);
  j["eps"] = std::move(eps);
  ojson kids = ojson::array();
  for (const auto& child : node.children) kids.push_back(node_to_json(child));
  j["children"] = std::move(kids);
  return j;
}

inline ReductionNode node_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("p"))
    throw std::invalid_argument("certificate node needs a p field");
  ReductionNode node;
  node.p = int_from_json(j.at("p"));
  if (j.contains("q")) node.q = int_list_from_json(j.at("q"));
  if (j.contains("eps")) {
    if (!j.at("eps").is_array()) throw std::invalid_argument("eps must be an array");
    for (const auto& e : j.at("eps")) {
      if (!e.is_number_integer()) throw std::invalid_argument("eps entries must be integers");
      node.eps.push_back(e.get<int>());
    }
  }
  if (j.contains("children")) {
    if (!j.at("children").is_array())
      throw std::invalid_argument("children must be an array");
    for (const auto& c : j.at("children")) node.children.push_back(node_from_json(c));
  }
  return node;
}

}  // namespace detail

// Reduction-tree certificate.  Root: {"dimension": n, "p": .., "q": [..],
// "eps": [..], "children": [..]}; sphere leaves are encoded as {"p": 1}.
inline ojson tree_to_json(const ReductionTree& t) {
  ojson j;
  j["dimension"] = t.n;
  ojson root = detail::node_to_json(t.root);
  for (auto it = root.begin(); it != root.end(); ++it) j[it.key()] = it.value();
  return j;
}

inline ReductionTree tree_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("dimension"))
    throw std::invalid_argument("certificate needs a dimension field");
  if (!j.at("dimension").is_number_integer())
    throw std::invalid_argument("dimension must be an integer");
  ReductionTree t;
  t.n = j.at("dimension").get<int>();
  t.root = detail::node_from_json(j);
  return t;
}

inline bool json_is_chain(const ojson& j) { return j.is_object() && j.contains("chain"); }

inline ojson survey_to_json(const SurveyReport& rep) {
  ojson j;
  j["dimension"] = rep.dimension;
  j["max_sum"] = rep.max_sum;
  ojson rows = ojson::array();
  for (const auto& row : rep.rows) {
    ojson r;
    r["sum"] = row.sum;
    r["tuples"] = row.tuples;
    r["failures"] = row.failures;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["total_tuples"] = rep.total_tuples;
  j["failures"] = rep.total_failures;
  j["verified_bound"] = rep.verified_bound;
  ojson failing = ojson::array();
  for (const auto& t : rep.failing) failing.push_back(json_from_int_list(t));
  j["failing"] = std::move(failing);
  return j;
}

// Human-readable table plus a machine-readable failure list on the last line.
inline std::string render_survey_table(const SurveyReport& rep) {
  std::ostringstream os;
  os << "sum\ttuples\tfailures\n";
  for (const auto& row : rep.rows)
    os << row.sum << "\t" << row.tuples << "\t" << row.failures << "\n";
  os << "total tuples: " << rep.total_tuples << "\n";
  os << "failures: " << rep.total_failures << "\n";
  os << "verified bound: " << rep.verified_bound << "\n";
  ojson failing = ojson::array();
  for (const auto& t : rep.failing) failing.push_back(json_from_int_list(t));
  os << "failing tuples: " << failing.dump() << "\n";
  return os.str();
}

}  // namespace lenscob
