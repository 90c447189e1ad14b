// lenscob command-line front-end.
//
// Subcommands: validate, identify, translate, certify, verify, survey.
// Results go to stdout, diagnostics to stderr.  Exit statuses:
//   0  success (valid / accepted / zero failures)
//   1  negative outcome (invalid input function, rejected certificate,
//      survey failures)
//   2  malformed input or bad arguments
//   3  certify only: the extension search dead-ends, no certificate

#include <CLI11.hpp>

#include "lenscob/io.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace lenscob;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << body;
}

std::string offending_to_text(const ValidityReport& rep) {
  std::ostringstream os;
  for (const auto& subset : rep.offending) {
    os << "  {";
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (i) os << ", ";
      os << "F" << subset[i];
    }
    os << "}\n";
  }
  return os.str();
}

ojson offending_to_json(const ValidityReport& rep) {
  ojson arr = ojson::array();
  for (const auto& subset : rep.offending) arr.push_back(subset);
  return arr;
}

struct ValidateArgs {
  std::string file;
  bool rational = false;
  bool machine = false;
};

int run_validate(const ValidateArgs& args) {
  CharFnDocument doc = parse_charfun_text(read_file(args.file));
  ValidityReport rep;
  if (!args.rational) {
    rep = validate_hyper(hyper_from_document(doc));
  } else if (doc.dim == 2 && doc.lines.size() >= 4) {
    rep = validate_rational_polygon(polygon_from_document(doc));
  } else {
    rep = validate_rational_simplex(rational_simplex_from_document(doc));
  }
  if (args.machine) {
    ojson j;
    j["valid"] = rep.valid;
    j["offending"] = offending_to_json(rep);
    std::cout << j.dump() << "\n";
  } else if (rep.valid) {
    std::cout << "valid\n";
  } else {
    std::cout << "invalid\noffending subsets:\n" << offending_to_text(rep);
  }
  return rep.valid ? 0 : 1;
}

struct IdentifyArgs {
  std::string file;
  std::string matrix;
  bool machine = false;
};

int run_identify(const IdentifyArgs& args) {
  IdentifyResult res = [&] {
    if (!args.matrix.empty()) {
      IntMatrix m = parse_matrix(args.matrix);
      if (!m.square()) throw std::invalid_argument("identify: matrix must be square");
      if (m.rows() < 2)
        throw std::invalid_argument("identify: matrix must be at least 2 x 2");
      HyperCharFn f;
      f.n = static_cast<int>(m.rows()) - 1;
      for (std::size_t j = 0; j < m.cols(); ++j) f.facet_vectors.push_back(m.column(j));
      return identify_unchecked(f);
    }
    return identify(hyper_from_document(parse_charfun_text(read_file(args.file))));
  }();

  if (const LensClass* c = std::get_if<LensClass>(&res)) {
    if (args.machine) {
      ojson j;
      switch (c->kind) {
        case LensKind::Sphere: j["kind"] = "sphere"; break;
        case LensKind::Lens: j["kind"] = "lens"; break;
        case LensKind::ProductS1CPn: j["kind"] = "product_s1_cpn"; break;
      }
      j["n"] = c->n;
      j["p"] = json_from_int(c->p);
      j["r"] = json_from_int_list(c->r);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << to_string(*c) << "\n";
    }
  } else {
    const auto& q = std::get<NonCyclicQuotient>(res);
    if (args.machine) {
      ojson j;
      j["kind"] = "non_cyclic";
      j["divisors"] = json_from_int_list(q.divisors);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "non-cyclic quotient\n";
      std::cerr << "elementary divisors: " << format_int_list(q.divisors) << "\n";
    }
  }
  return 0;
}

struct TranslateArgs {
  std::string p;
  std::string q;
  std::string b;
  bool machine = false;
};

int run_translate(const TranslateArgs& args) {
  Int p = int_from_string(args.p);
  std::vector<Int> q = parse_int_list(args.q);
  IntMatrix b = parse_matrix(args.b);
  std::vector<Int> r = translate_lens_params(p, q, b);
  std::vector<Int> canon = canonical_form(p, r);
  if (args.machine) {
    ojson j;
    j["p"] = json_from_int(p);
    j["r"] = json_from_int_list(r);
    j["canonical"] = json_from_int_list(canon);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "r: " << format_int_list(r) << "\n";
    std::cout << "canonical: " << format_int_list(canon) << "\n";
  }
  return 0;
}

struct CertifyArgs {
  std::string p;
  std::string q;
  std::string out;
};

int run_certify(const CertifyArgs& args) {
  Int p = int_from_string(args.p);
  std::vector<Int> q = parse_int_list(args.q);
  if (p < 1) throw std::invalid_argument("certify: p must be positive");
  if (p > 1) {
    bool normalized = false;
    for (auto& x : q) {
      Int xm = mod_floor(x, p);
      if (xm == 0 || gcd_int(xm, p) != 1)
        throw std::invalid_argument("certify: parameters must be coprime to p");
      if (xm != x) normalized = true;
      x = xm;
    }
    if (normalized)
      std::cerr << "note: parameters normalized mod " << p << " to "
                << format_int_list(q) << "\n";
  }

  ojson cert;
  if (q.size() == 1 && p > 1) {
    PolygonCertificate pc = polygon_certificate(p, q[0]);
    if (!pc.acceptance.accepted)
      throw std::logic_error("certify: chain construction failed acceptance: " +
                             pc.acceptance.reason);
    cert = chain_to_json(pc.cert);
  } else {
    auto tree = build_certificate(p, q);
    if (!tree) {
      std::cerr << "no certificate: the extension search has no admissible vector\n";
      return 3;
    }
    cert = tree_to_json(*tree);
  }
  std::string body = cert.dump(2) + "\n";
  if (args.out.empty())
    std::cout << body;
  else
    write_file(args.out, body);
  return 0;
}

struct VerifyArgs {
  std::string cert;
  bool machine = false;
};

int run_verify(const VerifyArgs& args) {
  ojson j;
  try {
    j = ojson::parse(read_file(args.cert));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("certificate is not valid JSON: ") + e.what());
  }
  bool accepted;
  std::string path, reason;
  if (json_is_chain(j)) {
    ChainReport rep = verify_chain_cert(chain_from_json(j));
    accepted = rep.accepted;
    path = "chain";
    reason = rep.reason;
  } else {
    VerifyReport rep = verify_certificate(tree_from_json(j));
    accepted = rep.accepted;
    path = rep.path;
    reason = rep.reason;
  }
  if (args.machine) {
    ojson out;
    out["accepted"] = accepted;
    out["path"] = accepted ? "" : path;
    out["reason"] = reason;
    std::cout << out.dump() << "\n";
  } else if (accepted) {
    std::cout << "accepted\n";
  } else {
    std::cout << "rejected at " << path << ": " << reason << "\n";
  }
  return accepted ? 0 : 1;
}

struct SurveyArgs {
  int dim = 2;
  long long max_sum = 0;
  int jobs = 1;
  bool machine = false;
};

int run_survey(const SurveyArgs& args) {
  SurveyReport rep = survey(args.dim, args.max_sum, args.jobs);
  if (args.machine)
    std::cout << survey_to_json(rep).dump() << "\n";
  else
    std::cout << render_survey_table(rep);
  return rep.total_failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certificates for torus cobordisms of lens spaces"};
  app.require_subcommand(1);

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "validate a characteristic function");
  validate->add_option("--file", validate_args.file, "characteristic-function document")
      ->required();
  validate->add_flag("--rational", validate_args.rational,
                     "treat the input as a rational characteristic function");
  validate->add_flag("--machine", validate_args.machine, "JSON output");

  IdentifyArgs identify_args;
  auto* identify = app.add_subcommand("identify", "identify the torus quotient");
  identify->add_option("--file", identify_args.file, "characteristic-function document");
  identify->add_option("--matrix", identify_args.matrix,
                       "inline matrix, columns in facet order (a,b;c,d)");
  identify->add_flag("--machine", identify_args.machine, "JSON output");

  TranslateArgs translate_args;
  auto* translate = app.add_subcommand("translate", "translate lens parameters by B");
  translate->add_option("-p,--p", translate_args.p, "quotient order")->required();
  translate->add_option("-q,--q", translate_args.q, "lens parameters q1,...,qn")
      ->required();
  translate->add_option("-B,--B", translate_args.b, "unimodular matrix rows (a,b;c,d)")
      ->required();
  translate->add_flag("--machine", translate_args.machine, "JSON output");

  CertifyArgs certify_args;
  auto* certify = app.add_subcommand("certify", "build a null-cobordism certificate");
  certify->add_option("p", certify_args.p, "quotient order")->required();
  certify->add_option("q", certify_args.q, "lens parameters q1,...,qn")->required();
  certify->add_option("--out", certify_args.out, "certificate output file");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "verify a certificate independently");
  verify->add_option("--cert", verify_args.cert, "certificate file")->required();
  verify->add_flag("--machine", verify_args.machine, "JSON output");

  SurveyArgs survey_args;
  auto* survey_cmd = app.add_subcommand("survey", "exhaust the extension conditions");
  survey_cmd->add_option("--dim", survey_args.dim, "number of lens parameters")->required();
  survey_cmd->add_option("--max-sum", survey_args.max_sum, "largest tuple sum")->required();
  survey_cmd->add_option("--jobs", survey_args.jobs, "worker threads");
  survey_cmd->add_flag("--machine", survey_args.machine, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(validate_args);
    if (app.got_subcommand(identify)) {
      if (identify_args.file.empty() == identify_args.matrix.empty())
        throw std::invalid_argument("identify: pass exactly one of --file or --matrix");
      return run_identify(identify_args);
    }
    if (app.got_subcommand(translate)) return run_translate(translate_args);
    if (app.got_subcommand(certify)) return run_certify(certify_args);
    if (app.got_subcommand(verify)) return run_verify(verify_args);
    if (app.got_subcommand(survey_cmd)) return run_survey(survey_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
