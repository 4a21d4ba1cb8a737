// Command-line front end: classification, pullback verification, numerical
// monodromy, and pointwise solution evaluation, with machine-readable JSON
// output (or --format text for eyeballing).
//
// Exit codes: 0 success / verified, 1 negative verdict, 2 usage or parse
// error, 3 invalid mathematical input (degenerate curve, singular point).

#include "lamemono.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace lamemono;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

/* Arguments that fail to parse are usage errors (exit 2), unlike domain
 * errors thrown later by the library (exit 3). */
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* All floating-point output goes through one fixed format so identical
 * inputs produce byte-identical reports. */
std::string fmt15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string cxstr(const Cplx& z) {
  std::string s = fmt15(z.real());
  s += (z.imag() < 0 || std::signbit(z.imag())) ? "" : "+";
  s += fmt15(z.imag());
  s += "i";
  return s;
}

Rational arg_rational(const std::string& s, const char* what) {
  try {
    return parse_rational(s);
  } catch (const std::exception& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

Cplx arg_complex(const std::string& s, const char* what) {
  try {
    return parse_complex(s);
  } catch (const std::exception& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

SchwarzTriple arg_triple(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3)
    throw UsageError("--triple wants three comma-separated rationals");
  return {arg_rational(parts[0], "--triple"), arg_rational(parts[1], "--triple"),
          arg_rational(parts[2], "--triple")};
}

RationalFunction<Rational> arg_rf(const std::string& s) {
  try {
    return parse_rational_function(s, "x");
  } catch (const std::exception& e) {
    throw UsageError(std::string("--xi: ") + e.what());
  }
}

/* ------------------------------------------------------------------ */
/*  run configuration: env-named JSON file first, flags override       */

struct RunConfig {
  double integrationTol = 1e-12;
  double matchTol = 1e-6;
  int closureCap = 400;
  double rootResidual = 1e-12;
  std::string format = "json";
  unsigned seed = 0;

  MonodromyConfig monodromy() const {
    MonodromyConfig cfg;
    cfg.integrationTol = integrationTol;
    cfg.matchTol = matchTol;
    cfg.closureCap = static_cast<std::size_t>(closureCap);
    cfg.rootResidual = rootResidual;
    return cfg;
  }
};

RunConfig config_from_env() {
  RunConfig rc;
  const char* path = std::getenv("LAMEMONO_CONFIG");
  if (!path || !*path) return rc;
  std::ifstream in(path);
  if (!in) throw UsageError(std::string("config file not readable: ") + path);
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const std::exception& e) {
    throw UsageError(std::string("config file: ") + e.what());
  }
  if (j.contains("integrationTol")) rc.integrationTol = j["integrationTol"].get<double>();
  if (j.contains("matchTol")) rc.matchTol = j["matchTol"].get<double>();
  if (j.contains("closureCap")) rc.closureCap = j["closureCap"].get<int>();
  if (j.contains("rootResidual")) rc.rootResidual = j["rootResidual"].get<double>();
  if (j.contains("format")) rc.format = j["format"].get<std::string>();
  if (j.contains("seed")) rc.seed = j["seed"].get<unsigned>();
  if (rc.integrationTol <= 0 || rc.matchTol <= 0 || rc.rootResidual <= 0 ||
      rc.closureCap <= 0)
    throw UsageError("config: tolerances and caps must be positive");
  if (rc.format != "json" && rc.format != "text")
    throw UsageError("config: format must be json or text");
  return rc;
}

void emit(const ojson& j, const RunConfig& rc,
          const std::function<void()>& text) {
  if (rc.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    text();
}

/* ------------------------------------------------------------------ */
/*  subcommands                                                        */

ojson group_list(const std::vector<AdmissibleEntry>& entries, bool pairs) {
  ojson out = ojson::array();
  for (const auto& e : entries) {
    if (pairs) {
      out.push_back({e.curveGroup ? e.curveGroup->name() : std::string("?"),
                     e.baseGroup.name()});
    } else {
      out.push_back(e.baseGroup.name());
    }
  }
  return out;
}

int run_classify(const std::string& ellS, const std::optional<std::string>& BS,
                 const std::optional<std::string>& g2S,
                 const std::optional<std::string>& g3S, bool curve,
                 const RunConfig& rc) {
  Rational ell = arg_rational(ellS, "--ell");
  ClassificationVerdict v =
      curve ? classify_weierstrass(ell) : classify_algebraic(ell);

  ojson j;
  j["schemaVersion"] = kSchemaVersion;
  j["ell"] = ell.get_str();
  j["classical"] = v.classicalFlag;
  if (curve)
    j["pairs"] = group_list(v.admissible, true);
  else
    j["admissible"] = group_list(v.admissible, false);
  {
    ojson conds = ojson::array();
    for (const auto& e : v.admissible) conds.push_back(e.condition);
    j["conditions"] = conds;
  }

  std::optional<MonodromyReport> realized;
  std::optional<MonodromyReport> realizedCurve;
  if (BS) {
    LameParameters p{ell, arg_rational(*BS, "--B"), arg_rational(*g2S, "--g2"),
                     arg_rational(*g3S, "--g3")};
    auto data = curve_data(p.g2, p.g3);  // throws on a degenerate curve
    j["J"] = data.jInvariant.get_str();
    realized = monodromy_group(lame_operator(p), rc.monodromy());
    if (curve) realizedCurve = even_subgroup(*realized);
    const MonodromyReport& rep = curve ? *realizedCurve : *realized;
    j["realized"] = rep.group.name();
    j["closureSize"] = rep.closureSize;
  }

  emit(j, rc, [&] {
    std::cout << "ell = " << ell.get_str()
              << (v.classicalFlag ? "  (2 ell integral: classical range)" : "")
              << "\n";
    if (v.admissible.empty()) std::cout << "  no finite group admissible\n";
    for (const auto& e : v.admissible) {
      std::cout << "  ";
      if (curve && e.curveGroup)
        std::cout << e.curveGroup->name() << " on the curve, "
                  << e.baseGroup.name() << " on the line";
      else
        std::cout << e.baseGroup.name();
      std::cout << "   [" << e.condition << "]\n";
    }
    if (BS) {
      const MonodromyReport& rep = curve ? *realizedCurve : *realized;
      std::cout << "  realized: " << rep.group.name() << " (order "
                << rep.closureSize << ")\n";
    }
  });
  return 0;
}

ojson certificate_json(const PullbackCertificate& cert) {
  ojson j;
  j["schemaVersion"] = kSchemaVersion;
  j["verified"] = cert.verified;
  j["triple"] = {cert.sourceTriple.lambda.get_str(),
                 cert.sourceTriple.mu.get_str(),
                 cert.sourceTriple.nu.get_str()};
  j["xi"] = cert.xi.str();
  j["operator"] = {{"A", cert.target.A.str()}, {"B", cert.target.B.str()}};
  if (cert.residualWitness) j["witness"] = cert.residualWitness->str();
  return j;
}

int run_verify(const std::optional<std::string>& named,
               const std::optional<std::string>& ellS,
               const std::optional<std::string>& BS,
               const std::optional<std::string>& g2S,
               const std::optional<std::string>& g3S,
               const std::optional<std::string>& tripleS,
               const std::optional<std::string>& xiS, const RunConfig& rc) {
  PullbackCertificate cert;
  std::optional<std::string> usedName;
  if (named) {
    bool known = false;
    for (const auto& m : named_maps()) known |= (m.name == *named);
    if (!known) {
      std::string names;
      for (const auto& m : named_maps()) names += " " + m.name;
      throw UsageError("--named: unknown map '" + *named + "'; have:" + names);
    }
    std::optional<Rational> ell;
    if (ellS) ell = arg_rational(*ellS, "--ell");
    try {
      cert = named_certificate(*named, ell);
    } catch (const std::invalid_argument& e) {
      // --ell passed to a fixed instance, or to the Klein covering
      throw UsageError(e.what());
    }
    usedName = *named;
  } else {
    if (!ellS || !BS || !g2S || !g3S || !tripleS || !xiS)
      throw UsageError(
          "explicit verification wants --ell --B --g2 --g3 --triple --xi "
          "(or use --named)");
    LameParameters p{arg_rational(*ellS, "--ell"), arg_rational(*BS, "--B"),
                     arg_rational(*g2S, "--g2"), arg_rational(*g3S, "--g3")};
    cert = is_weak_pullback(lame_operator(p), arg_triple(*tripleS),
                            arg_rf(*xiS));
  }

  ojson j = certificate_json(cert);
  if (usedName) j["name"] = *usedName;
  emit(j, rc, [&] {
    std::cout << (cert.verified ? "verified" : "NOT a pullback") << ": triple "
              << cert.sourceTriple.str() << " along xi = " << cert.xi.str()
              << "\n";
    if (cert.residualWitness)
      std::cout << "  witness (normal-form difference): "
                << cert.residualWitness->str() << "\n";
  });
  return cert.verified ? 0 : 1;
}

ojson monodromy_json(const MonodromyReport& rep) {
  ojson j;
  j["schemaVersion"] = kSchemaVersion;
  j["group"] = rep.group.name();
  j["closureSize"] = rep.closureSize;
  ojson counts = ojson::object();
  for (const auto& [ord, cnt] : rep.closureOrderCounts)
    counts[std::to_string(ord)] = cnt;
  j["orderCounts"] = counts;
  ojson sing = ojson::array();
  for (const auto& s : rep.singularities) sing.push_back(cxstr(s));
  j["singularities"] = sing;
  ojson gens = ojson::array();
  for (const auto& g : rep.generators)
    gens.push_back({cxstr(g.a), cxstr(g.b), cxstr(g.c), cxstr(g.d)});
  j["generators"] = gens;
  j["projectiveOrders"] = rep.projectiveOrders;
  j["productOrder"] = rep.productOrder;
  j["maxResidual"] = fmt15(rep.maxResidual);
  j["productDefect"] = fmt15(rep.productDefect);
  j["basepoint"] = cxstr(rep.basepoint);
  return j;
}

int run_monodromy(const std::string& ellS, const std::string& BS,
                  const std::string& g2S, const std::string& g3S, bool curve,
                  const std::optional<double>& basepoint,
                  const RunConfig& rc) {
  LameParameters p{arg_rational(ellS, "--ell"), arg_rational(BS, "--B"),
                   arg_rational(g2S, "--g2"), arg_rational(g3S, "--g3")};
  MonodromyConfig cfg = rc.monodromy();
  cfg.basepointReal = basepoint;
  MonodromyReport base = monodromy_group(lame_operator(p), cfg);
  std::optional<MonodromyReport> curveRep;
  if (curve) curveRep = even_subgroup(base);
  const MonodromyReport& rep = curve ? *curveRep : base;

  ojson j = monodromy_json(rep);
  if (curve) j["baseGroup"] = base.group.name();
  emit(j, rc, [&] {
    if (curve)
      std::cout << "on the curve (index-2 subgroup of " << base.group.name()
                << "): ";
    std::cout << rep.group.name() << ", order " << rep.closureSize
              << ", product defect " << fmt15(rep.productDefect)
              << ", worst loop residual " << fmt15(rep.maxResidual) << "\n";
  });
  return rep.group.kind == GroupTag::Kind::InfiniteOrUndetermined ? 1 : 0;
}

ojson evaluation_json(const std::string& label, const PointEvaluation& ev) {
  ojson j;
  j["schemaVersion"] = kSchemaVersion;
  j["case"] = label;
  j["x0"] = cxstr(ev.x0);
  j["branchIndex"] = ev.branchIndex;
  j["branchCount"] = ev.branchCount;
  j["tau"] = cxstr(ev.tau);
  j["u1"] = cxstr(ev.u1);
  j["u1d"] = cxstr(ev.u1d);
  j["u1dd"] = cxstr(ev.u1dd);
  j["u2"] = cxstr(ev.u2);
  j["u2d"] = cxstr(ev.u2d);
  j["u2dd"] = cxstr(ev.u2dd);
  j["residuals"] = {fmt15(ev.residuals.first), fmt15(ev.residuals.second)};
  j["definingDefect"] = fmt15(ev.definingDefect);
  return j;
}

int run_solve(const std::string& label, const std::optional<std::string>& x0S,
              int branch, const std::optional<int>& grid,
              const RunConfig& rc) {
  bool knownLabel = false;
  for (const auto& inst : known_instances()) knownLabel |= (inst.label == label);
  if (!knownLabel)
    throw UsageError("--case: unknown label '" + label +
                     "' (have 1, 2a, 2b, 2c, 3)");
  SolutionBasis basis = solution_basis(label);

  if (grid) {
    if (*grid < 2 || *grid > 200)
      throw UsageError("--grid: size must be between 2 and 200");
    /* CSV of residuals over an off-axis square window, branch 0; points the
     * tracker cannot reach (too close to a branch point) are skipped. */
    int n = *grid;
    std::cout << "re,im,tau_re,tau_im,residual_u1,residual_u2\n";
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        Cplx x0(-2.05 + 4.10 * (ix + 0.5) / n, -2.05 + 4.10 * (iy + 0.5) / n);
        try {
          PointEvaluation ev = evaluate(basis, x0, 0);
          std::cout << fmt15(x0.real()) << "," << fmt15(x0.imag()) << ","
                    << fmt15(ev.tau.real()) << "," << fmt15(ev.tau.imag())
                    << "," << fmt15(ev.residuals.first) << ","
                    << fmt15(ev.residuals.second) << "\n";
        } catch (const std::exception&) {
          // singular point, pole of the defining map, or tracking barrier
        }
      }
    }
    return 0;
  }

  if (!x0S) throw UsageError("solve wants --x0 (or --grid n)");
  Cplx x0 = arg_complex(*x0S, "--x0");
  if (branch < 0) throw UsageError("--branch: must be nonnegative");
  PointEvaluation ev;
  try {
    ev = evaluate(basis, x0, branch);
  } catch (const std::out_of_range&) {
    throw UsageError("--branch: out of range for this case");
  }

  ojson j = evaluation_json(label, ev);
  emit(j, rc, [&] {
    std::cout << "case " << label << " at x0 = " << cxstr(ev.x0) << ", branch "
              << ev.branchIndex << " of " << ev.branchCount << "\n"
              << "  tau = " << cxstr(ev.tau) << "\n"
              << "  u1 = " << cxstr(ev.u1) << "\n"
              << "  u2 = " << cxstr(ev.u2) << "\n"
              << "  residuals " << fmt15(ev.residuals.first) << ", "
              << fmt15(ev.residuals.second) << "; defining defect "
              << fmt15(ev.definingDefect) << "\n";
  });
  return 0;
}

int run_schwarz(const std::optional<std::string>& tripleS,
                const RunConfig& rc) {
  if (!tripleS) {
    ojson j;
    j["schemaVersion"] = kSchemaVersion;
    ojson rows = ojson::array();
    for (const auto& r : schwarz_rows()) {
      ojson row;
      row["case"] = r.label;
      row["triple"] = {r.triple.lambda.get_str(), r.triple.mu.get_str(),
                       r.triple.nu.get_str()};
      row["group"] = r.group.name();
      row["order"] = r.group.order();
      rows.push_back(row);
    }
    j["rows"] = rows;
    emit(j, rc, [&] {
      for (const auto& r : schwarz_rows())
        std::cout << r.label << "\t" << r.triple.str() << "\t"
                  << r.group.name() << "\n";
    });
    return 0;
  }
  SchwarzLookupResult res = full_schwarz_lookup(arg_triple(*tripleS));
  ojson j;
  j["schemaVersion"] = kSchemaVersion;
  j["algebraic"] = res.algebraic;
  if (res.algebraic) {
    j["case"] = res.caseLabel;
    j["group"] = res.group.name();
    j["order"] = res.group.order();
  }
  j["canonical"] = {res.canonical.lambda.get_str(),
                    res.canonical.mu.get_str(), res.canonical.nu.get_str()};
  emit(j, rc, [&] {
    if (res.algebraic)
      std::cout << "algebraic: case " << res.caseLabel << ", group "
                << res.group.name() << ", canonical " << res.canonical.str()
                << "\n";
    else
      std::cout << "not algebraic; canonical " << res.canonical.str() << "\n";
  });
  return res.algebraic ? 0 : 1;
}

int run_instances(const RunConfig& rc) {
  ojson j;
  j["schemaVersion"] = kSchemaVersion;
  ojson rows = ojson::array();
  for (const auto& inst : known_instances()) {
    auto data = curve_data(inst.params.g2, inst.params.g3);
    ojson row;
    row["case"] = inst.label;
    row["ell"] = inst.params.ell.get_str();
    row["B"] = inst.params.accessoryB.get_str();
    row["g2"] = inst.params.g2.get_str();
    row["g3"] = inst.params.g3.get_str();
    row["J"] = data.jInvariant.get_str();
    row["baseGroup"] = inst.baseGroup.name();
    row["curveGroup"] = inst.curveGroup.name();
    rows.push_back(row);
  }
  j["instances"] = rows;
  emit(j, rc, [&] {
    for (const auto& inst : known_instances())
      std::cout << inst.label << "\tell=" << inst.params.ell.get_str()
                << " B=" << inst.params.accessoryB.get_str()
                << " g2=" << inst.params.g2.get_str()
                << " g3=" << inst.params.g3.get_str() << "\t"
                << inst.baseGroup.name() << " / " << inst.curveGroup.name()
                << " on the curve\n";
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "lamemono: algebraic solutions of the Lame equation "
      "(classification, pullback certificates, monodromy, evaluation)"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  try {
    rc = config_from_env();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  app.add_option("--format", rc.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--integration-tol", rc.integrationTol,
                 "local truncation error per continuation step")
      ->check(CLI::PositiveNumber);
  app.add_option("--match-tol", rc.matchTol,
                 "projective identification tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--closure-cap", rc.closureCap,
                 "group closure size treated as infinite")
      ->check(CLI::PositiveNumber);
  app.add_option("--root-residual", rc.rootResidual,
                 "acceptance bound for numeric singular locations")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", rc.seed, "seed for randomized sweeps");

  std::string ellS, BS, g2S, g3S, caseLabel;
  std::optional<std::string> optB, optG2, optG3, named, tripleS, xiS, x0S;
  std::optional<double> basepoint;
  std::optional<int> grid;
  bool curveFlag = false;
  int branch = 0;

  auto* classify = app.add_subcommand(
      "classify", "admissible finite monodromy groups for a given ell");
  classify->add_option("--ell", ellS, "degree parameter, rational p/q")
      ->required();
  auto* cB = classify->add_option("--B", optB, "accessory parameter");
  auto* cg2 = classify->add_option("--g2", optG2, "curve invariant g2");
  auto* cg3 = classify->add_option("--g3", optG3, "curve invariant g3");
  cB->needs(cg2)->needs(cg3);
  cg2->needs(cB)->needs(cg3);
  cg3->needs(cB)->needs(cg2);
  classify->add_flag("--curve", curveFlag,
                     "classify the monodromy on the elliptic curve instead");

  auto* verify = app.add_subcommand(
      "verify-pullback", "exact weak-pullback verification of a certificate");
  auto* vNamed =
      verify->add_option("--named", named,
                         "registry map: harmonic-quadratic, "
                         "equianharmonic-cubic, prop32-quintic, klein-caseXIV");
  verify->add_option("--ell", ellS)->default_str("");
  // --ell doubles as the named families' member selector; everything else
  // spells out an explicit certificate and contradicts --named
  verify->add_option("--B", optB)->excludes(vNamed);
  verify->add_option("--g2", optG2)->excludes(vNamed);
  verify->add_option("--g3", optG3)->excludes(vNamed);
  verify
      ->add_option("--triple", tripleS, "hypergeometric exponent "
                                        "differences, e.g. 1/2,1/3,1/4")
      ->excludes(vNamed);
  verify->add_option("--xi", xiS, "pullback map as a rational function of x")
      ->excludes(vNamed);

  auto* mono = app.add_subcommand(
      "monodromy", "numerical projective monodromy group");
  mono->add_option("--ell", ellS)->required();
  mono->add_option("--B", BS)->required();
  mono->add_option("--g2", g2S)->required();
  mono->add_option("--g3", g3S)->required();
  mono->add_flag("--curve", curveFlag,
                 "report the index-2 subgroup seen on the elliptic curve");
  mono->add_option("--basepoint", basepoint,
                   "real basepoint for the loop bouquet");

  auto* solve = app.add_subcommand(
      "solve", "evaluate the algebraic solution basis of a known case");
  solve->add_option("--case", caseLabel, "1, 2a, 2b, 2c, or 3")->required();
  solve->add_option("--x0", x0S, "evaluation point, e.g. 3+0i");
  solve->add_option("--branch", branch, "branch index at x0");
  solve->add_option("--grid", grid, "emit an n-by-n CSV residual grid");

  auto* schwarz = app.add_subcommand(
      "schwarz", "the classical algebraic hypergeometric families");
  schwarz->add_option("--triple", tripleS,
                      "look up one exponent-difference triple");

  auto* instances = app.add_subcommand(
      "instances", "the five explicitly solvable parameter sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (classify->parsed())
      return run_classify(ellS, optB, optG2, optG3, curveFlag, rc);
    if (verify->parsed()) {
      std::optional<std::string> ellOpt;
      if (!ellS.empty()) ellOpt = ellS;
      return run_verify(named, ellOpt, optB, optG2, optG3, tripleS, xiS, rc);
    }
    if (mono->parsed())
      return run_monodromy(ellS, BS, g2S, g3S, curveFlag, basepoint, rc);
    if (solve->parsed()) return run_solve(caseLabel, x0S, branch, grid, rc);
    if (schwarz->parsed()) return run_schwarz(tripleS, rc);
    if (instances->parsed()) return run_instances(rc);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
