#include "k3b/cli.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "k3b/cmprop.hpp"
#include "k3b/error.hpp"
#include "k3b/field_linalg.hpp"
#include "k3b/fixtures.hpp"
#include "k3b/lattice.hpp"

namespace k3b {

using ojson = nlohmann::ordered_json;

namespace {

class Report {
 public:
  explicit Report(const std::string& command) {
    j_["command"] = command;
    j_["inputs"] = ojson::object();
    j_["results"] = ojson::object();
    j_["certificates"] = ojson::array();
  }

  void input(const std::string& key, ojson v) { j_["inputs"][key] = std::move(v); }
  void result(const std::string& key, ojson v) { j_["results"][key] = std::move(v); }
  void certify(const std::string& name, bool pass) {
    j_["certificates"].push_back(ojson{{"name", name}, {"pass", pass}});
    ok_ = ok_ && pass;
  }
  bool ok() const { return ok_; }

  std::string render(bool structured) const {
    if (structured) return j_.dump(2) + "\n";
    std::ostringstream os;
    os << "command: " << j_["command"].get<std::string>() << "\n";
    for (const auto& [k, v] : j_["inputs"].items()) text(os, k, v);
    for (const auto& [k, v] : j_["results"].items()) text(os, k, v);
    for (const auto& c : j_["certificates"])
      os << (c["pass"].get<bool>() ? "[pass] " : "[FAIL] ") << c["name"].get<std::string>() << "\n";
    return os.str();
  }

 private:
  static bool scalar(const ojson& v) { return !v.is_object() && !v.is_array(); }
  static std::string scalar_text(const ojson& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

  static void text(std::ostream& os, const std::string& key, const ojson& v) {
    if (scalar(v)) {
      os << key << ": " << scalar_text(v) << "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), scalar)) {
      os << key << ": ";
      for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << scalar_text(v[i]);
      os << "\n";
    } else if (v.is_array()) {
      for (size_t i = 0; i < v.size(); ++i) text(os, key + "[" + std::to_string(i) + "]", v[i]);
    } else {
      for (const auto& [k, w] : v.items()) text(os, key + "." + k, w);
    }
  }

  ojson j_;
  bool ok_ = true;
};

struct Options {
  std::string fixture, family, b, point, connector, ell = "1,0", to, s_grid, theta;
};

ojson strings(const QVector& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

std::string signature_text(const SignatureTriple& s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + "," + std::to_string(s.null) + ")";
}

ojson point_json(const PeriodPoint& p) {
  ojson o;
  o["field"] = to_string(p.a.field()->minpoly(), "g");
  o["a"] = to_string(p.a);
  o["b"] = to_string(p.b);
  o["c"] = to_string(p.c);
  return o;
}

// Outward decimal rounding to 9 places.
std::string decimal_enclosure(const Interval& x) {
  const Integer scale("1000000000");
  auto text = [&](const Integer& n) {
    const Integer a = abs(n);
    std::string frac = Integer(a % scale).get_str();
    frac.insert(0, 9 - frac.size(), '0');
    return (sgn(n) < 0 ? "-" : "") + Integer(a / scale).get_str() + "." + frac;
  };
  Integer lo, hi;
  const Rational l = x.lo * scale, h = x.hi * scale;
  mpz_fdiv_q(lo.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
  mpz_cdiv_q(hi.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return "[" + text(lo) + ", " + text(hi) + "]";
}

// sigma0 + c f in the short form used in reports.
std::string brauer_sigma_text(const FieldElement& c) {
  if (c.is_zero()) return "sigma0";
  if (c.is_rational()) {
    const Rational q = c.rational_value();
    if (q == 1) return "sigma0+f";
    if (q == -1) return "sigma0-f";
    return sign(q) > 0 ? "sigma0+" + to_string(q) + "*f" : "sigma0-" + to_string(Rational(-q)) + "*f";
  }
  return "sigma0+(" + to_string(c) + ")*f";
}

Fixture need_fixture(const Options& o, Report& rep) {
  if (o.fixture.empty()) throw Error(ErrorCode::MissingFlag, "--fixture is required");
  rep.input("fixture", o.fixture);
  return load_fixture(o.fixture);
}

std::string need(const std::string& value, const std::string& flag) {
  if (value.empty()) throw Error(ErrorCode::MissingFlag, flag + " is required");
  return value;
}

TwoClassFamily two_class_of(const Fixture& fx, const Options& o, Report& rep) {
  std::string label = o.family;
  if (label.empty()) {
    if (fx.two_class.empty()) throw Error(ErrorCode::MissingFlag, "fixture has no two-class family; pass --family");
    label = fx.two_class.front().label;
  }
  rep.input("family", label);
  return fx.two_class_family(label);
}

PeriodPoint point_of(const BrilliantFamily& fam, const Options& o, Report& rep) {
  if (!o.b.empty()) {
    rep.input("B", o.b);
    const QVector b = parse_rational_list(o.b);
    if (b.size() != fam.base.rank())
      throw Error(ErrorCode::ParseError, "--B needs " + std::to_string(fam.base.rank()) + " entries");
    return brauer_period_from_B(fam, b);
  }
  if (o.point.empty()) throw Error(ErrorCode::MissingFlag, "--B or --point is required");
  rep.input("point", o.point);
  std::vector<FieldElement> abc;
  std::stringstream ss(o.point);
  for (std::string part; std::getline(ss, part, ',');) abc.push_back(parse_field_element(fam.base.field, part));
  if (abc.size() != 3) throw Error(ErrorCode::ParseError, "--point needs three entries a,b,c");
  return make_period(fam, abc[0], abc[1], abc[2]);
}

bool base_is_cm(const K3HodgeStructure& h) {
  const EndoClassification cls = classify_endo(h, endo_algebra(h));
  return cls.kind == EndoKind::CM && cls.is_cm_hodge;
}

// CM propagation data for an NL point over a CM base.
void propagation(Report& rep, const std::string& key, const std::string& prefix, const BrilliantFamily& fam,
                 const PeriodPoint& p) {
  if (!base_is_cm(fam.base)) return;
  const PropagationReport pr = verify_cm_propagation(fam, p);
  rep.result(key, ojson{{"kind", pr.fiber_classification.kind == EndoKind::CM ? "CM" : "RM"},
                                  {"degree", pr.fiber_classification.degree},
                                  {"K0", to_string(pr.fiber_classification.k0_minpoly)},
                                  {"fields_isomorphic", pr.fields_isomorphic},
                                  {"dim_line_only", pr.line_only.dim},
                                  {"line_only_K0_embeds", pr.line_only.k0_embeds}});
  rep.certify(prefix + "fiber is CM-Hodge", pr.fiber_classification.is_cm_hodge);
  rep.certify(prefix + "base K0 embeds in the fiber Hodge algebra", pr.k0_embeds);
}

void cmd_validate(const Options& o, Report& rep) {
  const Fixture fx = need_fixture(o, rep);
  const K3HodgeStructure& h = fx.structure;
  const QMatrix& g = h.lattice.gram();
  rep.result("name", fx.name);
  rep.result("rank", h.rank());
  rep.result("field", to_string(h.field->minpoly(), "g"));
  ojson period = ojson::array();
  for (const auto& x : h.period) period.push_back(to_string(x));
  rep.result("period", period);
  const SignatureTriple sig = signature(h.lattice);
  rep.result("signature", signature_text(sig));
  const bool irreducible = is_irreducible(h);
  rep.result("irreducible", irreducible);
  ojson fams = ojson::array();
  for (const auto& b : fx.brilliant) fams.push_back(ojson{{"label", b.label}, {"d", to_string(b.d)}});
  for (const auto& b : fx.two_class) fams.push_back(ojson{{"label", b.label}, {"two_class_d", to_string(b.d)}});
  rep.result("families", fams);
  rep.certify("(sigma.sigma) = 0", pair(g, h.period, h.period).is_zero());
  rep.certify("(sigma.conj sigma) > 0", nf_sign(hermitian_norm(g, h.period)) > 0);
  rep.certify("signature (2,r-2,0)", sig == SignatureTriple{2, h.rank() - 2, 0});
  rep.certify("irreducible", irreducible);
}

void cmd_classify(const Options& o, Report& rep) {
  const Fixture fx = need_fixture(o, rep);
  if (!o.family.empty()) {
    rep.input("family", o.family);
    fx.family(o.family);
  }
  for (const auto& b : fx.brilliant) {
    if (!o.family.empty() && b.label != o.family) continue;
    const DomainClass c = classify_domain(fx.family(b.label));
    rep.result(b.label, ojson{{"d", to_string(b.d)}, {"domain", domain_class_name(c)}});
    const DomainClass by_sign = sign(b.d) > 0   ? DomainClass::TwistorSphere
                                : sign(b.d) == 0 ? DomainClass::BrauerTwoLines
                                                 : DomainClass::DworkTwoHalfPlanes;
    rep.certify(b.label + ": domain matches the sign of d", c == by_sign);
  }
}

void cmd_nl(const Options& o, Report& rep) {
  const Fixture fx = need_fixture(o, rep);
  rep.input("family", need(o.family, "--family"));
  const BrilliantFamily fam = fx.family(o.family);
  const PeriodPoint p = point_of(fam, o, rep);
  rep.result("period", point_json(p));
  const bool nl = nl_test(fam, p);
  const size_t rho = picard_number(fam.rank(), p.sigma);
  rep.result("brilliant", is_brilliant(fam, p));
  rep.result("NL", nl);
  rep.result("picard_number", rho);
  rep.certify("NL iff Picard number 1", nl == (rho == 1));
  if (nl) propagation(rep, "fiber", "", fam, p);
  if (sign(fam.d) == 0) {
    rep.certify("signature route agrees with the B-field system", nl_test_by_signature(fam, p) == nl_test_by_bfield(fam, p));
    if (nl && !p.a.is_zero()) {
      const BrauerClass bc = recover_bfield(fam, p);
      rep.result("recovered_B", strings(bc.b));
      rep.result("order", bc.order.get_str());
      if (!o.b.empty()) rep.certify("recovered B equals the input", bc.b == parse_rational_list(o.b));
    }
  }
}

void cmd_brauer(const Options& o, Report& rep) {
  const Fixture fx = need_fixture(o, rep);
  rep.input("family", need(o.family, "--family"));
  const BrilliantFamily fam = fx.family(o.family);
  const PeriodPoint p = point_of(fam, o, rep);
  rep.result("period", point_json(p));
  const BrauerClass bc = recover_bfield(fam, p);
  rep.result("recovered_B", strings(bc.b));
  rep.result("order", bc.order.get_str());
  const BFieldEmbedding fb = fB_embedding(fam, bc.b);
  const Projection pr = projection_to_base(fam, p);
  rep.certify("brauer_period_from_B(B) is the point", brauer_period_from_B(fam, bc.b).sigma == p.sigma);
  rep.certify("image of f_B is the transcendental lattice", fb.image_is_transcendental);
  rep.certify("f_B is an isometry onto its image", fb.isometric);
  rep.certify("projection to T is bijective", pr.bijective);
  rep.certify("projection is an isometry", pr.isometry);
  rep.certify("projection carries sigma_t to sigma0", pr.period_match);
}

void cmd_endo(const Options& o, Report& rep) {
  const Fixture fx = need_fixture(o, rep);
  const K3HodgeStructure& h = fx.structure;
  const HodgeEndoAlgebra alg = endo_algebra(h);
  const HodgeEndoAlgebra line = endo_algebra(h, EndoConditions::LineOnly);
  const EndoClassification cls = classify_endo(h, alg);
  rep.result("kind", cls.kind == EndoKind::CM ? "CM" : "RM");
  rep.result("degree", cls.degree);
  rep.result("K0", to_string(cls.k0_minpoly));
  rep.result("K0_degree", cls.k0_degree);
  rep.result("primitive_minpoly", to_string(cls.primitive_minpoly));
  rep.result("cm_hodge", cls.is_cm_hodge);
  rep.result("dim_line_only", line.dim());
  rep.result("dim_hodge", alg.dim());
  rep.result("line_only_discrepancy", line.dim() != alg.dim());
  bool mult = true;
  for (size_t i = 0; i < alg.dim(); ++i)
    for (size_t j = 0; j < alg.dim(); ++j)
      mult = mult && eigenvalue_embedding(h, alg, alg.basis[i] * alg.basis[j]) == alg.eigenvalues[i] * alg.eigenvalues[j];
  rep.certify("eigenvalue map is multiplicative on basis pairs", mult);
  rep.certify("algebra is closed under the adjoint", alg.adjoint.has_value());
}

void cmd_compose(const Options& o, Report& rep) {
  const Fixture fx = need_fixture(o, rep);
  const TwoClassFamily fam = two_class_of(fx, o, rep);
  rep.input("connector", need(o.connector, "--connector"));
  rep.input("ell", o.ell);
  const QVector v = parse_class_expr(o.connector, fam.base.rank());
  const QVector ell = parse_rational_list(o.ell);
  if (ell.size() != 2) throw Error(ErrorCode::ParseError, "--ell needs two entries c1,c2");
  if (!o.to.empty() && o.to != "brauer") throw Error(ErrorCode::InvalidArgument, "--to accepts only brauer");
  if (!o.to.empty()) rep.input("to", o.to);

  const ConnectorClass cc = check_connector(fam, v);
  rep.result("connector_vector", strings(cc.v));
  rep.result("(l'.l')", to_string(cc.square));
  rep.result("(l'.f)", to_string(cc.with_f));
  const CurveIntersection ci = curve_meets_brilliant(fam, v, ell[0], ell[1]);
  ojson pts = ojson::array();
  for (const auto& ip : ci.points) pts.push_back(point_json(ip.point));
  rep.result("points", pts);
  rep.result("non_brilliant", ci.non_brilliant.size());
  rep.result("chart_excluded", ci.chart_excluded);
  for (size_t i = 0; i < ci.points.size(); ++i) {
    const PeriodPoint& p = ci.points[i].point;
    const std::string tag = "point " + std::to_string(i);
    rep.certify(tag + " is NL (signature route)", nl_test_by_signature(ci.family, p));
    rep.certify(tag + " is orthogonal to l'", pair(fam.extended.gram(), fam.embed(p, ell[0], ell[1]), to_kvector(v, p.a.field())).is_zero());
    propagation(rep, "fiber_" + std::to_string(i), tag + ": ", ci.family, p);
  }
  if (o.to != "brauer") return;
  ojson out = ojson::array();
  for (size_t i = 0; i < ci.points.size(); ++i) {
    const BrauerTransport t = twistor_to_brauer(fam, ell[0], ell[1], ci.points[i].point);
    out.push_back(ojson{{"B", strings(t.b)}, {"order", t.order.get_str()}, {"sigma", brauer_sigma_text(t.point.c)}});
    const std::string tag = "point " + std::to_string(i);
    rep.certify(tag + ": sigma lies on L_f", t.on_lf);
    rep.certify(tag + ": sigma is in NL_f", t.in_nl);
    rep.certify(tag + ": sigma is orthogonal to l'", t.orthogonal);
  }
  rep.result("brauer", out);
}

void cmd_specialize(const Options& o, Report& rep) {
  const Fixture fx = need_fixture(o, rep);
  const TwoClassFamily fam = two_class_of(fx, o, rep);
  rep.input("connector", need(o.connector, "--connector"));
  rep.input("s_grid", need(o.s_grid, "--s-grid"));
  const QVector v = parse_class_expr(o.connector, fam.base.rank());
  const QVector grid = parse_rational_list(o.s_grid);
  std::optional<Rational> theta;
  if (!o.theta.empty()) {
    rep.input("theta", o.theta);
    theta = parse_rational(o.theta);
  }
  const SpecializationTrace tr = nl_specialization(fam, v, grid);
  ojson rows = ojson::array();
  for (const auto& row : tr.rows) {
    ojson r;
    r["s"] = to_string(row.s);
    if (row.intersection) {
      r["points"] = row.intersection->points.size();
      for (size_t i = 0; i < row.intersection->points.size(); ++i)
        rep.certify("s = " + to_string(row.s) + ", point " + std::to_string(i) + " is NL",
                    nl_test_by_signature(row.intersection->family, row.intersection->points[i].point));
    } else {
      r["error"] = row.error;
    }
    if (theta && sign(row.s) >= 0 && row.s < 1) {
      const EquatorSample e = equator_flow(fam, row.s, *theta);
      r["equator_distance"] = decimal_enclosure(e.distance);
    }
    rows.push_back(r);
  }
  rep.result("rows", rows);
  if (tr.terminal) {
    rep.result("terminal_B", strings(tr.terminal->b));
    rep.result("terminal_order", tr.terminal->order.get_str());
    rep.certify("terminal B has finite order", sgn(tr.terminal->order) > 0);
  }
}

void cmd_fixtures(const Options&, Report& rep) {
  ojson list = ojson::array();
  for (const auto& name : shipped_fixtures()) {
    bool loads = true;
    ojson entry{{"name", name}};
    try {
      const Fixture fx = load_fixture(name);
      entry["rank"] = fx.structure.rank();
      entry["field"] = to_string(fx.structure.field->minpoly(), "g");
      ojson labels = ojson::array();
      for (const auto& b : fx.brilliant) labels.push_back(b.label);
      for (const auto& b : fx.two_class) labels.push_back(b.label);
      entry["families"] = labels;
    } catch (const Error& e) {
      loads = false;
      entry["error"] = e.what();
    }
    list.push_back(entry);
    rep.certify(name + " loads and validates", loads);
  }
  rep.result("fixtures", list);
}

bool usage_error(ErrorCode c) {
  return c == ErrorCode::ParseError || c == ErrorCode::ValidationError || c == ErrorCode::MissingFlag ||
         c == ErrorCode::UnknownCommand || c == ErrorCode::InvalidArgument;
}

}  // namespace

QVector parse_class_expr(const std::string& text, size_t t_rank) {
  QVector v(t_rank + 2, 0);
  size_t i = 0;
  auto bad = [&](const std::string& why) -> Error {
    return Error(ErrorCode::ParseError, "class expression \"" + text + "\": " + why);
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) throw bad("empty");
  bool first = true;
  while (i < text.size()) {
    int s = 1;
    if (text[i] == '+' || text[i] == '-') {
      s = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw bad("expected + or - at position " + std::to_string(i));
    }
    first = false;
    const size_t c0 = i;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
    Rational coef = 1;
    if (i > c0) coef = parse_rational(text.substr(c0, i - c0));
    if (i < text.size() && text[i] == '*') ++i;
    const size_t n0 = i;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    const std::string name = text.substr(n0, i - n0);
    coef *= s;
    if (name == "f") {
      v[t_rank] += coef;
      v[t_rank + 1] += coef;
    } else if (name == "l1" || name == "l2") {
      v[t_rank + (name == "l1" ? 0 : 1)] += coef;
    } else if (name.size() > 1 && name[0] == 'e' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
      const size_t k = std::stoul(name.substr(1));
      if (k < 1 || k > t_rank) throw bad(name + " is out of range e1..e" + std::to_string(t_rank));
      v[k - 1] += coef;
    } else {
      throw bad("unknown class \"" + name + "\" (use e1.., l1, l2, f)");
    }
    skip();
  }
  return v;
}

CliOutput run_cli(const std::vector<std::string>& args) {
  CliOutput res;
  static const std::vector<std::string> commands = {"validate", "classify", "nl",         "brauer",
                                                    "endo",     "compose",  "specialize", "fixtures"};
  if (!args.empty() && args[0][0] != '-' && std::find(commands.begin(), commands.end(), args[0]) == commands.end()) {
    res.exit_code = 2;
    res.err = std::string(error_code_name(ErrorCode::UnknownCommand)) + ": " + args[0] + "\n";
    return res;
  }

  CLI::App app{"Exact computations on brilliant families of K3-type Hodge structures", "k3b"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  Options o;
  auto fixture = [&](CLI::App* s) { s->add_option("--fixture", o.fixture, "fixture path or shipped name"); };
  auto family = [&](CLI::App* s) { s->add_option("--family", o.family, "family label from the fixture"); };

  CLI::App* validate = app.add_subcommand("validate", "validate a fixture");
  fixture(validate);
  CLI::App* classify = app.add_subcommand("classify", "domain class of each one-class family");
  fixture(classify);
  family(classify);
  CLI::App* nl = app.add_subcommand("nl", "Noether-Lefschetz test of a period point");
  CLI::App* brauer = app.add_subcommand("brauer", "B-field of an NL point of a d = 0 family");
  for (CLI::App* s : {nl, brauer}) {
    fixture(s);
    family(s);
    s->add_option("--B", o.b, "B-field, comma-separated rationals");
    s->add_option("--point", o.point, "a,b,c as field elements in the generator g");
  }
  CLI::App* endo = app.add_subcommand("endo", "Hodge endomorphism algebra");
  fixture(endo);
  CLI::App* compose = app.add_subcommand("compose", "intersect a brilliant line with l'^perp");
  CLI::App* specialize = app.add_subcommand("specialize", "follow l1 + s l2 over an s-grid");
  for (CLI::App* s : {compose, specialize}) {
    fixture(s);
    family(s);
    s->add_option("--connector", o.connector, "class expression such as e1+l1");
  }
  compose->add_option("--ell", o.ell, "c1,c2 for l = c1 l1 + c2 l2");
  compose->add_option("--to", o.to, "brauer: transport each point to the Brauer family of f");
  specialize->add_option("--s-grid", o.s_grid, "comma-separated s values");
  specialize->add_option("--theta", o.theta, "equator rotation parameter");
  CLI::App* fixtures = app.add_subcommand("fixtures", "list the shipped fixtures");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  std::ostringstream out, err;
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    res.out = out.str();
    res.err = err.str();
    res.exit_code = code == 0 ? 0 : 2;
    return res;
  }

  const std::vector<std::pair<CLI::App*, void (*)(const Options&, Report&)>> table = {
      {validate, cmd_validate}, {classify, cmd_classify}, {nl, cmd_nl},
      {brauer, cmd_brauer},     {endo, cmd_endo},         {compose, cmd_compose},
      {specialize, cmd_specialize}, {fixtures, cmd_fixtures}};
  for (const auto& [sub, fn] : table) {
    if (!sub->parsed()) continue;
    Report rep(sub->get_name());
    try {
      fn(o, rep);
    } catch (const Error& e) {
      res.exit_code = usage_error(e.code()) ? 2 : 1;
      res.err = std::string(e.what()) + "\n";
      return res;
    }
    res.out = rep.render(format == "structured");
    res.exit_code = rep.ok() ? 0 : 1;
  }
  return res;
}

}  // namespace k3b
