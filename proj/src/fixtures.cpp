#include "k3b/fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "k3b/error.hpp"
#include "k3b/field_linalg.hpp"
#include "k3b/lattice.hpp"

namespace k3b {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, source + ": " + path + ": " + what);
}

const json& member(const json& j, const std::string& key, const std::string& source, const std::string& path) {
  if (!j.is_object()) fail(source, path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(source, path + "." + key, "missing");
  return *it;
}

Rational rational_at(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_string()) fail(source, path, "expected a rational as a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error&) {
    fail(source, path, "malformed rational \"" + j.get<std::string>() + "\"");
  }
}

QVector vector_at(const json& j, const std::string& source, const std::string& path, size_t size) {
  if (!j.is_array()) fail(source, path, "expected an array");
  if (j.size() != size) fail(source, path, "expected " + std::to_string(size) + " entries, found " + std::to_string(j.size()));
  QVector v;
  for (size_t i = 0; i < j.size(); ++i) v.push_back(rational_at(j[i], source, path + "[" + std::to_string(i) + "]"));
  return v;
}

std::vector<FamilyBlock> blocks_at(const json& j, const std::string& key, const std::string& source) {
  std::vector<FamilyBlock> out;
  const auto it = j.find(key);
  if (it == j.end()) return out;
  if (!it->is_array()) fail(source, key, "expected an array");
  for (size_t i = 0; i < it->size(); ++i) {
    const std::string path = key + "[" + std::to_string(i) + "]";
    const json& label = member((*it)[i], "label", source, path);
    if (!label.is_string()) fail(source, path + ".label", "expected a string");
    out.push_back({label.get<std::string>(), rational_at(member((*it)[i], "d", source, path), source, path + ".d")});
  }
  return out;
}

size_t line_of(const std::string& text, size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

ojson rationals_json(const QVector& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

ojson blocks_json(const std::vector<FamilyBlock>& blocks) {
  ojson a = ojson::array();
  for (const auto& b : blocks) {
    ojson o;
    o["label"] = b.label;
    o["d"] = to_string(b.d);
    a.push_back(o);
  }
  return a;
}

}  // namespace

BrilliantFamily Fixture::family(const std::string& label) const {
  for (const auto& b : brilliant)
    if (b.label == label) return make_family(structure, b.d);
  throw Error(ErrorCode::InvalidArgument, "fixture " + name + " has no brilliant family " + label);
}

TwoClassFamily Fixture::two_class_family(const std::string& label) const {
  for (const auto& b : two_class)
    if (b.label == label) return make_two_class(structure, b.d);
  throw Error(ErrorCode::InvalidArgument, "fixture " + name + " has no two-class family " + label);
}

Fixture parse_fixture(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  Fixture fx;
  const json& name = member(j, "name", source, "");
  if (!name.is_string()) fail(source, "name", "expected a string");
  fx.name = name.get<std::string>();

  const json& lat = member(j, "lattice", source, "");
  const json& rank_j = member(lat, "rank", source, "lattice");
  if (!rank_j.is_number_unsigned() || rank_j.get<size_t>() == 0) fail(source, "lattice.rank", "expected a positive integer");
  const size_t r = rank_j.get<size_t>();
  const json& gram_j = member(lat, "gram", source, "lattice");
  if (!gram_j.is_array() || gram_j.size() != r) fail(source, "lattice.gram", "expected " + std::to_string(r) + " rows");
  QMatrix gram(r, r);
  for (size_t i = 0; i < r; ++i) {
    const QVector row = vector_at(gram_j[i], source, "lattice.gram[" + std::to_string(i) + "]", r);
    for (size_t k = 0; k < r; ++k) gram(i, k) = row[k];
  }
  for (size_t i = 0; i < r; ++i)
    for (size_t k = i + 1; k < r; ++k)
      if (gram(i, k) != gram(k, i))
        fail(source, "lattice.gram[" + std::to_string(i) + "][" + std::to_string(k) + "]",
             "not symmetric (" + to_string(gram(i, k)) + " vs " + to_string(gram(k, i)) + ")");

  const json& fld = member(j, "field", source, "");
  const json& mp = member(fld, "minpoly", source, "field");
  if (!mp.is_array() || mp.size() < 2) fail(source, "field.minpoly", "expected at least two coefficients");
  const QVector minpoly = vector_at(mp, source, "field.minpoly", mp.size());
  const size_t n = minpoly.size() - 1;
  const QVector conj = vector_at(member(fld, "conj_image", source, "field"), source, "field.conj_image", n);
  const json& emb = member(fld, "embedding", source, "field");
  const QVector re = vector_at(member(emb, "re", source, "field.embedding"), source, "field.embedding.re", 2);
  const QVector im = vector_at(member(emb, "im", source, "field.embedding"), source, "field.embedding.im", 2);
  if (re[0] > re[1] || im[0] > im[1]) fail(source, "field.embedding", "interval with lo > hi");

  const json& per = member(j, "period", source, "");
  if (!per.is_array() || per.size() != r) fail(source, "period", "expected " + std::to_string(r) + " entries");
  std::vector<QVector> coeffs;
  for (size_t i = 0; i < r; ++i) coeffs.push_back(vector_at(per[i], source, "period[" + std::to_string(i) + "]", n));

  fx.brilliant = blocks_at(j, "brilliant", source);
  fx.two_class = blocks_at(j, "two_class", source);

  try {
    const FieldPtr k = nf_create(QPoly(minpoly), conj, Box(Interval(re[0], re[1]), Interval(im[0], im[1])), fx.name);
    KVector sigma;
    for (const auto& c : coeffs) sigma.push_back(FieldElement(k, c));
    fx.structure = validate_period(QuadLattice(gram), sigma);
    for (const auto& b : fx.brilliant) make_family(fx.structure, b.d);
    for (const auto& b : fx.two_class) make_two_class(fx.structure, b.d);
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, source + ": " + e.what());
  }
  return fx;
}

std::string fixture_dir() {
  if (const char* env = std::getenv("K3B_FIXTURE_DIR")) return env;
  return K3B_FIXTURE_DIR;
}

std::vector<std::string> shipped_fixtures() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(fixture_dir(), ec))
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

Fixture load_fixture(const std::string& path_or_name) {
  std::string path = path_or_name;
  if (!std::filesystem::exists(path)) {
    const std::string shipped = fixture_dir() + "/" + path_or_name + ".json";
    if (!std::filesystem::exists(shipped)) throw Error(ErrorCode::ParseError, "no such fixture: " + path_or_name);
    path = shipped;
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str(), path);
}

std::string dump_fixture(const Fixture& fx) {
  const K3HodgeStructure& h = fx.structure;
  const size_t r = h.rank();
  ojson j;
  j["name"] = fx.name;
  ojson gram = ojson::array();
  for (size_t i = 0; i < r; ++i) gram.push_back(rationals_json(h.lattice.gram().row(i)));
  j["lattice"]["rank"] = r;
  j["lattice"]["gram"] = gram;
  j["field"]["minpoly"] = rationals_json(h.field->minpoly().coeffs());
  j["field"]["conj_image"] = rationals_json(h.field->conj_image());
  const Box& box = h.field->embedding_box();
  j["field"]["embedding"]["re"] = rationals_json({box.re.lo, box.re.hi});
  j["field"]["embedding"]["im"] = rationals_json({box.im.lo, box.im.hi});
  ojson per = ojson::array();
  for (const auto& x : h.period) per.push_back(rationals_json(x.coeffs()));
  j["period"] = per;
  if (!fx.brilliant.empty()) j["brilliant"] = blocks_json(fx.brilliant);
  if (!fx.two_class.empty()) j["two_class"] = blocks_json(fx.two_class);
  return j.dump(2) + "\n";
}

void save_fixture(const Fixture& fx, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << dump_fixture(fx);
}

namespace {

QMatrix trace_form(const FieldPtr& k, const FieldElement& xi) {
  const size_t m = k->degree();
  const FieldElement g = FieldElement::generator(k);
  QMatrix gram(m, m);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b) {
      const QMatrix mm = multiplication_matrix(xi * nf_pow(g, a) * nf_conjugate(nf_pow(g, b)));
      Rational tr = 0;
      for (size_t i = 0; i < m; ++i) tr += mm(i, i);
      gram(a, b) = tr;
    }
  std::vector<Rational> flat = gram.flat();
  return lcm_of_denominators(flat) * gram;
}

bool k3_signature(const QMatrix& gram) { return signature(gram) == SignatureTriple{2, gram.rows() - 2, 0}; }

KVector eigenvector(const FieldPtr& k) {
  const size_t n = k->degree();
  const FieldElement g = FieldElement::generator(k);
  const QMatrix mg = multiplication_matrix(g);
  std::vector<KVector> rows;
  for (size_t i = 0; i < n; ++i) {
    KVector row = to_kvector(mg.row(i), k);
    row[i] -= g;
    rows.push_back(row);
  }
  const auto ns = nullspace_over(rows, k, n);
  if (ns.size() != 1) throw Error(ErrorCode::InternalInconsistency, "eigenspace of the generator is not a line");
  return ns[0];
}

// Signature (2, n-2) with sigma0 in the positive part.
bool acceptable(const QMatrix& gram, const KVector& sigma) {
  return k3_signature(gram) && nf_sign(hermitian_norm(gram, sigma)) > 0;
}

}  // namespace

Fixture generate_cm_fixture(const FieldPtr& k, const FieldElement& xi, const std::string& name) {
  const size_t n = k->degree();
  if (n != 2 && n != 4) throw Error(ErrorCode::InvalidArgument, "CM fixtures need degree 2 or 4");
  if (count_real_roots(k->minpoly()) != 0) throw Error(ErrorCode::NotCMField, "field has a real embedding");
  if (roots_in_field(k, k->minpoly()).size() != n) throw Error(ErrorCode::NotCMField, "field is not Galois");
  const Basis fixed = nullspace(k->conj_matrix() - QMatrix::identity(n));
  if (fixed.size() * 2 != n) throw Error(ErrorCode::NotCMField, "conjugation does not fix a subfield of half degree");
  for (const auto& v : fixed)
    if (!nf_is_totally_real(nf_minimal_polynomial(FieldElement(k, v))))
      throw Error(ErrorCode::NotCMField, "conjugation-fixed subfield is not totally real");
  if (xi.field() != k || xi.is_zero() || nf_conjugate(xi) != xi)
    throw Error(ErrorCode::InvalidArgument, "xi must be a nonzero conj-fixed element of the field");

  const QMatrix gram = trace_form(k, xi);
  const KVector sigma = eigenvector(k);
  if (!acceptable(gram, sigma)) {
    std::string hint;
    int found = 0;
    const FieldElement t = FieldElement(k, fixed.back());
    for (int a = -4; a <= 4 && found < 5; ++a)
      for (int b = -4; b <= 4 && found < 5; ++b) {
        const FieldElement cand = FieldElement(k, Rational(a)) + Rational(b) * t;
        if (cand.is_zero() || !acceptable(trace_form(k, cand), sigma)) continue;
        hint += (found++ ? ", " : "") + to_string(cand);
      }
    throw Error(ErrorCode::WrongSignature, "trace form of xi = " + to_string(xi) + " is not of signature (2, " +
                                               std::to_string(n - 2) + ") with sigma0 positive" +
                                               (found ? "; try xi in {" + hint + "}" : std::string()));
  }

  Fixture fx;
  fx.name = name;
  fx.structure = validate_period(QuadLattice(gram), sigma);
  return fx;
}

}  // namespace k3b
