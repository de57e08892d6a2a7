#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "k3b/error.hpp"
#include "k3b/fixtures.hpp"
#include "structures.hpp"

using namespace k3b;
using namespace teststruct;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalInconsistency;
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

bool same_structure(const K3HodgeStructure& a, const K3HodgeStructure& b) {
  if (!(a.lattice == b.lattice) || a.field->minpoly() != b.field->minpoly()) return false;
  if (a.field->conj_image() != b.field->conj_image()) return false;
  if (!intersects(a.field->embedding_box(), b.field->embedding_box())) return false;
  for (size_t i = 0; i < a.rank(); ++i)
    if (a.period[i].coeffs() != b.period[i].coeffs()) return false;
  return true;
}

const char* kSmall = R"({
  "name": "small",
  "lattice": {"rank": 2, "gram": [["2", "0"], ["0", "2"]]},
  "field": {"minpoly": ["1", "0", "1"], "conj_image": ["0", "-1"],
            "embedding": {"re": ["-1/2", "1/2"], "im": ["1/2", "3/2"]}},
  "period": [["1", "0"], ["0", "1"]],
  "brilliant": [{"label": "b", "d": "0"}]
})";

std::string with(std::string text, const std::string& from, const std::string& to) {
  const size_t p = text.find(from);
  REQUIRE(p != std::string::npos);
  return text.replace(p, from.size(), to);
}

}  // namespace

TEST_CASE("shipped fixtures") {
  const auto names = shipped_fixtures();
  CHECK(names == std::vector<std::string>{"cm4", "fermat", "reducible3"});

  const Fixture f = load_fixture("fermat");
  CHECK(same_structure(f.structure, fermat()));
  CHECK(f.structure.lattice.gram() == QMatrix::diagonal({8, 8}));
  REQUIRE(f.brilliant.size() == 3);
  CHECK(classify_domain(f.family("d8")) == DomainClass::TwistorSphere);
  CHECK(classify_domain(f.family("d0")) == DomainClass::BrauerTwoLines);
  CHECK(classify_domain(f.family("dm4")) == DomainClass::DworkTwoHalfPlanes);
  CHECK(f.family("dm4").d == -4);
  CHECK(f.two_class_family("t8").d == 8);
  CHECK(code_of([&] { f.family("nope"); }) == ErrorCode::InvalidArgument);

  const Fixture c = load_fixture("cm4");
  CHECK(same_structure(c.structure, cm4()));
  CHECK(c.two_class_family("tq").d == Rational(1, 4));
  for (const auto& b : c.brilliant) CHECK(c.family(b.label).rank() == 5);

  const Fixture r = load_fixture("reducible3");
  CHECK(signature(r.structure.lattice) == SignatureTriple{2, 1, 0});
  CHECK_FALSE(is_irreducible(r.structure));
  CHECK(code_of([&] { make_family(r.structure, 0); }) == ErrorCode::NotIrreducible);

  CHECK(code_of([] { load_fixture("no-such-fixture"); }) == ErrorCode::ParseError);
}

TEST_CASE("round trip") {
  for (const auto& name : shipped_fixtures()) {
    const Fixture a = load_fixture(name);
    const std::string text = dump_fixture(a);
    const Fixture b = parse_fixture(text);
    CHECK(b.name == a.name);
    CHECK(same_structure(a.structure, b.structure));
    REQUIRE(a.brilliant.size() == b.brilliant.size());
    for (size_t i = 0; i < a.brilliant.size(); ++i) {
      CHECK(a.brilliant[i].label == b.brilliant[i].label);
      CHECK(a.brilliant[i].d == b.brilliant[i].d);
    }
    CHECK(dump_fixture(b) == text);
  }
  const std::string path = (std::filesystem::temp_directory_path() / "k3b_roundtrip.json").string();
  const Fixture s = parse_fixture(kSmall);
  save_fixture(s, path);
  CHECK(same_structure(load_fixture(path).structure, s.structure));
  std::remove(path.c_str());
}

TEST_CASE("parse diagnostics") {
  CHECK(parse_fixture(kSmall).family("b").d == 0);

  const std::string nonsym = with(kSmall, R"([["2", "0"], ["0", "2"]])", R"([["2", "1"], ["0", "2"]])");
  CHECK(code_of([&] { parse_fixture(nonsym); }) == ErrorCode::ParseError);
  CHECK(message_of([&] { parse_fixture(nonsym); }).find("lattice.gram[0][1]") != std::string::npos);

  const std::string syntax = with(kSmall, R"("rank": 2,)", R"("rank": 2,,)");
  CHECK(code_of([&] { parse_fixture(syntax); }) == ErrorCode::ParseError);
  CHECK(message_of([&] { parse_fixture(syntax, "f.json"); }).find("f.json:3:") != std::string::npos);

  const std::string number = with(kSmall, R"([["2", "0"],)", R"([[2, "0"],)");
  CHECK(message_of([&] { parse_fixture(number); }).find("lattice.gram[0][0]") != std::string::npos);

  const std::string badrat = with(kSmall, R"("d": "0")", R"("d": "1/0")");
  CHECK(message_of([&] { parse_fixture(badrat); }).find("brilliant[0].d") != std::string::npos);

  const std::string missing = with(kSmall, R"("conj_image": ["0", "-1"],)", "");
  CHECK(message_of([&] { parse_fixture(missing); }).find("field.conj_image") != std::string::npos);

  const std::string shortrow = with(kSmall, R"(["0", "2"]])", R"(["0"]])");
  CHECK(code_of([&] { parse_fixture(shortrow); }) == ErrorCode::ParseError);

  // Well-formed but not a K3-type structure: sigma = (1, 1) is not isotropic.
  const std::string notiso = with(kSmall, R"([["1", "0"], ["0", "1"]])", R"([["1", "0"], ["1", "0"]])");
  CHECK(code_of([&] { parse_fixture(notiso); }) == ErrorCode::ValidationError);
  CHECK(message_of([&] { parse_fixture(notiso); }).find("NotIsotropic") != std::string::npos);

  const std::string negative = with(kSmall, R"([["2", "0"], ["0", "2"]])", R"([["-2", "0"], ["0", "-2"]])");
  CHECK(code_of([&] { parse_fixture(negative); }) == ErrorCode::ValidationError);

  const std::string badbox = with(kSmall, R"("im": ["1/2", "3/2"])", R"("im": ["2", "3"])");
  CHECK(code_of([&] { parse_fixture(badbox); }) == ErrorCode::ValidationError);
}

TEST_CASE("CM fixture generator on Q(i)") {
  const FieldPtr k = gaussian();
  const Fixture f = generate_cm_fixture(k, FieldElement(k, 4), "gen");
  CHECK(f.structure.lattice.gram() == QMatrix::diagonal({8, 8}));
  // Same lattice as the Fermat fixture; the period is its conjugate.
  CHECK(f.structure.period[0] == FieldElement::one(k));
  CHECK(f.structure.period[1] == -FieldElement::generator(k));
  const EndoClassification cls = classify_endo(f.structure, endo_algebra(f.structure));
  CHECK(cls.kind == EndoKind::CM);
  CHECK(cls.degree == 2);

  // Fractional xi is scaled to integrality.
  CHECK(generate_cm_fixture(k, FieldElement(k, Rational(1, 3)), "g").structure.lattice.gram() ==
        QMatrix::diagonal({2, 2}));

  CHECK(code_of([&] { generate_cm_fixture(k, FieldElement(k, -1), "g"); }) == ErrorCode::WrongSignature);
  CHECK(message_of([&] { generate_cm_fixture(k, FieldElement(k, -1), "g"); }).find("try xi in {1") !=
        std::string::npos);
  CHECK(code_of([&] { generate_cm_fixture(k, FieldElement::generator(k), "g"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { generate_cm_fixture(k, FieldElement::zero(k), "g"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("CM fixture generator on Q(zeta5)") {
  const FieldPtr k = cyclotomic5();
  const FieldElement z = FieldElement::generator(k);
  const FieldElement t = z + nf_conjugate(z);  // (sqrt5 - 1)/2
  // Oracle: the trace form has signature (2,2) iff the two real embeddings of
  // xi = a + b t differ in sign, i.e. N(xi) = a^2 - ab - b^2 < 0, and sigma0
  // spans part of the positive plane iff xi is positive at t = 0.618...
  int accepted = 0;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      if (a == 0 && b == 0) continue;
      const FieldElement xi = FieldElement(k, Rational(a)) + Rational(b) * t;
      const bool expect = a * a - a * b - b * b < 0 && a + b * (std::sqrt(5.0) - 1) / 2 > 0;
      bool ok = true;
      try {
        const Fixture f = generate_cm_fixture(k, xi, "g");
        CHECK(signature(f.structure.lattice) == SignatureTriple{2, 2, 0});
        CHECK(f.structure.lattice.integral());
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WrongSignature);
        ok = false;
      }
      CHECK(ok == expect);
      accepted += ok;
    }
  CHECK(accepted > 0);
  CHECK(same_structure(generate_cm_fixture(k, t, "cm4").structure, cm4()));
}

TEST_CASE("CM fixture generator rejects non-CM fields") {
  const FieldPtr real = nf_create(QPoly{-5, 0, 1}, {0, 1}, rect(2, 3, 0, 0));
  CHECK(code_of([&] { generate_cm_fixture(real, FieldElement(real, 1), "g"); }) == ErrorCode::NotCMField);
  // x^4 + 6x^2 + 7: CM over Q(sqrt2), but (3+sqrt2)(3-sqrt2) = 7 is not a
  // square there, so the field is not Galois.
  const FieldPtr ng = nf_create(QPoly{7, 0, 6, 0, 1}, {0, -1, 0, 0}, rect(-1, 1, Rational(205, 100), Rational(215, 100)));
  CHECK(code_of([&] { generate_cm_fixture(ng, FieldElement(ng, 1), "g"); }) == ErrorCode::NotCMField);
  const FieldPtr z7 = nf_create(QPoly{1, 1, 1, 1, 1, 1, 1}, {-1, -1, -1, -1, -1, -1},
                                rect(Rational(6, 10), Rational(65, 100), Rational(77, 100), Rational(8, 10)));
  CHECK(code_of([&] { generate_cm_fixture(z7, FieldElement(z7, 1), "g"); }) == ErrorCode::InvalidArgument);
}
