#pragma once

#include <string>
#include <vector>

#include "k3b/brilliant.hpp"
#include "k3b/compose.hpp"

namespace k3b {

struct FamilyBlock {
  std::string label;
  Rational d;
};

/// A Hodge structure with its registered one-class and two-class families.
struct Fixture {
  std::string name;
  K3HodgeStructure structure;
  std::vector<FamilyBlock> brilliant;
  std::vector<FamilyBlock> two_class;

  /// Throws InvalidArgument for an unknown label.
  BrilliantFamily family(const std::string& label) const;
  TwoClassFamily two_class_family(const std::string& label) const;
};

/// Throws ParseError (with line or field path) or ValidationError.
Fixture parse_fixture(const std::string& text, const std::string& source = "<string>");
/// A path, or the name of a shipped fixture.
Fixture load_fixture(const std::string& path_or_name);
/// Pretty-printed, keys in a fixed order, rationals as "p/q" strings.
std::string dump_fixture(const Fixture& fixture);
void save_fixture(const Fixture& fixture, const std::string& path);

std::string fixture_dir();
std::vector<std::string> shipped_fixtures();

/// T = K with (x, y) = Tr(xi x conj y), scaled to integrality, and sigma0
/// the eigenvector of multiplication by the generator g for g itself.
/// K must be Galois and CM of degree 2 or 4, xi conj-fixed and nonzero.
/// Throws NotCMField, InvalidArgument, or WrongSignature listing small xi
/// that would work.
Fixture generate_cm_fixture(const FieldPtr& field, const FieldElement& xi, const std::string& name);

}  // namespace k3b
