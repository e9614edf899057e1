#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/log_quantity.hpp"
#include "selfsim/perm.hpp"
#include "selfsim/tree.hpp"

namespace selfsim {

struct Letter {
  int gen;   // index into GroupSpec::generators
  int power; // nonzero, may be negative
};
using Word = std::vector<Letter>;

struct Generator {
  std::string name;
  Perm root;                          // 0-based one-line
  std::vector<Word> sections;         // one per child
  std::vector<std::string> section_text;
};

struct GgsInfo {
  int p = 0;
  std::vector<int> alpha;
  bool constant = false;
};

/// A self-similar group given by its wreath recursion.  Two flavours:
///  * table: finitely many generators g = (w_1, ..., w_m) root;
///  * wreath: the closed group of all portraits with labels in a fixed
///    H <= Sym(m).  That group is not finitely generated, so its quotients
///    use a level-dependent generating family (see level_generators).
struct GroupSpec {
  enum class Kind { table, wreath };

  std::string name;
  int arity = 2;
  Kind kind = Kind::table;
  std::vector<Generator> generators;
  std::vector<Perm> pattern_group;  // wreath: every element of H
  std::optional<GgsInfo> ggs;
  std::vector<std::string> warnings;

  std::optional<int> generator_index(const std::string& name) const;
  /// Canonical JSON form (also what spec files parse into).
  json to_json() const;
};

/// Parses "a b^-1 a^2" against the generator names; "" is the identity.
Word parse_word(const std::string& text, const std::vector<std::string>& names);

GroupSpec ggs_spec(int p, const std::vector<int>& alpha);
GroupSpec grigorchuk_spec();
GroupSpec wreath_spec(int m, const std::vector<Perm>& h);
/// <sigma> <= Sym(q) with sigma = (1 2 ... q).
std::vector<Perm> cyclic_pattern_group(int q);
std::vector<Perm> symmetric_pattern_group(int m);
/// Finite group generated by the rooted q-cycle alone.
GroupSpec rooted_spec(int m);
/// No generators.
GroupSpec trivial_spec(int m);

/// Builds a table spec, validating names and permutations.
struct GeneratorText {
  std::string name;
  std::vector<int> root;  // 1-based
  std::vector<std::string> sections;
};
GroupSpec table_spec(int m, const std::vector<GeneratorText>& gens, std::string name = "custom");

/// JSON spec with presets; unknown fields are rejected, errors carry the
/// offending field path.
GroupSpec parse_spec(const json& j);
GroupSpec load_spec_file(const std::string& path);

bool is_symmetric(const std::vector<int>& alpha, int p);
int circulant_rank(const std::vector<int>& alpha, int p);

/// Depth-n portrait of a named generator (memoized per call tree).
Portrait truncate_generator(const GroupSpec& spec, const std::string& name, int n);

/// Memoizing unroller shared by everything that truncates generators.
class Unroller {
 public:
  explicit Unroller(const GroupSpec& spec) : spec_(&spec) {}
  const Portrait& generator(int index, int n);
  Portrait word(const Word& w, int n);

 private:
  const GroupSpec* spec_;
  std::map<std::pair<int, int>, Portrait> memo_;
};

/// Portraits generating G_n: the truncated generators for a table spec, the
/// labels of H placed at orbit representatives of every level for a wreath.
std::vector<Portrait> level_generators(const GroupSpec& spec, int n);

/// Every label of every generator, at every depth < n, lies in <(1 2 ... q)>.
bool labels_in_cyclic(const GroupSpec& spec, int n);

}  // namespace selfsim
