#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conjforge/rational.hpp"

namespace conjforge::rootsys {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct RootSystemKind {
  Family family;
  int rank;

  std::string str() const;
  // Parses "A2", "F4", "E8", ... Throws std::invalid_argument.
  static RootSystemKind parse(const std::string& s);
  bool operator==(const RootSystemKind&) const = default;
};

// Throws std::invalid_argument naming the violated constraint.
void validate_kind(const RootSystemKind& kind);

// A positive root is its integer coefficient vector over the simple roots.
using Root = std::vector<int>;

inline int height(const Root& r) {
  int h = 0;
  for (int c : r) h += c;
  return h;
}

std::string root_str(const Root& r);

// Positive root system of a split simple type. Roots are kept abstractly as
// coefficient vectors; every root-ness test goes through the generated list.
class RootSystem {
 public:
  static RootSystem build(RootSystemKind kind);
  // Skips the public rank constraints; used for folding parents such as D3.
  static RootSystem build_unchecked(RootSystemKind kind);

  const RootSystemKind& kind() const { return kind_; }
  int rank() const { return kind_.rank; }
  int size() const { return static_cast<int>(positives_.size()); }

  const std::vector<Root>& positives() const { return positives_; }
  const Root& root(int i) const { return positives_[i]; }
  int height_of(int i) const { return heights_[i]; }
  int max_height() const { return max_height_; }
  bool is_simple(int i) const { return heights_[i] == 1; }
  // Index of the i-th simple root (unit vector at i).
  int simple_index(int i) const { return simple_index_[i]; }
  // Which simple a unit root is; -1 for non-simple.
  int simple_pos(int i) const { return heights_[i] == 1 ? simple_of_[i] : -1; }

  std::optional<int> index_of(const Root& r) const;
  bool is_positive_root(const Root& r) const { return index_of(r).has_value(); }

  // sum_root: index of a+b when a positive root, nullopt otherwise.
  std::optional<int> sum(int a, int b) const;

  // Count of positive roots of each height (index 0 unused).
  const std::vector<int>& height_counts() const { return height_counts_; }
  std::vector<int> roots_of_height(int h) const;

  // Exact Gram matrix (alpha_i, alpha_j) in the standard normalization
  // (long roots of squared length 2).
  const std::vector<std::vector<Rat>>& gram() const { return gram_; }
  // <lambda, alpha_i^vee> for an arbitrary integer vector lambda.
  int pairing_with_simple_coroot(const Root& lambda, int i) const;

 private:
  RootSystemKind kind_;
  std::vector<Root> positives_;  // listed by height, then descending lex
  std::vector<int> heights_;
  std::vector<int> height_counts_;
  int max_height_ = 1;
  std::vector<int> simple_index_;
  std::vector<int> simple_of_;
  std::map<Root, int> index_;
  std::vector<std::vector<int>> sum_table_;  // -1 when not a root
  std::vector<std::vector<Rat>> gram_;
};

// Lemma-style elimination certificate for one non-simple positive root.
struct WitnessSingle {
  int mu;      // positive-root index
  int simple;  // positive-root index of the simple with mu + simple = target
  bool operator==(const WitnessSingle&) const = default;
};
struct WitnessPair {
  int mu1;
  int mu2;
  int simple;  // mu1 + mu2 + simple = target, mu1 + mu2 not a root
  bool operator==(const WitnessPair&) const = default;
};
using Witness = std::variant<WitnessSingle, WitnessPair>;

struct ReductionOrder {
  std::vector<int> sequence;  // permutation of all positive indices, least first
  std::vector<int> position;  // inverse permutation
  std::map<int, Witness> witnesses;  // one entry per non-simple positive root

  bool less(int a, int b) const { return position[a] < position[b]; }
};

struct OrderViolation {
  int root;  // offending non-simple root (or -1 for structural problems)
  std::string reason;
};

// Paper orderings and witnesses for A/B/C/D/F4/G2; E-series falls back to the
// canonicalized search result.
ReductionOrder builtin_order(const RootSystem& rs);

// Height-primary backtracking search for an ordering satisfying the witness
// conditions. Single witnesses are preferred; pairs only where no single
// exists. Deterministic (canonical tie-breaks).
ReductionOrder search_order(const RootSystem& rs);

// Checks the witness conditions against the order. Empty result = valid.
std::vector<OrderViolation> verify_order(const RootSystem& rs, const ReductionOrder& order);

}  // namespace conjforge::rootsys
