#pragma once

#include <string>
#include <vector>

namespace briar {

/// A finite group given by an explicit multiplication table.
/// Elements are indices 0..order-1; the identity is pinned to index 0.
struct FiniteGroupTable {
  std::string name;
  int order = 1;
  std::vector<int> mul;  // row-major: mul[a*order + b] = a*b
  std::vector<int> inv;

  int prod(int a, int b) const { return mul[a * order + b]; }
  int inverse(int a) const { return inv[a]; }

  static FiniteGroupTable trivial(std::string name = "1");
  static FiniteGroupTable cyclic(int m, std::string name = "");
  // Validates the table (group axioms, identity at 0) and fills inverses.
  static FiniteGroupTable from_table(std::string name, int order,
                                     std::vector<int> mul);

  // Full-scan check of associativity, identity and inverses.
  bool is_group(std::string* why = nullptr) const;

  bool same_table(const FiniteGroupTable& o) const {
    return order == o.order && mul == o.mul;
  }
};

// All isomorphisms a -> b as element permutations (p[identity] = identity).
std::vector<std::vector<int>> table_isomorphisms(const FiniteGroupTable& a,
                                                 const FiniteGroupTable& b);
inline std::vector<std::vector<int>> table_automorphisms(
    const FiniteGroupTable& t) {
  return table_isomorphisms(t, t);
}
bool tables_isomorphic(const FiniteGroupTable& a, const FiniteGroupTable& b);

/// The free product F = A_1 * ... * A_n * F_k.
struct FactorSignature {
  std::vector<FiniteGroupTable> factors;  // every factor has order >= 2
  int free_rank = 0;

  int n() const { return static_cast<int>(factors.size()); }
  int k() const { return free_rank; }

  // Throws UnsupportedSignature on a factor of order < 2 or negative rank.
  void validate() const;
  int factor_index(const std::string& name) const;  // -1 if absent
};

enum class Ends { ZERO, INFINITE, ONE };

struct Classification {
  int dim_L = 0;
  int edge_number = 0;
  Ends ends = Ends::ONE;
};

/// Case table for Out(F): dimension of the spine, edge number 2k+n-1, and
/// the number of ends of Out(F) as a function of (n, k).
Classification classify(int n, int k);
Classification classify(const FactorSignature& sig);

const char* ends_name(Ends e);

}  // namespace briar
