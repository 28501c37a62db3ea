#pragma once

#include <string>
#include <vector>

#include "briar/automorphism.hpp"

namespace briar {

struct CatalogRow {
  std::string item;    // relation number or named check
  std::string params;  // instantiation
  bool pass = false;
};

struct CatalogReport {
  std::vector<CatalogRow> rows;
  bool all_pass = true;
  long long instances = 0;
};

/// Machine verification of the defining relation catalog for
/// Out(A1 * A2 * Z) over every parameter value, plus the theta-tilde
/// involution, the theta-conjugation consistency on Hol(A1) x Hol(A2),
/// and the commuting-wings structure of H_0. Factor orders <= 12.
CatalogReport verify_catalog(const FiniteGroupTable& A1,
                             const FiniteGroupTable& A2);

/// Negative control: a deliberately corrupted relation (a rho swapped for
/// a lambda) must fail. Returns true when the corruption is detected.
bool corrupted_relation_detected(const FiniteGroupTable& A1,
                                 const FiniteGroupTable& A2);

}  // namespace briar
