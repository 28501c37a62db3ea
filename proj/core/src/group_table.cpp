#include "briar/group_table.hpp"

#include <algorithm>

#include "briar/errors.hpp"

namespace briar {

FiniteGroupTable FiniteGroupTable::trivial(std::string name) {
  FiniteGroupTable t;
  t.name = std::move(name);
  t.order = 1;
  t.mul = {0};
  t.inv = {0};
  return t;
}

FiniteGroupTable FiniteGroupTable::cyclic(int m, std::string name) {
  if (m < 1) throw UnsupportedSignature("cyclic group order must be >= 1");
  FiniteGroupTable t;
  t.name = name.empty() ? ("Z" + std::to_string(m)) : std::move(name);
  t.order = m;
  t.mul.resize(m * m);
  t.inv.resize(m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) t.mul[a * m + b] = (a + b) % m;
    t.inv[a] = (m - a) % m;
  }
  return t;
}

FiniteGroupTable FiniteGroupTable::from_table(std::string name, int order,
                                              std::vector<int> mul) {
  FiniteGroupTable t;
  t.name = std::move(name);
  t.order = order;
  t.mul = std::move(mul);
  std::string why;
  if (order < 1 || static_cast<int>(t.mul.size()) != order * order)
    throw UnsupportedSignature("table size does not match order");
  t.inv.assign(order, -1);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (t.prod(a, b) == 0) t.inv[a] = b;
  if (!t.is_group(&why)) throw UnsupportedSignature("not a group table: " + why);
  return t;
}

bool FiniteGroupTable::is_group(std::string* why) const {
  const int m = order;
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (m < 1 || static_cast<int>(mul.size()) != m * m) return fail("bad size");
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (mul[a * m + b] < 0 || mul[a * m + b] >= m) return fail("entry range");
  for (int a = 0; a < m; ++a)
    if (prod(0, a) != a || prod(a, 0) != a) return fail("identity not at 0");
  for (int a = 0; a < m; ++a) {
    if (inv.size() != static_cast<size_t>(m) || inv[a] < 0)
      return fail("missing inverse");
    if (prod(a, inv[a]) != 0 || prod(inv[a], a) != 0) return fail("bad inverse");
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (prod(prod(a, b), c) != prod(a, prod(b, c)))
          return fail("associativity");
  return true;
}

namespace {

// Backtracking search for element bijections carrying one table to the other.
void iso_search(const FiniteGroupTable& a, const FiniteGroupTable& b,
                std::vector<int>& img, std::vector<bool>& used, int next,
                std::vector<std::vector<int>>& out, bool stop_at_first) {
  const int m = a.order;
  if (stop_at_first && !out.empty()) return;
  if (next == m) {
    out.push_back(img);
    return;
  }
  for (int cand = 1; cand < m; ++cand) {
    if (used[cand]) continue;
    img[next] = cand;
    bool ok = true;
    // check all products among already-assigned elements
    for (int x = 0; x <= next && ok; ++x) {
      if (img[x] < 0) continue;
      int p1 = a.prod(x, next), p2 = a.prod(next, x);
      if (p1 <= next && img[p1] >= 0 && b.prod(img[x], cand) != img[p1]) ok = false;
      if (ok && p2 <= next && img[p2] >= 0 && b.prod(cand, img[x]) != img[p2])
        ok = false;
    }
    if (ok) {
      used[cand] = true;
      iso_search(a, b, img, used, next + 1, out, stop_at_first);
      used[cand] = false;
    }
    img[next] = -1;
  }
}

std::vector<std::vector<int>> isos(const FiniteGroupTable& a,
                                   const FiniteGroupTable& b,
                                   bool stop_at_first) {
  std::vector<std::vector<int>> out;
  if (a.order != b.order) return out;
  const int m = a.order;
  std::vector<int> img(m, -1);
  std::vector<bool> used(m, false);
  img[0] = 0;
  used[0] = true;
  iso_search(a, b, img, used, 1, out, stop_at_first);
  // a full candidate can still violate products involving later elements;
  // filter with a complete check
  std::vector<std::vector<int>> checked;
  for (const auto& p : out) {
    bool ok = true;
    for (int x = 0; x < m && ok; ++x)
      for (int y = 0; y < m && ok; ++y)
        if (p[a.prod(x, y)] != b.prod(p[x], p[y])) ok = false;
    if (ok) checked.push_back(p);
  }
  return checked;
}

}  // namespace

std::vector<std::vector<int>> table_isomorphisms(const FiniteGroupTable& a,
                                                 const FiniteGroupTable& b) {
  return isos(a, b, false);
}

bool tables_isomorphic(const FiniteGroupTable& a, const FiniteGroupTable& b) {
  return !isos(a, b, true).empty();
}

void FactorSignature::validate() const {
  if (free_rank < 0) throw UnsupportedSignature("negative free rank");
  for (const auto& f : factors) {
    std::string why;
    if (!f.is_group(&why))
      throw UnsupportedSignature("factor " + f.name + ": " + why);
    if (f.order < 2)
      throw UnsupportedSignature("factor " + f.name + " is trivial");
  }
}

int FactorSignature::factor_index(const std::string& name) const {
  for (int i = 0; i < n(); ++i)
    if (factors[i].name == name) return i;
  return -1;
}

Classification classify(int n, int k) {
  Classification c;
  c.edge_number = 2 * k + n - 1;
  c.dim_L = (n >= 2) ? (2 * k + n - 2) : std::max(2 * k + n - 3, 0);
  if ((n <= 1 && k <= 1) || (n == 2 && k == 0))
    c.ends = Ends::ZERO;
  else if ((n == 3 && k == 0) || (n == 2 && k == 1) || (n == 0 && k == 2))
    c.ends = Ends::INFINITE;
  else
    c.ends = Ends::ONE;
  return c;
}

Classification classify(const FactorSignature& sig) {
  return classify(sig.n(), sig.k());
}

const char* ends_name(Ends e) {
  switch (e) {
    case Ends::ZERO: return "ZERO";
    case Ends::INFINITE: return "INFINITE";
    case Ends::ONE: return "ONE";
  }
  return "?";
}

}  // namespace briar
