#include "briar/word.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "briar/errors.hpp"

namespace briar {

void validate_letters(const FactorSignature& sig,
                      const std::vector<Letter>& letters) {
  for (const auto& l : letters) {
    if (l.kind == Letter::FACTOR) {
      if (l.index < 0 || l.index >= sig.n())
        throw InvalidLetter("factor index out of range");
      if (l.elt < 1 || l.elt >= sig.factors[l.index].order)
        throw InvalidLetter("factor element out of range or identity");
    } else {
      if (l.index < 0 || l.index >= sig.k())
        throw InvalidLetter("free generator index out of range");
      if (l.elt != 1 && l.elt != -1) throw InvalidLetter("free sign not +-1");
    }
  }
}

Word reduce_word(const FactorSignature& sig, std::vector<Letter> letters) {
  validate_letters(sig, letters);
  Word out;
  out.letters.reserve(letters.size());
  for (const auto& l : letters) {
    if (!out.letters.empty()) {
      Letter& top = out.letters.back();
      if (l.kind == Letter::FACTOR && top.kind == Letter::FACTOR &&
          l.index == top.index) {
        int p = sig.factors[l.index].prod(top.elt, l.elt);
        if (p == 0)
          out.letters.pop_back();
        else
          top.elt = p;
        continue;
      }
      if (l.kind == Letter::FREE && top.kind == Letter::FREE &&
          l.index == top.index && l.elt == -top.elt) {
        out.letters.pop_back();
        continue;
      }
    }
    out.letters.push_back(l);
  }
  return out;
}

Word word_mul(const FactorSignature& sig, const Word& a, const Word& b) {
  std::vector<Letter> cat = a.letters;
  cat.insert(cat.end(), b.letters.begin(), b.letters.end());
  return reduce_word(sig, std::move(cat));
}

Word word_inverse(const FactorSignature& sig, const Word& w) {
  std::vector<Letter> rev;
  rev.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    Letter l = *it;
    if (l.kind == Letter::FACTOR)
      l.elt = sig.factors[l.index].inverse(l.elt);
    else
      l.elt = -l.elt;
    rev.push_back(l);
  }
  return reduce_word(sig, std::move(rev));
}

namespace {

// Least element of the conjugacy class of `elt` inside its factor.
int factor_class_min(const FiniteGroupTable& t, int elt) {
  int best = elt;
  for (int g = 0; g < t.order; ++g) {
    int c = t.prod(t.prod(g, elt), t.inverse(g));
    best = std::min(best, c);
  }
  return best;
}

}  // namespace

CyclicWord cyclic_normal_form(const FactorSignature& sig, const Word& w) {
  std::vector<Letter> ls = w.letters;
  // cyclic reduction: cancel/merge the seam until stable
  bool changed = true;
  while (changed && ls.size() >= 2) {
    changed = false;
    const Letter& first = ls.front();
    const Letter& last = ls.back();
    if (first.kind == Letter::FREE && last.kind == Letter::FREE &&
        first.index == last.index && first.elt == -last.elt) {
      ls.pop_back();
      ls.erase(ls.begin());
      changed = true;
    } else if (first.kind == Letter::FACTOR && last.kind == Letter::FACTOR &&
               first.index == last.index) {
      int p = sig.factors[first.index].prod(last.elt, first.elt);
      ls.pop_back();
      ls.erase(ls.begin());
      if (p != 0) ls.insert(ls.begin(), Letter::factor(first.index, p));
      changed = true;
    }
  }
  CyclicWord out;
  if (ls.size() == 1 && ls[0].kind == Letter::FACTOR) {
    // elliptic class: normalize within the finite factor
    out.letters = {Letter::factor(
        ls[0].index, factor_class_min(sig.factors[ls[0].index], ls[0].elt))};
    return out;
  }
  if (ls.empty()) return out;
  // canonical rotation: lexicographically least
  std::vector<Letter> best = ls;
  for (size_t r = 1; r < ls.size(); ++r) {
    std::rotate(ls.begin(), ls.begin() + 1, ls.end());
    if (ls < best) best = ls;
  }
  out.letters = std::move(best);
  return out;
}

std::vector<Word> standard_w_words(const FactorSignature& sig) {
  std::vector<Word> out;
  std::set<std::vector<Letter>> seen;
  auto add = [&](std::vector<Letter> raw) {
    Word w = reduce_word(sig, std::move(raw));
    if (w.empty()) return;
    if (seen.insert(w.letters).second) out.push_back(std::move(w));
  };
  const int n = sig.n(), k = sig.k();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int a = 1; a < sig.factors[i].order; ++a)
        for (int b = 1; b < sig.factors[j].order; ++b)
          add({Letter::factor(i, a), Letter::factor(j, b)});
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < sig.factors[j].order; ++a) {
        if (a == 0) {
          add({Letter::free_gen(i, +1)});
        } else {
          add({Letter::free_gen(i, +1), Letter::factor(j, a)});
          add({Letter::factor(j, a), Letter::free_gen(i, +1)});
        }
      }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      add({Letter::free_gen(i, +1), Letter::free_gen(j, +1)});
      add({Letter::free_gen(i, +1), Letter::free_gen(j, -1)});
    }
  return out;
}

std::vector<Word> build_standard_W(const FactorSignature& sig) {
  sig.validate();
  const int n = sig.n(), k = sig.k();
  if (n < 1)
    throw UnsupportedSignature("standard W requires n >= 1");
  // Out(F) must be infinite: reject F_1, A_1, A_1*F_1, A_1*A_2.
  if ((n == 1 && k == 0) || (n == 1 && k == 1) || (n == 2 && k == 0))
    throw UnsupportedSignature("Out(F) is finite for this signature");
  return standard_w_words(sig);
}

std::string word_to_string(const FactorSignature& sig, const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& l : w.letters) {
    if (!first) os << ' ';
    first = false;
    if (l.kind == Letter::FACTOR)
      os << sig.factors[l.index].name << ':' << l.elt;
    else
      os << 's' << (l.index + 1) << (l.elt < 0 ? "^-1" : "");
  }
  return os.str();
}

Word word_from_string(const FactorSignature& sig, const std::string& text) {
  std::istringstream is(text);
  std::vector<Letter> letters;
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    if (tok[0] == 's') {
      int sign = +1;
      std::string body = tok.substr(1);
      auto caret = body.find("^-1");
      if (caret != std::string::npos) {
        sign = -1;
        body = body.substr(0, caret);
      }
      try {
        letters.push_back(Letter::free_gen(std::stoi(body) - 1, sign));
      } catch (const std::exception&) {
        throw ParseError("bad free-generator token: " + tok);
      }
      continue;
    }
    auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw ParseError("bad word token: " + tok);
    int fi = sig.factor_index(tok.substr(0, colon));
    if (fi < 0) throw ParseError("unknown factor in token: " + tok);
    int elt;
    try {
      elt = std::stoi(tok.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParseError("bad element index in token: " + tok);
    }
    letters.push_back(Letter::factor(fi, elt));
  }
  return reduce_word(sig, std::move(letters));
}

}  // namespace briar
