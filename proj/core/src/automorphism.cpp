#include "briar/automorphism.hpp"

#include <algorithm>

#include "briar/errors.hpp"

namespace briar {

void require_a1a2z(const FactorSignature& sig) {
  if (sig.n() != 2 || sig.k() != 1)
    throw SignatureMismatch("this module works over F = A1 * A2 * Z");
}

Word FPAutomorphism::apply(const Word& w) const {
  std::vector<Letter> out;
  for (const auto& l : w.letters) {
    if (l.kind == Letter::FACTOR) {
      const Word& img = factor_images[l.index][l.elt];
      out.insert(out.end(), img.letters.begin(), img.letters.end());
    } else {
      Word img = l.elt > 0 ? t_image : word_inverse(sig, t_image);
      out.insert(out.end(), img.letters.begin(), img.letters.end());
    }
  }
  return reduce_word(sig, std::move(out));
}

Word FPAutomorphism::apply_inverse(const Word& w) const {
  std::vector<Letter> out;
  for (const auto& l : w.letters) {
    if (l.kind == Letter::FACTOR) {
      const Word& img = inv_factor_images[l.index][l.elt];
      out.insert(out.end(), img.letters.begin(), img.letters.end());
    } else {
      Word img = l.elt > 0 ? inv_t_image : word_inverse(sig, inv_t_image);
      out.insert(out.end(), img.letters.begin(), img.letters.end());
    }
  }
  return reduce_word(sig, std::move(out));
}

bool FPAutomorphism::inverse_consistent() const {
  for (int i = 0; i < sig.n(); ++i)
    for (int a = 1; a < sig.factors[i].order; ++a) {
      Word round = apply(inv_factor_images[i][a]);
      if (!(round == Word{{Letter::factor(i, a)}})) return false;
    }
  Word round = apply(inv_t_image);
  return round == Word{{Letter::free_gen(0, 1)}};
}

namespace {

FPAutomorphism blank(const FactorSignature& sig) {
  require_a1a2z(sig);
  FPAutomorphism f;
  f.sig = sig;
  f.factor_images.resize(2);
  f.inv_factor_images.resize(2);
  for (int i = 0; i < 2; ++i) {
    f.factor_images[i].resize(sig.factors[i].order);
    f.inv_factor_images[i].resize(sig.factors[i].order);
    for (int a = 1; a < sig.factors[i].order; ++a) {
      f.factor_images[i][a] = Word{{Letter::factor(i, a)}};
      f.inv_factor_images[i][a] = Word{{Letter::factor(i, a)}};
    }
  }
  f.t_image = Word{{Letter::free_gen(0, 1)}};
  f.inv_t_image = f.t_image;
  return f;
}

Word conj_word(const FactorSignature& sig, const Word& g, const Word& x) {
  return word_mul(sig, word_mul(sig, g, x), word_inverse(sig, g));
}

}  // namespace

FPAutomorphism aut_identity(const FactorSignature& sig) { return blank(sig); }

FPAutomorphism aut_phi(const FactorSignature& sig, int i,
                       const std::vector<int>& perm) {
  FPAutomorphism f = blank(sig);
  std::vector<int> inv(perm.size());
  for (size_t a = 0; a < perm.size(); ++a) inv[perm[a]] = static_cast<int>(a);
  for (int a = 1; a < sig.factors[i].order; ++a) {
    f.factor_images[i][a] = Word{{Letter::factor(i, perm[a])}};
    f.inv_factor_images[i][a] = Word{{Letter::factor(i, inv[a])}};
  }
  return f;
}

FPAutomorphism aut_partial_conj(const FactorSignature& sig, int i, int j,
                                int gamma) {
  FPAutomorphism f = blank(sig);
  Word g{{Letter::factor(i, gamma)}};
  if (gamma == 0) return f;
  Word gi = word_inverse(sig, g);
  for (int a = 1; a < sig.factors[j].order; ++a) {
    Word x{{Letter::factor(j, a)}};
    f.factor_images[j][a] = conj_word(sig, gi, x);
    f.inv_factor_images[j][a] = conj_word(sig, g, x);
  }
  return f;
}

FPAutomorphism aut_alpha_t(const FactorSignature& sig, int i) {
  FPAutomorphism f = blank(sig);
  Word t{{Letter::free_gen(0, 1)}};
  Word ti = word_inverse(sig, t);
  for (int a = 1; a < sig.factors[i].order; ++a) {
    Word x{{Letter::factor(i, a)}};
    f.factor_images[i][a] = conj_word(sig, ti, x);
    f.inv_factor_images[i][a] = conj_word(sig, t, x);
  }
  return f;
}

FPAutomorphism aut_rho(const FactorSignature& sig, int i, int gamma) {
  FPAutomorphism f = blank(sig);
  if (gamma == 0) return f;
  f.t_image = reduce_word(
      sig, {Letter::free_gen(0, 1), Letter::factor(i, gamma)});
  f.inv_t_image = reduce_word(
      sig,
      {Letter::free_gen(0, 1), Letter::factor(i, sig.factors[i].inverse(gamma))});
  return f;
}

FPAutomorphism aut_lambda(const FactorSignature& sig, int i, int gamma) {
  FPAutomorphism f = blank(sig);
  if (gamma == 0) return f;
  f.t_image = reduce_word(
      sig, {Letter::factor(i, gamma), Letter::free_gen(0, 1)});
  f.inv_t_image = reduce_word(
      sig,
      {Letter::factor(i, sig.factors[i].inverse(gamma)), Letter::free_gen(0, 1)});
  return f;
}

FPAutomorphism aut_tau(const FactorSignature& sig) {
  FPAutomorphism f = blank(sig);
  f.t_image = Word{{Letter::free_gen(0, -1)}};
  f.inv_t_image = f.t_image;
  return f;
}

FPAutomorphism aut_theta_tilde(const FactorSignature& sig) {
  return compose(aut_tau(sig), aut_alpha_t(sig, 1));
}

FPAutomorphism compose(const FPAutomorphism& phi, const FPAutomorphism& psi) {
  FPAutomorphism f = blank(phi.sig);
  for (int i = 0; i < 2; ++i)
    for (int a = 1; a < phi.sig.factors[i].order; ++a) {
      f.factor_images[i][a] = phi.apply(psi.factor_images[i][a]);
      f.inv_factor_images[i][a] =
          psi.apply_inverse(phi.inv_factor_images[i][a]);
    }
  f.t_image = phi.apply(psi.t_image);
  f.inv_t_image = psi.apply_inverse(phi.inv_t_image);
  return f;
}

FPAutomorphism inverse(const FPAutomorphism& phi) {
  FPAutomorphism f = phi;
  std::swap(f.factor_images, f.inv_factor_images);
  std::swap(f.t_image, f.inv_t_image);
  return f;
}

bool equal_in_aut(const FPAutomorphism& a, const FPAutomorphism& b) {
  if (!(a.t_image == b.t_image)) return false;
  for (int i = 0; i < 2; ++i)
    for (int x = 1; x < a.sig.factors[i].order; ++x)
      if (!(a.factor_images[i][x] == b.factor_images[i][x])) return false;
  return true;
}

bool is_inner(const FPAutomorphism& chi) {
  const FactorSignature& sig = chi.sig;
  const Word& w = chi.t_image;
  // chi(t) must be of the form p t^m ... p^-1 i.e. conjugate to t; peel the
  // matched ends and collect the conjugator prefix
  std::vector<Letter> letters = w.letters;
  std::vector<Letter> prefix;
  while (letters.size() >= 3) {
    Letter first = letters.front(), last = letters.back();
    Letter last_inv = last;
    if (last.kind == Letter::FACTOR)
      last_inv.elt = sig.factors[last.index].inverse(last.elt);
    else
      last_inv.elt = -last.elt;
    if (!(first == last_inv)) break;
    prefix.push_back(first);
    letters.erase(letters.begin());
    letters.pop_back();
  }
  if (letters.size() != 1 || letters[0].kind != Letter::FREE ||
      letters[0].index != 0 || letters[0].elt != 1)
    return false;
  Word p;
  p.letters = prefix;  // already in order, reduced as a subword
  // candidates differ by powers of t (the centralizer of t)
  long long bound = 2;
  bound += static_cast<long long>(chi.t_image.size());
  for (int i = 0; i < 2; ++i)
    for (int x = 1; x < sig.factors[i].order; ++x)
      bound = std::max(bound,
                       static_cast<long long>(chi.factor_images[i][x].size()));
  for (long long m = -bound; m <= bound; ++m) {
    std::vector<Letter> gl = p.letters;
    for (long long r = 0; r < std::llabs(m); ++r)
      gl.push_back(Letter::free_gen(0, m > 0 ? 1 : -1));
    Word g = reduce_word(sig, gl);
    bool ok = true;
    for (int i = 0; i < 2 && ok; ++i)
      for (int x = 1; x < sig.factors[i].order && ok; ++x) {
        Word target = conj_word(sig, g, Word{{Letter::factor(i, x)}});
        if (!(chi.factor_images[i][x] == target)) ok = false;
      }
    if (ok) {
      Word tt = conj_word(sig, g, Word{{Letter::free_gen(0, 1)}});
      if (chi.t_image == tt) return true;
    }
  }
  return false;
}

bool equal_in_out(const FPAutomorphism& a, const FPAutomorphism& b) {
  return is_inner(compose(a, inverse(b)));
}

}  // namespace briar
