#pragma once

#include <string>
#include <vector>

#include "briar/word.hpp"

namespace briar {

/// An automorphism of F = A_1 * A_2 * <t>, stored as the images of every
/// finite-factor element and of t, together with the images under a
/// compositionally maintained inverse.
struct FPAutomorphism {
  FactorSignature sig;  // n = 2, k = 1
  std::vector<std::vector<Word>> factor_images;      // [i][elt]
  Word t_image;
  std::vector<std::vector<Word>> inv_factor_images;  // inverse candidate
  Word inv_t_image;

  Word apply(const Word& w) const;
  Word apply_inverse(const Word& w) const;
  /// Checks that the stored inverse composes to the identity on generators.
  bool inverse_consistent() const;
};

void require_a1a2z(const FactorSignature& sig);

FPAutomorphism aut_identity(const FactorSignature& sig);
/// Factor automorphism acting on A_i by the table automorphism `perm`.
FPAutomorphism aut_phi(const FactorSignature& sig, int i,
                       const std::vector<int>& perm);
/// Partial conjugation of A_j by gamma in A_i: x -> gamma^-1 x gamma.
FPAutomorphism aut_partial_conj(const FactorSignature& sig, int i, int j,
                                int gamma);
/// Partial conjugation of A_i by t: x -> t^-1 x t.
FPAutomorphism aut_alpha_t(const FactorSignature& sig, int i);
/// Right transvection: t -> t gamma (gamma in A_i).
FPAutomorphism aut_rho(const FactorSignature& sig, int i, int gamma);
/// Left transvection: t -> gamma t.
FPAutomorphism aut_lambda(const FactorSignature& sig, int i, int gamma);
/// t -> t^-1.
FPAutomorphism aut_tau(const FactorSignature& sig);
/// theta-tilde = tau alpha_{t2}: a1 -> a1, a2 -> t a2 t^-1, t -> t^-1.
FPAutomorphism aut_theta_tilde(const FactorSignature& sig);

/// compose(phi, psi) applies psi first (automorphisms act on the left).
FPAutomorphism compose(const FPAutomorphism& phi, const FPAutomorphism& psi);
FPAutomorphism inverse(const FPAutomorphism& phi);

bool equal_in_aut(const FPAutomorphism& a, const FPAutomorphism& b);
/// phi and psi agree in Out(F): phi psi^-1 is an inner automorphism. The
/// conjugator is solved from the image of t and verified on every
/// generator.
bool equal_in_out(const FPAutomorphism& a, const FPAutomorphism& b);
bool is_inner(const FPAutomorphism& a);

}  // namespace briar
