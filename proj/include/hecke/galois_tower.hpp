#pragma once

// Degree bookkeeping for the cyclotomic layer A_{l^m} cut out by the
// determinant character p -> p^{k-1}, and the generic mod l^m image sizes.

#include <string>
#include <vector>

#include "hecke/modring.hpp"

namespace hecke {

/// gcd(k - 1, phi(l^m)).
u64 r_lm(unsigned k, u64 ell, unsigned m);

/// [A_{l^m} : Q] = phi(l^m) / r_{l^m}.
u64 degree_A(unsigned k, u64 ell, unsigned m);

/// [A_{l^{m+1}} : A_{l^m}] = l * r_{l^m} / r_{l^{m+1}}; 1 iff m <= nu_l(k-1).
u64 tower_index(unsigned k, u64 ell, unsigned m);

/// |SL_2(Z/l^m)| = l^{3(m-1)} * l * (l^2 - 1).
BigInt sl2_order(u64 ell, unsigned m);

/// #{A in GL_2(Z/l^m) : det A in (units)^{k-1}} = |SL_2| * phi(l^m) / r_{l^m}.
BigInt generic_image_size(unsigned k, u64 ell, unsigned m);

/// Generic [L_{l^m} : Q] = |SL_2(Z/l^m)| * phi(l^m).
BigInt generic_L_degree(unsigned k, u64 ell, unsigned m);

struct TowerLevel {
  unsigned m;
  u64 r;
  u64 deg_A;
  u64 index;
  BigInt image_size;
  BigInt L_degree;

  friend bool operator==(const TowerLevel&, const TowerLevel&) = default;
};

struct TowerReport {
  unsigned k;
  u64 ell;
  unsigned up_to_m;
  std::vector<TowerLevel> levels;
  /// [A~ : A] is taken as 1; the true value only satisfies [A~ : A] <= r <= k - 1.
  std::string caveat;
};

TowerReport tower_report(unsigned k, u64 ell, unsigned up_to_m);

/// CSV with header m,r,deg_A,index,image_size,L_degree.
std::string tower_csv(const TowerReport& report);

}  // namespace hecke
