#include "hecke/galois_tower.hpp"

#include <sstream>

namespace hecke {

namespace {

PrimePower checked(unsigned k, u64 ell, unsigned m) {
  if (k < 2) throw DomainError("weight k must be >= 2");
  return PrimePower(ell, m);
}

}  // namespace

u64 r_lm(unsigned k, u64 ell, unsigned m) {
  return gcd(k - 1, euler_phi(checked(k, ell, m)));
}

u64 degree_A(unsigned k, u64 ell, unsigned m) {
  return euler_phi(checked(k, ell, m)) / r_lm(k, ell, m);
}

u64 tower_index(unsigned k, u64 ell, unsigned m) {
  return ell * r_lm(k, ell, m) / r_lm(k, ell, m + 1);
}

BigInt sl2_order(u64 ell, unsigned m) {
  return big_pow(ell, 3 * (m - 1) + 1) * (BigInt(ell) * ell - 1);
}

BigInt generic_image_size(unsigned k, u64 ell, unsigned m) {
  const PrimePower pp = checked(k, ell, m);
  return sl2_order(ell, m) * BigInt(euler_phi(pp)) / BigInt(r_lm(k, ell, m));
}

BigInt generic_L_degree(unsigned k, u64 ell, unsigned m) {
  const PrimePower pp = checked(k, ell, m);
  return sl2_order(ell, m) * BigInt(euler_phi(pp));
}

TowerReport tower_report(unsigned k, u64 ell, unsigned up_to_m) {
  TowerReport rep{k, ell, up_to_m, {},
                  "[A~:A] taken as 1; only [A~:A] <= r <= k-1 is known for small ell"};
  for (unsigned m = 1; m <= up_to_m; ++m) {
    rep.levels.push_back({m, r_lm(k, ell, m), degree_A(k, ell, m), tower_index(k, ell, m),
                          generic_image_size(k, ell, m), generic_L_degree(k, ell, m)});
  }
  return rep;
}

std::string tower_csv(const TowerReport& report) {
  std::ostringstream os;
  os << "m,r,deg_A,index,image_size,L_degree\n";
  for (const auto& lv : report.levels) {
    os << lv.m << ',' << lv.r << ',' << lv.deg_A << ',' << lv.index << ','
       << lv.image_size.get_str() << ',' << lv.L_degree.get_str() << '\n';
  }
  return os.str();
}

}  // namespace hecke
