#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarsetree/flows.hpp"

namespace coarsetree {

struct SectionPair {
  std::vector<int> interval;  // base path
  std::vector<Vid> g0, g1;    // section values along the interval
  double K = 0;
};

struct PairStats {
  std::vector<double> profile;  // fibre distances along the interval
  int mid = 0;
  double Pi0 = 0;     // girth at the midpoint
  double Pi_max = 0;  // max of the two ends
};
PairStats section_pair_stats(const TotalSpace& X, const SectionPair& p);
// whether p is a pair of K-qi sections over its interval
bool is_section_pair(const TotalSpace& X, const SectionPair& p);

struct FlaringOptions {
  std::size_t budget = 1 << 22;  // max states per layer before beam search
  std::uint64_t seed = 1;
  double L0p = -1;               // growth constant a; measured when negative
};

struct FlaringReport {
  std::string kind;
  bool pass = true;
  bool vacuous = false;
  std::string mode = "exact";
  std::uint64_t seed = 1;
  double value = 0;  // tau, R or max violation ratio
  std::vector<std::pair<double, double>> table;  // D -> tau
  std::optional<SectionPair> witness;
  std::vector<double> witness_profile;
  bool growth_ok = true;  // l(n) <= a^n (l(0) + b) on every reported pair
  int pairs_checked = 0;
  std::string note;
};

FlaringReport verify_uniform_flaring(const TotalSpace& X, double K, double M, const std::vector<double>& D_grid,
                                     FlaringOptions opt = {});
FlaringReport verify_exponential_flaring(const TotalSpace& X, double kappa, double lambda, int n, double M,
                                         FlaringOptions opt = {});
FlaringReport verify_bigon_property(const TotalSpace& X, double K, double C, FlaringOptions opt = {});
FlaringReport verify_acylindricity(const TotalSpace& X, double kappa, int tau, double M, FlaringOptions opt = {});

// l(n) <= a^n (l(0) + b) with a = L'0, b = 2 L'0 K, read from either end of the profile
bool growth_bound_holds(const std::vector<double>& profile, double L0p, double K);

}  // namespace coarsetree
