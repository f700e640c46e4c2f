#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coarsetree/metric_graph.hpp"

namespace coarsetree {

// letters are +-(i+1) for generator i; a, b, c... and A, B, C... for inverses
using Word = std::vector<int>;

Word reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word parse_word(const std::string& s);  // "e" or "" is the identity
std::string format_word(const Word& w);
int word_distance(const Word& u, const Word& v);  // |u^-1 v|
bool shortlex_less(const Word& a, const Word& b);

struct FreeGroupAutomorphism {
  int rank = 2;
  std::vector<Word> images;   // f(generator i)
  std::vector<Word> inverse;  // f^-1(generator i)

  Word apply(const Word& w) const;
  Word apply_inverse(const Word& w) const;
  Word power(const Word& w, int m) const;  // f^m, negative m uses the inverse
  FreeGroupAutomorphism inverted() const { return {rank, inverse, images}; }
  void validate() const;  // f(f^-1(g)) = g for each generator
};

FreeGroupAutomorphism make_automorphism(int rank, const std::vector<std::string>& images,
                                        const std::vector<std::string>& inverse);
FreeGroupAutomorphism fibonacci_automorphism();          // a->ab, b->a
FreeGroupAutomorphism identity_automorphism(int rank);
FreeGroupAutomorphism inner_automorphism(int rank, const Word& g);  // h -> g h g^-1

// every reduced word of length <= radius, shortlex order
std::vector<Word> ball_words(int rank, int radius, std::size_t cap = 1000000);
// Cayley graph of F_rank restricted to the ball, unit edges, labels are words ("e" for the identity)
MetricGraph cayley_ball(int rank, int radius);
Vid find_word(const MetricGraph& ball, const Word& w);

enum class OrbitPolicy { Exact, Greedy };

struct PseudoOrbit {
  std::vector<Word> terms;
  std::vector<int> lengths;
  int K = 0;
  bool valid = true;  // d(y_{i+1}, f(y_i)) <= K rechecked
};
PseudoOrbit automorphism_pseudo_orbit(const FreeGroupAutomorphism& f, const Word& h0, int K, int steps,
                                      OrbitPolicy policy = OrbitPolicy::Exact, std::size_t word_cap = 1 << 20);

struct WeakHyperbolicityReport {
  bool pass = true;
  int checked = 0;
  std::vector<Word> violators;
  std::vector<std::pair<int, int>> violator_lengths;  // (|f^m h|, |f^-m h|)
};
WeakHyperbolicityReport weak_hyperbolicity_test(const FreeGroupAutomorphism& f, int m, double lambda,
                                                int ball_radius, int exceptional_radius,
                                                std::size_t cap = 1000000);

}  // namespace coarsetree
