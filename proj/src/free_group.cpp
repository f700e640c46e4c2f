#include "coarsetree/free_group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>

#include "coarsetree/error.hpp"

namespace coarsetree {

Word reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduce(out);
}

Word parse_word(const std::string& s) {
  Word w;
  if (s == "e") return w;
  for (char c : s) {
    if (c >= 'a' && c <= 'z')
      w.push_back(c - 'a' + 1);
    else if (c >= 'A' && c <= 'Z')
      w.push_back(-(c - 'A' + 1));
    else
      throw StructuralError(std::string("bad letter '") + c + "' in word " + s);
  }
  return reduce(w);
}

std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (int x : w) s.push_back(x > 0 ? static_cast<char>('a' + x - 1) : static_cast<char>('A' - x - 1));
  return s;
}

int word_distance(const Word& u, const Word& v) { return static_cast<int>(concat(inverse(u), v).size()); }

// letter order a < A < b < B < ...
static int letter_key(int x) { return 2 * (std::abs(x) - 1) + (x < 0); }

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return letter_key(a[i]) < letter_key(b[i]);
  return false;
}

static Word substitute(const std::vector<Word>& img, const Word& w) {
  Word out;
  for (int x : w) {
    const Word& g = img[std::abs(x) - 1];
    if (x > 0)
      out.insert(out.end(), g.begin(), g.end());
    else {
      Word gi = inverse(g);
      out.insert(out.end(), gi.begin(), gi.end());
    }
  }
  return reduce(out);
}

Word FreeGroupAutomorphism::apply(const Word& w) const { return substitute(images, w); }
Word FreeGroupAutomorphism::apply_inverse(const Word& w) const { return substitute(inverse, w); }

Word FreeGroupAutomorphism::power(const Word& w, int m) const {
  Word out = w;
  for (int i = 0; i < std::abs(m); ++i) out = m > 0 ? apply(out) : apply_inverse(out);
  return out;
}

void FreeGroupAutomorphism::validate() const {
  if (rank < 1) throw StructuralError("automorphism rank must be positive");
  if (static_cast<int>(images.size()) != rank || static_cast<int>(inverse.size()) != rank)
    throw StructuralError("automorphism needs one image and one inverse image per generator");
  for (const auto* table : {&images, &inverse})
    for (const auto& w : *table)
      for (int x : w)
        if (x == 0 || std::abs(x) > rank) throw StructuralError("automorphism image uses a letter beyond the rank");
  for (int i = 1; i <= rank; ++i) {
    if (apply(apply_inverse({i})) != Word{i} || apply_inverse(apply({i})) != Word{i})
      throw StructuralError("inverse images do not invert generator " + format_word({i}));
  }
}

FreeGroupAutomorphism make_automorphism(int rank, const std::vector<std::string>& images,
                                        const std::vector<std::string>& inv) {
  FreeGroupAutomorphism f;
  f.rank = rank;
  for (const auto& s : images) f.images.push_back(parse_word(s));
  for (const auto& s : inv) f.inverse.push_back(parse_word(s));
  f.validate();
  return f;
}

FreeGroupAutomorphism fibonacci_automorphism() { return make_automorphism(2, {"ab", "a"}, {"b", "Ba"}); }

FreeGroupAutomorphism identity_automorphism(int rank) {
  FreeGroupAutomorphism f;
  f.rank = rank;
  for (int i = 1; i <= rank; ++i) {
    f.images.push_back({i});
    f.inverse.push_back({i});
  }
  return f;
}

FreeGroupAutomorphism inner_automorphism(int rank, const Word& g) {
  FreeGroupAutomorphism f;
  f.rank = rank;
  Word gi = inverse(g);
  for (int i = 1; i <= rank; ++i) {
    f.images.push_back(concat(concat(g, {i}), gi));
    f.inverse.push_back(concat(concat(gi, {i}), g));
  }
  f.validate();
  return f;
}

std::vector<Word> ball_words(int rank, int radius, std::size_t cap) {
  std::vector<int> letters;
  for (int i = 1; i <= rank; ++i) {
    letters.push_back(i);
    letters.push_back(-i);
  }
  std::vector<Word> out{{}};
  size_t begin = 0;
  for (int len = 1; len <= radius; ++len) {
    size_t end = out.size();
    for (size_t k = begin; k < end; ++k)
      for (int x : letters) {
        if (!out[k].empty() && out[k].back() == -x) continue;
        Word w = out[k];
        w.push_back(x);
        out.push_back(std::move(w));
        if (out.size() > cap) throw OverflowError("ball enumeration exceeds the word cap");
      }
    begin = end;
  }
  std::stable_sort(out.begin(), out.end(), shortlex_less);
  return out;
}

MetricGraph cayley_ball(int rank, int radius) {
  auto words = ball_words(rank, radius);
  MetricGraph g;
  std::map<Word, Vid> id;
  for (const auto& w : words) id[w] = g.add_vertex(format_word(w));
  for (const auto& w : words) {
    if (w.empty()) continue;
    Word parent(w.begin(), w.end() - 1);
    g.add_edge(id[parent], id[w]);
  }
  return g;
}

Vid find_word(const MetricGraph& ball, const Word& w) { return ball.find_label(format_word(w)); }

PseudoOrbit automorphism_pseudo_orbit(const FreeGroupAutomorphism& f, const Word& h0, int K, int steps,
                                      OrbitPolicy policy, std::size_t word_cap) {
  if (reduce(h0) != h0) throw PreconditionError("starting word is not reduced");
  if (K < 0) throw PreconditionError("K must be nonnegative");
  PseudoOrbit o;
  o.K = K;
  if (steps <= 0) return o;
  size_t max_img = 1;
  for (const auto& w : f.images) max_img = std::max(max_img, w.size());
  std::vector<Word> perturb;
  if (policy == OrbitPolicy::Greedy) perturb = ball_words(f.rank, K);
  o.terms.push_back(h0);
  while (static_cast<int>(o.terms.size()) < steps) {
    if (o.terms.back().size() * max_img > word_cap) throw OverflowError("pseudo-orbit exceeds the word-length cap");
    Word img = f.apply(o.terms.back());
    if (policy == OrbitPolicy::Greedy) {
      Word best = img;
      for (const auto& g : perturb) {
        Word c = concat(img, g);
        if (shortlex_less(c, best)) best = c;
      }
      img = best;
    }
    o.terms.push_back(img);
  }
  for (size_t i = 0; i < o.terms.size(); ++i) {
    o.lengths.push_back(static_cast<int>(o.terms[i].size()));
    if (i > 0 && word_distance(o.terms[i], f.apply(o.terms[i - 1])) > K) o.valid = false;
  }
  return o;
}

WeakHyperbolicityReport weak_hyperbolicity_test(const FreeGroupAutomorphism& f, int m, double lambda,
                                                int ball_radius, int exceptional_radius, std::size_t cap) {
  if (m < 1) throw PreconditionError("m must be at least 1");
  if (!(lambda > 1)) throw PreconditionError("lambda must exceed 1");
  WeakHyperbolicityReport r;
  for (const auto& h : ball_words(f.rank, ball_radius, cap)) {
    if (static_cast<int>(h.size()) <= exceptional_radius) continue;
    ++r.checked;
    int a = static_cast<int>(f.power(h, m).size());
    int b = static_cast<int>(f.power(h, -m).size());
    if (lambda * static_cast<double>(h.size()) > std::max(a, b) + kTol) {
      r.violators.push_back(h);
      r.violator_lengths.push_back({a, b});
    }
  }
  r.pass = r.violators.empty();
  return r;
}

}  // namespace coarsetree
