#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "casson/poly.hpp"

namespace casson {

class WordError : public std::runtime_error {
public:
  explicit WordError(const std::string& what) : std::runtime_error(what) {}
};

struct Letter {
  std::string gen;
  int exp;  // +1 or -1
  bool operator==(const Letter& o) const { return gen == o.gen && exp == o.exp; }
};

/// Freely reduced word in a free group over named generators.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  /// Grammar: whitespace-separated tokens "x", "x^3", "x^-1"; uppercase is
  /// inverse shorthand for single-letter generators; a token that is not a
  /// generator name is read as a run of single letters ("yxYX").
  static Word parse(const std::string& src, const std::vector<std::string>& generators);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  size_t size() const { return letters_.size(); }

  Word inverse() const;
  Word operator*(const Word& o) const;
  Word pow(int n) const;
  bool operator==(const Word& o) const { return letters_ == o.letters_; }

  /// Per-generator exponent sums (abelianization image).
  std::map<std::string, int> exponent_sums() const;

  std::string str() const;

private:
  std::vector<Letter> letters_;  // freely reduced
  void reduce();
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  Word meridian;
  Word longitude;

  /// relators/meridian/longitude over declared generators is enforced at
  /// parse time; this checks the longitude abelianization condition.
  bool longitude_in_commutator_subgroup() const;

  nlohmann::json to_json() const;
  static Presentation from_json(const nlohmann::json& j);
};

/// 2x2 matrix over a scalar domain. Determinant-1 inputs are assumed for
/// inverse(), which uses the adjugate.
template <typename T>
struct Mat2 {
  T a, b, c, d;

  static Mat2 identity(const T& one, const T& zero) { return {one, zero, zero, one}; }

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 inverse() const { return {d, -b, -c, a}; }
  T det() const { return a * d - b * c; }
  T trace() const { return a + d; }
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

using Mat2c = Mat2<Cplx>;
using Mat2q = Mat2<Rat>;
using Mat2p = Mat2<MPoly>;

/// Product of assigned matrices and inverses in word order.
template <typename T>
Mat2<T> eval_word(const Word& w, const std::map<std::string, Mat2<T>>& assignment,
                  const Mat2<T>& identity) {
  Mat2<T> acc = identity;
  for (const Letter& l : w.letters()) {
    auto it = assignment.find(l.gen);
    if (it == assignment.end()) throw WordError("unassigned generator " + l.gen);
    acc = acc * (l.exp > 0 ? it->second : it->second.inverse());
  }
  return acc;
}

Mat2c identity_c();
Mat2q identity_q();
Mat2p identity_p(const std::vector<std::string>& vars);

double frobenius_norm(const Mat2c& m);

}  // namespace casson
