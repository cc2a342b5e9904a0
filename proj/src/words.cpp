#include "casson/words.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace casson {

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) { reduce(); }

void Word::reduce() {
  std::vector<Letter> out;
  for (const Letter& l : letters_) {
    if (l.exp != 1 && l.exp != -1) throw WordError("letter exponent must be +-1");
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
      out.pop_back();
    else
      out.push_back(l);
  }
  letters_ = std::move(out);
}

Word Word::parse(const std::string& src, const std::vector<std::string>& generators) {
  auto is_gen = [&](const std::string& s) {
    return std::find(generators.begin(), generators.end(), s) != generators.end();
  };
  auto lower_of = [&](char c) -> std::optional<std::string> {
    std::string low(1, char(std::tolower(c)));
    if (std::isupper(static_cast<unsigned char>(c)) && is_gen(low)) return low;
    return std::nullopt;
  };

  std::vector<Letter> letters;
  std::istringstream in(src);
  std::string tok;
  bool any = false;
  auto push = [&](const std::string& g, int count) {
    for (int i = 0; i < std::abs(count); ++i) letters.push_back({g, count > 0 ? 1 : -1});
  };
  while (in >> tok) {
    any = true;
    if (tok == "1") continue;  // identity token (str() of the empty word)
    std::string base = tok;
    int exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      base = tok.substr(0, caret);
      std::string es = tok.substr(caret + 1);
      try {
        size_t pos = 0;
        exp = std::stoi(es, &pos);
        if (pos != es.size()) throw std::invalid_argument(es);
      } catch (const std::exception&) {
        throw WordError("malformed exponent in token '" + tok + "'");
      }
    }
    if (is_gen(base)) {
      push(base, exp);
      continue;
    }
    if (base.size() == 1) {
      if (auto low = lower_of(base[0])) {
        push(*low, -exp);
        continue;
      }
      throw WordError("unknown generator '" + base + "'");
    }
    // contiguous single-letter form
    if (caret != std::string::npos)
      throw WordError("exponent not allowed on letter run '" + tok + "'");
    for (char c : base) {
      std::string s(1, c);
      if (is_gen(s)) {
        push(s, 1);
      } else if (auto low = lower_of(c)) {
        push(*low, -1);
      } else {
        throw WordError("unknown generator '" + s + "'");
      }
    }
  }
  if (!any) throw WordError("empty word source");
  return Word(std::move(letters));
}

Word Word::inverse() const {
  std::vector<Letter> out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.push_back({it->gen, -it->exp});
  return Word(std::move(out));
}

Word Word::operator*(const Word& o) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), o.letters_.begin(), o.letters_.end());
  return Word(std::move(out));
}

Word Word::pow(int n) const {
  Word base = n >= 0 ? *this : inverse();
  Word acc;
  for (int i = 0; i < std::abs(n); ++i) acc = acc * base;
  return acc;
}

std::map<std::string, int> Word::exponent_sums() const {
  std::map<std::string, int> sums;
  for (const Letter& l : letters_) sums[l.gen] += l.exp;
  return sums;
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Letter& l : letters_) {
    if (!first) os << " ";
    os << l.gen;
    if (l.exp < 0) os << "^-1";
    first = false;
  }
  return os.str();
}

bool Presentation::longitude_in_commutator_subgroup() const {
  for (const auto& [g, s] : longitude.exponent_sums())
    if (s != 0) return false;
  return true;
}

nlohmann::json Presentation::to_json() const {
  nlohmann::json j;
  j["generators"] = generators;
  nlohmann::json rels = nlohmann::json::array();
  for (const Word& r : relators) rels.push_back(r.str());
  j["relators"] = rels;
  j["meridian"] = meridian.str();
  j["longitude"] = longitude.str();
  return j;
}

Presentation Presentation::from_json(const nlohmann::json& j) {
  Presentation p;
  p.generators = j.at("generators").get<std::vector<std::string>>();
  for (const auto& r : j.at("relators"))
    p.relators.push_back(Word::parse(r.get<std::string>(), p.generators));
  p.meridian = Word::parse(j.at("meridian").get<std::string>(), p.generators);
  p.longitude = Word::parse(j.at("longitude").get<std::string>(), p.generators);
  return p;
}

Mat2c identity_c() { return Mat2c::identity(Cplx(1.0), Cplx(0.0)); }
Mat2q identity_q() { return Mat2q::identity(Rat(1), Rat(0)); }
Mat2p identity_p(const std::vector<std::string>& vars) {
  return Mat2p::identity(MPoly::constant(vars, 1), MPoly(vars));
}

double frobenius_norm(const Mat2c& m) {
  return std::sqrt(std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d));
}

}  // namespace casson
