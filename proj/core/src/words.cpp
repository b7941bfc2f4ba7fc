#include "mfrep/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace mfrep {

namespace {

bool is_gen_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_gen_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<syllable> reduce_syllables(const std::vector<syllable>& syllables) {
  std::vector<syllable> out;
  for (const syllable& s : syllables) {
    if (s.exp == 0) continue;
    if (!out.empty() && out.back().gen == s.gen) {
      out.back().exp += s.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

word::word(std::vector<syllable> syllables) : syllables_(reduce_syllables(syllables)) {}

word reduce(const std::vector<syllable>& syllables) { return word(syllables); }

word word::parse(const std::string& text) {
  std::vector<syllable> syllables;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (!is_gen_start(text[i])) throw parse_error("expected generator name", i);
    std::size_t start = i;
    ++i;
    while (i < n && is_gen_char(text[i])) ++i;
    if (i < n && text[i] == '-' && i + 1 < n && is_digit(text[i + 1])) {
      ++i;  // indexed name like "a-3"
      while (i < n && is_digit(text[i])) ++i;
    }
    std::string gen = text.substr(start, i - start);
    long long exp = 1;
    if (i < n && text[i] == '^') {
      ++i;
      std::size_t exp_start = i;
      if (i < n && text[i] == '-') ++i;
      std::size_t digits_start = i;
      while (i < n && is_digit(text[i])) ++i;
      if (i == digits_start) throw parse_error("expected exponent digits", exp_start);
      auto res = std::from_chars(text.data() + exp_start, text.data() + i, exp);
      if (res.ec != std::errc() || res.ptr != text.data() + i)
        throw parse_error("exponent out of range", exp_start);
      if (exp == 0) throw parse_error("exponent 0 is not allowed", exp_start);
    }
    if (i < n && !std::isspace(static_cast<unsigned char>(text[i])))
      throw parse_error("unexpected character in word", i);
    syllables.push_back({std::move(gen), exp});
  }
  return reduce(syllables);
}

std::string word::str() const {
  std::string out;
  for (const syllable& s : syllables_) {
    if (!out.empty()) out += ' ';
    out += s.gen;
    if (s.exp != 1) {
      out += '^';
      out += std::to_string(s.exp);
    }
  }
  return out;
}

word word::inverse() const {
  std::vector<syllable> rev(syllables_.rbegin(), syllables_.rend());
  for (syllable& s : rev) s.exp = -s.exp;
  return word(std::move(rev));
}

word word::operator*(const word& rhs) const {
  std::vector<syllable> cat = syllables_;
  cat.insert(cat.end(), rhs.syllables_.begin(), rhs.syllables_.end());
  return reduce(cat);
}

void validate(const presentation& pres) {
  std::set<std::string> gens(pres.generators.begin(), pres.generators.end());
  if (gens.size() != pres.generators.size())
    throw std::invalid_argument("presentation '" + pres.name + "': duplicate generator");
  auto check_word = [&](const word& w, const std::string& where) {
    for (const syllable& s : w.syllables())
      if (!gens.count(s.gen))
        throw std::invalid_argument("presentation '" + pres.name + "': undeclared generator '" +
                                    s.gen + "' in " + where);
  };
  for (const word& r : pres.relators) check_word(r, "relator '" + r.str() + "'");
  for (const labeled_word& lw : pres.word_list) {
    check_word(lw.w, "word '" + lw.label + "'");
    if (lw.w.empty() && lw.label.rfind("trivial", 0) != 0)
      throw std::invalid_argument("presentation '" + pres.name + "': word '" + lw.label +
                                  "' reduces to the identity (label it trivial* to keep it)");
  }
}

presentation chain_presentation(long long j) {
  if (j < 0) throw std::invalid_argument("chain_presentation: negative index");
  presentation pres;
  pres.name = "chain_" + std::to_string(j);
  auto gen = [](long long i) { return "a" + std::to_string(i); };
  for (long long i = -j; i <= j; ++i) pres.generators.push_back(gen(i));
  for (long long i = -j; i < j; ++i)
    pres.relators.push_back(word({{gen(i + 1), -1}, {gen(i), 1}, {gen(i + 1), 1}, {gen(i), -2}}));
  return pres;
}

long long generator_index(const std::string& name) {
  if (name.size() >= 2 && name[0] == 'a') {
    long long idx = 0;
    auto res = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
    if (res.ec == std::errc() && res.ptr == name.data() + name.size()) return idx;
  }
  throw std::invalid_argument("generator '" + name + "' is not of the form a<integer>");
}

long long max_k(const word& w) {
  long long best = 0;
  for (const syllable& s : w.syllables()) best = std::max(best, std::llabs(generator_index(s.gen)));
  return best;
}

long long max_k(const std::vector<word>& words) {
  long long best = 0;
  for (const word& w : words) best = std::max(best, max_k(w));
  return best;
}

generator_assignment::generator_assignment(std::map<std::string, unitary_matrix> matrices)
    : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw std::invalid_argument("generator_assignment: empty");
  dim_ = matrices_.begin()->second.dim();
  for (const auto& [name, u] : matrices_) {
    if (u.dim() != dim_)
      throw std::invalid_argument("generator_assignment: dimension mismatch for '" + name + "'");
    double defect;
    if (dim_ <= 1024) {
      defect = u.unitarity_defect();
    } else {
      // fixed deterministic column sample: Gram defect on 128 evenly spaced columns
      const int samples = 128;
      cmatrix cols(dim_, samples);
      for (int k = 0; k < samples; ++k)
        cols.col(k) = u.entries().col(static_cast<Eigen::Index>(k) * dim_ / samples);
      cmatrix g = cols.adjoint() * cols;
      g.diagonal().array() -= 1.0;
      defect = op_norm(g);
    }
    if (defect > unitarity_tol)
      throw std::invalid_argument("generator_assignment: '" + name + "' is not unitary (defect " +
                                  std::to_string(defect) + ")");
  }
}

const unitary_matrix& generator_assignment::at(const std::string& gen) const {
  auto it = matrices_.find(gen);
  if (it == matrices_.end())
    throw std::invalid_argument("generator_assignment: unknown generator '" + gen + "'");
  return it->second;
}

unitary_matrix evaluate(const word& w, const generator_assignment& asg) {
  return evaluate_in(w, asg.matrices());
}

}  // namespace mfrep
