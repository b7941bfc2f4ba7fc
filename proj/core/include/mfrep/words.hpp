#pragma once

#include <map>
#include <string>
#include <vector>

#include "mfrep/matkernel.hpp"

namespace mfrep {

// One syllable of a free-group word: a generator name with a nonzero exponent.
struct syllable {
  std::string gen;
  long long exp = 1;

  friend bool operator==(const syllable&, const syllable&) = default;
};

// A freely reduced word. Construction reduces, so two invariants always hold:
// adjacent syllables never share a generator name and no exponent is zero.
class word {
 public:
  word() = default;
  explicit word(std::vector<syllable> syllables);

  // Grammar: word := (gen ('^' '-'? digits)?)* with whitespace separation.
  // gen := [A-Za-z_][A-Za-z0-9_]* with an optional trailing '-' digits run,
  // so indexed names like "a-3" are single tokens. Exponent 0 is rejected.
  // Errors carry the byte offset of the offending token.
  static word parse(const std::string& text);

  const std::vector<syllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }
  std::size_t length() const { return syllables_.size(); }

  std::string str() const;  // parse(str(w)) == w exactly
  word inverse() const;
  word operator*(const word& rhs) const;  // concatenate, then reduce

  friend bool operator==(const word&, const word&) = default;

 private:
  std::vector<syllable> syllables_;
};

// Free reduction of an arbitrary syllable sequence (idempotent).
word reduce(const std::vector<syllable>& syllables);

struct labeled_word {
  std::string label;
  word w;
};

// Finitely presented group data plus the word list used for separation rows.
struct presentation {
  std::string name;
  std::vector<std::string> generators;
  std::vector<word> relators;
  std::vector<labeled_word> word_list;
};

// Checks that every generator used by relators and the word list is declared
// and that word-list entries are nontrivial unless their label says "trivial".
void validate(const presentation& pres);

// Generators a_{-j}..a_j (named "a<i>"), relators a_{i+1}^-1 a_i a_{i+1} a_i^-2
// for i = -j..j-1.
presentation chain_presentation(long long j);

// Index i of an indexed generator name "a<i>"; errors on any other name.
long long generator_index(const std::string& name);

// Largest |i| over indexed generator names a<i> appearing in the words;
// 0 for an empty list or all-empty words. Non-indexed names are an error.
long long max_k(const std::vector<word>& words);
long long max_k(const word& w);

// Map from generator name to a unitary, all of one dimension. Construction
// checks unitarity to unitarity_tol (full Gram defect up to dim 1024, a fixed
// deterministic column sample above).
class generator_assignment {
 public:
  explicit generator_assignment(std::map<std::string, unitary_matrix> matrices);

  int dim() const { return dim_; }
  const std::map<std::string, unitary_matrix>& matrices() const { return matrices_; }
  const unitary_matrix& at(const std::string& gen) const;
  bool contains(const std::string& gen) const { return matrices_.count(gen) != 0; }

 private:
  std::map<std::string, unitary_matrix> matrices_;
  int dim_ = 0;
};

inline unitary_matrix identity_like(const unitary_matrix& u) {
  return unitary_matrix::identity(u.dim());
}
inline block_unitary identity_like(const block_unitary& b) {
  return block_unitary::identity(b.block_dim(), b.count());
}

// Word evaluation over any multiplicative matrix type with adjoint and pow
// (dense unitaries or block unitaries). Negative exponents use the adjoint.
template <class M>
M evaluate_in(const word& w, const std::map<std::string, M>& asg) {
  if (asg.empty()) throw std::invalid_argument("evaluate: empty assignment");
  M acc = identity_like(asg.begin()->second);
  for (const syllable& s : w.syllables()) {
    auto it = asg.find(s.gen);
    if (it == asg.end()) throw std::invalid_argument("evaluate: unknown generator '" + s.gen + "'");
    acc = acc * it->second.pow(s.exp);
  }
  return acc;
}

unitary_matrix evaluate(const word& w, const generator_assignment& asg);

}  // namespace mfrep
