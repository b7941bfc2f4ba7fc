#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mfrep/assembly.hpp"
#include "mfrep/words.hpp"

namespace mfrep {

struct cert_row {
  std::string label;  // relator text or word label
  double norm = 0.0;
};

using param_value = std::variant<long long, double, std::string>;

// Certification outcome. pass is a pure function of the recorded rows:
// every relator norm strictly below epsilon and every separation at least
// separation_threshold, compared exactly (no hidden tolerance).
struct cert_report {
  std::string presentation;
  double epsilon = 0.0;
  double separation_threshold = 1.0;
  std::vector<cert_row> relator_defects;  // presentation order
  std::vector<cert_row> separations;      // sorted by label
  bool pass = false;
  std::vector<std::pair<std::string, param_value>> params;
};

bool recompute_pass(const cert_report& report);

struct certify_options {
  double separation_threshold = 1.0;
  unsigned threads = 1;
};

// Evaluates every relator and word-list entry, records
// ||evaluation - I|| per row, and fills the report.
cert_report certify(const presentation& pres, const generator_assignment& asg, double epsilon,
                    const certify_options& opts = {});

// Same semantics over the block instance: words are over {a, b} and evaluate
// with a -> A, b -> B block-wise.
cert_report certify(const presentation& pres, const baumslag_instance& inst, double epsilon,
                    const certify_options& opts = {});

// The window certification of a built instance: relators are the squaring
// relators conjugated into {a, b} for the central indices, and the word list
// is {a, b}, the window generators a_i (|i| <= k0), and all pairs a_i a_l^-1.
cert_report certify_baumslag(const baumslag_instance& inst, double epsilon,
                             const certify_options& opts = {});

// The presentation used by certify_baumslag.
presentation baumslag_window_presentation(int k0);

struct boosted_report {
  cert_report report;
  int applied_k = 0;
  int k_delta = 0;
  bool padded = false;
};

// Pads every generator with an identity eigenvalue, then applies gamma^k to
// the whole assignment with the smallest k (at most k_delta(delta)) that
// lifts every boostable separation to at least sqrt(2), and re-certifies.
// Relator defects inflate by at most 2^k. Diagonal assignments are handled
// by exact angle arithmetic at any k; general ones are materialized and are
// subject to the gamma and dense-dimension caps.
boosted_report boost_and_recertify(const presentation& pres, const generator_assignment& asg,
                                   double epsilon, double delta,
                                   const certify_options& opts = {});

}  // namespace mfrep
