#include "mfrep/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "mfrep/amplify.hpp"

namespace mfrep {

bool recompute_pass(const cert_report& report) {
  for (const cert_row& r : report.relator_defects)
    if (!(r.norm < report.epsilon)) return false;
  for (const cert_row& r : report.separations)
    if (!(r.norm >= report.separation_threshold)) return false;
  return true;
}

namespace {

constexpr std::size_t boost_support_cap = 4096;

// Evaluates every relator and word-list entry through `norm_of` and fills a
// report: relator rows in presentation order, separation rows sorted by label.
cert_report certify_rows(const presentation& pres, double epsilon, const certify_options& opts,
                         const std::function<double(const word&)>& norm_of) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("certify: epsilon must be positive");
  validate(pres);
  cert_report rep;
  rep.presentation = pres.name;
  rep.epsilon = epsilon;
  rep.separation_threshold = opts.separation_threshold;

  const std::size_t nr = pres.relators.size();
  const std::size_t nw = pres.word_list.size();
  std::vector<double> norms(nr + nw, 0.0);
  parallel_for(nr + nw, opts.threads, [&](std::size_t idx) {
    const word& w = idx < nr ? pres.relators[idx] : pres.word_list[idx - nr].w;
    norms[idx] = norm_of(w);
  });
  rep.relator_defects.reserve(nr);
  for (std::size_t i = 0; i < nr; ++i) rep.relator_defects.push_back({pres.relators[i].str(), norms[i]});
  rep.separations.reserve(nw);
  for (std::size_t i = 0; i < nw; ++i)
    rep.separations.push_back({pres.word_list[i].label, norms[nr + i]});
  std::stable_sort(rep.separations.begin(), rep.separations.end(),
                   [](const cert_row& a, const cert_row& b) { return a.label < b.label; });
  rep.pass = recompute_pass(rep);
  return rep;
}

}  // namespace

cert_report certify(const presentation& pres, const generator_assignment& asg, double epsilon,
                    const certify_options& opts) {
  for (const std::string& g : pres.generators)
    if (!asg.contains(g))
      throw std::invalid_argument("certify: assignment is missing generator '" + g + "'");
  return certify_rows(pres, epsilon, opts,
                      [&](const word& w) { return evaluate(w, asg).distance_from_identity(); });
}

cert_report certify(const presentation& pres, const baumslag_instance& inst, double epsilon,
                    const certify_options& opts) {
  std::map<std::string, block_unitary> bmap;
  for (const std::string& g : pres.generators) {
    if (g == "a")
      bmap.emplace("a", inst.a_mat);
    else if (g == "b")
      bmap.emplace("b", inst.b_mat);
    else
      throw std::invalid_argument("certify: block evaluation only covers generators a and b");
  }
  return certify_rows(pres, epsilon, opts, [&](const word& w) {
    return evaluate_in(w, bmap).distance_from_identity();
  });
}

presentation baumslag_window_presentation(int k0) {
  if (k0 < 1) throw std::invalid_argument("baumslag_window_presentation: k0 must be at least 1");
  presentation pres;
  pres.name = "baumslag_window_" + std::to_string(k0);
  pres.generators = {"a", "b"};
  auto conj = [](long long i) { return word({{"b", -i}, {"a", 1}, {"b", i}}); };  // a_i = b^-i a b^i
  for (long long i = -k0; i < k0; ++i)
    pres.relators.push_back(conj(i + 1).inverse() * conj(i) * conj(i + 1) * conj(i).inverse() *
                            conj(i).inverse());
  pres.word_list.push_back({"a", word({{"a", 1}})});
  pres.word_list.push_back({"b", word({{"b", 1}})});
  auto indexed = [](long long i, long long exp) {
    return syllable{"a" + std::to_string(i), exp};
  };
  for (long long i = -k0; i <= k0; ++i)
    pres.word_list.push_back({word({indexed(i, 1)}).str(), conj(i)});
  for (long long i = -k0; i <= k0; ++i)
    for (long long l = -k0; l <= k0; ++l) {
      if (i == l) continue;
      pres.word_list.push_back(
          {word({indexed(i, 1), indexed(l, -1)}).str(), conj(i) * conj(l).inverse()});
    }
  return pres;
}

cert_report certify_baumslag(const baumslag_instance& inst, double epsilon,
                             const certify_options& opts) {
  cert_report rep = certify(baumslag_window_presentation(inst.k0), inst, epsilon, opts);
  rep.params = {
      {"p", static_cast<long long>(inst.p)},
      {"f", inst.f},
      {"k0", static_cast<long long>(inst.k0)},
      {"N", static_cast<long long>(inst.n_steps)},
      {"j", inst.j},
      {"dim", inst.total_dim},
      {"epsilon_eff", inst.epsilon_eff},
      {"delta_chain", inst.delta_chain},
      {"delta_step", inst.delta_step},
      {"delta_conj", inst.delta_conj},
      {"max_block_defect", inst.max_block_defect},
      {"wraparound_defect", inst.wraparound_defect},
  };
  return rep;
}

namespace {

// Support-set machinery for the diagonal fast path: a diagonal assignment
// evaluates words by angle sums, and gamma replaces the support S by the
// difference set {x - y : x, y in S}, exactly.
std::vector<double> word_angles(const word& w,
                                const std::map<std::string, std::vector<double>>& gen_angles) {
  const std::size_t dim = gen_angles.begin()->second.size();
  std::vector<double> theta(dim, 0.0);
  for (const syllable& s : w.syllables()) {
    auto it = gen_angles.find(s.gen);
    if (it == gen_angles.end())
      throw std::invalid_argument("boost_and_recertify: unknown generator '" + s.gen + "'");
    for (std::size_t d = 0; d < dim; ++d)
      theta[d] += static_cast<double>(s.exp) * it->second[d];
  }
  for (double& t : theta) t = angle_mod_2pi(t);
  return theta;
}

std::vector<double> support_of(const std::vector<double>& angles) {
  std::set<double> s(angles.begin(), angles.end());
  return std::vector<double>(s.begin(), s.end());
}

std::vector<double> iterate_difference_support(std::vector<double> s, int k) {
  for (int step = 0; step < k; ++step) {
    if (s.size() > boost_support_cap)
      throw std::runtime_error("boost_and_recertify: spectral support exceeds cap " +
                               std::to_string(boost_support_cap));
    std::set<double> next;
    for (double x : s)
      for (double y : s) next.insert(angle_mod_2pi(x - y));
    s.assign(next.begin(), next.end());
  }
  return s;
}

double max_dist_from_zero(const std::vector<double>& support) {
  double maxdist = 0.0;
  for (double a : support) maxdist = std::max(maxdist, angle_distance(a, 0.0));
  return maxdist;
}

// Minimal k making the support sqrt(2)-separated from the identity, or
// nullopt when no k can (single-point support). Relies on 0 being in the
// support, which padding guarantees: the angular diameter then doubles
// exactly per step until the first half-circle crossing.
std::optional<int> needed_boost_steps(const std::vector<double>& support) {
  if (max_dist_from_zero(support) >= pi / 2) return 0;
  double w0 = circle_spectrum(support).angular_diameter();
  if (!(w0 > 0.0)) return std::nullopt;
  int k = 1;
  while (w0 < pi / 2) {
    w0 *= 2.0;
    ++k;
  }
  return k;
}

}  // namespace

boosted_report boost_and_recertify(const presentation& pres, const generator_assignment& asg,
                                   double epsilon, double delta, const certify_options& opts) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("boost_and_recertify: epsilon must be positive");
  validate(pres);
  for (const std::string& g : pres.generators)
    if (!asg.contains(g))
      throw std::invalid_argument("boost_and_recertify: assignment is missing generator '" + g +
                                  "'");
  boosted_report out;
  out.k_delta = k_delta(delta);
  out.padded = true;

  bool diagonal = true;
  for (const auto& [name, u] : asg.matrices()) {
    if (!u.has_eigendata() || !u.eigen().frame.isIdentity(0.0)) {
      diagonal = false;
      break;
    }
  }

  const std::size_t nr = pres.relators.size();
  const std::size_t nw = pres.word_list.size();
  std::vector<double> norms(nr + nw, 0.0);

  if (diagonal) {
    std::map<std::string, std::vector<double>> gen_angles;
    for (const auto& [name, u] : asg.matrices()) {
      std::vector<double> a = u.eigen().angles;
      a.push_back(0.0);  // identity pad
      gen_angles.emplace(name, std::move(a));
    }
    std::vector<std::vector<double>> supports(nr + nw);
    for (std::size_t i = 0; i < nr; ++i)
      supports[i] = support_of(word_angles(pres.relators[i], gen_angles));
    for (std::size_t i = 0; i < nw; ++i)
      supports[nr + i] = support_of(word_angles(pres.word_list[i].w, gen_angles));

    int applied = 0;
    for (std::size_t i = 0; i < nw; ++i)
      if (auto k = needed_boost_steps(supports[nr + i]))
        applied = std::max(applied, std::min(*k, out.k_delta));
    out.applied_k = applied;
    for (std::size_t idx = 0; idx < nr + nw; ++idx)
      norms[idx] = chord(max_dist_from_zero(iterate_difference_support(supports[idx], applied)));
  } else {
    std::map<std::string, unitary_matrix> cur;
    for (const auto& [name, u] : asg.matrices()) cur.emplace(name, pad_identity(u));
    auto all_separated = [&]() {
      for (const labeled_word& lw : pres.word_list)
        if (evaluate_in(lw.w, cur).distance_from_identity() < std::sqrt(2.0) - 1e-12) return false;
      return true;
    };
    int applied = 0;
    while (applied < out.k_delta && !all_separated()) {
      for (auto& [name, u] : cur) {
        if (u.dim() > gamma_input_cap ||
            static_cast<long long>(u.dim()) * u.dim() > dense_dim_cap)
          throw std::invalid_argument(
              "boost_and_recertify: amplified dimension exceeds the dense caps");
        u = gamma(u);
      }
      ++applied;
    }
    out.applied_k = applied;
    parallel_for(nr + nw, opts.threads, [&](std::size_t idx) {
      const word& w = idx < nr ? pres.relators[idx] : pres.word_list[idx - nr].w;
      norms[idx] = evaluate_in(w, cur).distance_from_identity();
    });
  }

  cert_report rep;
  rep.presentation = pres.name;
  rep.epsilon = epsilon;
  rep.separation_threshold = opts.separation_threshold;
  for (std::size_t i = 0; i < nr; ++i) rep.relator_defects.push_back({pres.relators[i].str(), norms[i]});
  for (std::size_t i = 0; i < nw; ++i)
    rep.separations.push_back({pres.word_list[i].label, norms[nr + i]});
  std::stable_sort(rep.separations.begin(), rep.separations.end(),
                   [](const cert_row& a, const cert_row& b) { return a.label < b.label; });
  rep.pass = recompute_pass(rep);
  rep.params = {
      {"boost_delta", delta},
      {"applied_k", static_cast<long long>(out.applied_k)},
      {"k_delta", static_cast<long long>(out.k_delta)},
      {"padded", static_cast<long long>(1)},
  };
  out.report = std::move(rep);
  return out;
}

}  // namespace mfrep
