#include "mfrep/assembly.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace mfrep {

namespace {

bool is_assembly_prime(int p) { return p == 2 || p == 3 || p == 5 || p == 7 || p == 11; }

std::string gen_name(long long i) { return "a" + std::to_string(i); }

// B^-i A B^i: slot s carries A's block from slot (s + i) mod (2j+1).
block_unitary rotated_a(const baumslag_instance& inst, long long i) {
  const int slots = static_cast<int>(2 * inst.j + 1);
  std::vector<cmatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(slots));
  for (int s = 0; s < slots; ++s) {
    const long long src = (((s + i) % slots) + slots) % slots;
    blocks.push_back(inst.a_mat.block(static_cast<int>(src)));
  }
  return block_unitary::block_diagonal(std::move(blocks));
}

}  // namespace

long long baumslag_instance::path_index(long long i) const {
  return (i + j) / (2 * k0 + 1) - n_steps;  // i + j >= 0, so this is a floor
}

baumslag_instance build_baumslag(int p, int k0, int n_steps, unsigned threads) {
  if (!is_assembly_prime(p))
    throw std::invalid_argument("build_baumslag: p must be a prime at most " +
                                std::to_string(assembly_p_cap));
  if (k0 < 1) throw std::invalid_argument("build_baumslag: k0 must be at least 1");
  if (n_steps < 1) throw std::invalid_argument("build_baumslag: N must be at least 1");
  const long long slots = (2LL * k0 + 1) * (2LL * n_steps + 1);
  const long long j = (slots - 1) / 2;
  const long long f = (1LL << p) - 1;
  if (slots * f > assembly_dim_cap)
    throw std::invalid_argument("build_baumslag: total dimension " + std::to_string(slots * f) +
                                " exceeds cap " + std::to_string(assembly_dim_cap));

  baumslag_instance inst{p,  f,  k0, n_steps, j,  slots * f, build_chain(p, j),
                         {}, {}, {}, {},      {}, {},        {},
                         {}, {}, {}, {},      {}, {}};

  for (long long i = -j - 1; i <= j + 1; ++i) inst.chain.generator(i);  // fill the cache up front

  const unitary_matrix& x = inst.chain.generator(-j);
  const unitary_matrix& y = inst.chain.generator(j + 1);
  const column_matching cm = optimal_column_matching(x.eigen(), y.eigen());
  const unitary_matrix c = conjugator_from_eigendata(x, y, cm);
  inst.w = c.adjoint();
  inst.delta_conj =
      op_norm(c.entries() * x.entries() * c.entries().adjoint() - y.entries());

  // The conjugator has no tracked eigendata; one dense eigendecomposition
  // (Schur of a unitary, so the triangular factor is diagonal) supplies it.
  Eigen::ComplexSchur<cmatrix> schur(inst.w.entries());
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("build_baumslag: eigendecomposition of the conjugator failed");
  eigendata wd;
  wd.frame = schur.matrixU();
  wd.angles.reserve(static_cast<std::size_t>(f));
  for (long long k = 0; k < f; ++k)
    wd.angles.push_back(angle_mod_2pi(std::arg(schur.matrixT()(k, k))));
  inst.w.set_eigendata(std::move(wd));
  if (inst.w.eigendata_residual() > 1e-9)
    throw std::runtime_error("build_baumslag: conjugator eigendecomposition residual above 1e-9");

  inst.path = geodesic_path_steps(inst.w, n_steps);

  double theta_max = 0.0;
  for (double a : inst.w.eigen().angles) theta_max = std::max(theta_max, angle_distance(a, 0.0));
  inst.delta_step = chord(theta_max / n_steps);
  inst.delta_chain = inst.chain.max_defect();
  inst.epsilon_eff = std::max({inst.delta_chain, inst.delta_step, inst.delta_conj});

  std::vector<cmatrix> blocks(static_cast<std::size_t>(slots));
  parallel_for(static_cast<std::size_t>(slots), threads, [&](std::size_t s) {
    const long long i = static_cast<long long>(s) - j;
    const long long t = inst.path_index(i);
    const unitary_matrix& g = inst.chain.generator(i);
    if (t <= 0) {
      blocks[s] = g.entries();  // identity path point, no products
    } else {
      const cmatrix& v = inst.path.at(t).entries();
      blocks[s] = v.adjoint() * g.entries() * v;
    }
  });
  inst.a_mat = block_unitary::block_diagonal(blocks);
  inst.b_mat = block_unitary::shift(static_cast<int>(f), static_cast<int>(slots), 1);

  inst.block_defects.assign(static_cast<std::size_t>(slots), 0.0);
  parallel_for(static_cast<std::size_t>(slots), threads, [&](std::size_t s) {
    const cmatrix& m = blocks[s];
    const cmatrix& next = blocks[(s + 1) % static_cast<std::size_t>(slots)];
    inst.block_defects[s] = op_norm(next.adjoint() * m * next - m * m);
  });
  inst.interior_within_17 = true;
  for (std::size_t s = 0; s < inst.block_defects.size(); ++s) {
    inst.max_block_defect = std::max(inst.max_block_defect, inst.block_defects[s]);
    const bool wrap = (s + 1 == inst.block_defects.size());
    if (wrap) {
      inst.wraparound_defect = inst.block_defects[s];
      inst.wraparound_within_3 = inst.block_defects[s] <= 3.0 * inst.epsilon_eff;
    } else if (inst.block_defects[s] > 17.0 * inst.epsilon_eff) {
      inst.interior_within_17 = false;
    }
  }
  return inst;
}

block_unitary word_in_ab(const word& w, const baumslag_instance& inst) {
  if (max_k(w) > inst.j)
    throw std::invalid_argument("word_in_ab: word reaches index " + std::to_string(max_k(w)) +
                                " outside the window [-j, j], j = " + std::to_string(inst.j));
  const int slots = static_cast<int>(2 * inst.j + 1);
  block_unitary acc = block_unitary::identity(static_cast<int>(inst.f), slots);
  for (const syllable& s : w.syllables())
    acc = acc * rotated_a(inst, generator_index(s.gen)).pow(s.exp);
  return acc;
}

double central_compression_error(const word& w, const baumslag_instance& inst) {
  const block_unitary full = word_in_ab(w, inst);
  const cmatrix central = full.block(static_cast<int>(inst.j));
  std::map<std::string, unitary_matrix> window;
  const long long bound = max_k(w);
  for (long long i = -bound; i <= bound; ++i) window.emplace(gen_name(i), inst.chain.generator(i));
  const unitary_matrix ref = evaluate_in(w, window);
  return op_norm(central - ref.entries());
}

double instance_word_separation(const word& w, const baumslag_instance& inst) {
  const std::map<std::string, block_unitary> asg{{"a", inst.a_mat}, {"b", inst.b_mat}};
  return evaluate_in(w, asg).distance_from_identity();
}

generator_assignment direct_sum(const std::vector<generator_assignment>& assignments) {
  if (assignments.empty()) throw std::invalid_argument("direct_sum: no assignments");
  std::set<std::string> names;
  for (const auto& [name, u] : assignments.front().matrices()) names.insert(name);
  for (const generator_assignment& asg : assignments) {
    if (asg.matrices().size() != names.size())
      throw std::invalid_argument("direct_sum: generator sets differ");
    for (const std::string& name : names)
      if (!asg.contains(name))
        throw std::invalid_argument("direct_sum: generator sets differ on '" + name + "'");
  }
  std::map<std::string, unitary_matrix> out;
  for (const std::string& name : names) {
    unitary_matrix acc = assignments.front().at(name);
    for (std::size_t idx = 1; idx < assignments.size(); ++idx)
      acc = direct_sum(acc, assignments[idx].at(name));
    out.emplace(name, std::move(acc));
  }
  return generator_assignment(std::move(out));
}

void finite_group_table::validate() const {
  const int n = size();
  if (n < 1) throw std::invalid_argument("finite_group_table: empty");
  for (const std::vector<int>& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("finite_group_table: ragged table");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("finite_group_table: entry out of range");
  }
  for (int h = 0; h < n; ++h)
    if (table[0][h] != h || table[h][0] != h)
      throw std::invalid_argument("finite_group_table: index 0 is not an identity");
  for (int g = 0; g < n; ++g) {
    std::set<int> row(table[g].begin(), table[g].end());
    std::set<int> col;
    bool has_inverse = false;
    for (int h = 0; h < n; ++h) {
      col.insert(table[h][g]);
      if (table[g][h] == 0) has_inverse = true;
    }
    if (static_cast<int>(row.size()) != n || static_cast<int>(col.size()) != n)
      throw std::invalid_argument("finite_group_table: row or column is not a permutation");
    if (!has_inverse) throw std::invalid_argument("finite_group_table: missing inverse");
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k)
        if (table[table[g][h]][k] != table[g][table[h][k]])
          throw std::invalid_argument("finite_group_table: not associative");
}

generator_assignment semidirect_finite(const generator_assignment& alpha,
                                       const finite_group_table& f,
                                       const std::vector<std::map<std::string, word>>& action,
                                       const std::map<std::string, int>& f_generator_names) {
  f.validate();
  const int m = f.size();
  if (static_cast<int>(action.size()) != m)
    throw std::invalid_argument("semidirect_finite: need one action map per group element");
  const long long n = alpha.dim();
  const long long total = n * m;

  std::map<std::string, unitary_matrix> out;
  for (const auto& [name, u] : alpha.matrices()) {
    cmatrix beta = cmatrix::Zero(total, total);
    for (int h = 0; h < m; ++h) {
      auto it = action[static_cast<std::size_t>(h)].find(name);
      if (it == action[static_cast<std::size_t>(h)].end())
        throw std::invalid_argument("semidirect_finite: action of element " + std::to_string(h) +
                                    " is missing generator '" + name + "'");
      beta.block(h * n, h * n, n, n) = evaluate(it->second, alpha).entries();
    }
    out.emplace(name, unitary_matrix::trusted(std::move(beta)));
  }
  for (const auto& [name, k] : f_generator_names) {
    if (k < 0 || k >= m)
      throw std::invalid_argument("semidirect_finite: element index for '" + name +
                                  "' out of range");
    if (out.count(name))
      throw std::invalid_argument("semidirect_finite: name '" + name +
                                  "' collides with a generator of the base assignment");
    cmatrix beta = cmatrix::Zero(total, total);
    for (int h = 0; h < m; ++h)
      beta.block(static_cast<long long>(f.table[static_cast<std::size_t>(k)]
                                               [static_cast<std::size_t>(h)]) *
                     n,
                 h * n, n, n) = cmatrix::Identity(n, n);
    out.emplace(name, unitary_matrix::trusted(std::move(beta)));
  }
  return generator_assignment(std::move(out));
}

}  // namespace mfrep
