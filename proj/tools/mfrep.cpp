#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "mfrep/amplify.hpp"
#include "mfrep/assembly.hpp"
#include "mfrep/certify.hpp"
#include "mfrep/chain.hpp"
#include "mfrep/doubling.hpp"
#include "mfrep/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string double_str(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void warn_smallest_prime(int p) {
  if (p == 2)
    std::cerr << "warning: p = 2 is the smallest admissible prime (f = 3); "
                 "useful only as a smoke test\n";
}

int cmd_doubling(long long n, int bins, const fs::path& out) {
  const auto census = mfrep::cycle_structure(n);
  const auto hist = mfrep::spectrum_histogram(n, bins);
  fs::create_directories(out);
  mfrep::write_text(out / "histogram.csv", mfrep::histogram_csv(n, hist));
  mfrep::write_text(out / "census.txt", mfrep::census_str(census) + "\n");
  double max_fraction = 0.0;
  for (const mfrep::histogram_bin& b : hist) max_fraction = std::max(max_fraction, b.fraction);
  std::cout << "n=" << n << " cycles=" << mfrep::census_str(census)
            << " max_bin_fraction=" << double_str(max_fraction) << "\n";
  return 0;
}

int cmd_chain(int p, long long j, const fs::path& out) {
  warn_smallest_prime(p);
  const mfrep::chain_rep rep = mfrep::build_chain(p, j);
  mfrep::write_chain(out, rep);
  for (const auto& [i, d] : rep.defects())
    std::cout << "defect[" << i << "]=" << double_str(d) << "\n";
  std::cout << "max_defect=" << double_str(rep.max_defect()) << "\n";
  return 0;
}

int cmd_baumslag(int p, int k0, int n_steps, bool have_epsilon, double epsilon, bool dump_instance,
                 long long seed, unsigned threads, const fs::path& out) {
  warn_smallest_prime(p);
  const mfrep::baumslag_instance inst = mfrep::build_baumslag(p, k0, n_steps, threads);
  const double eps = have_epsilon ? epsilon : 17.0 * inst.epsilon_eff;
  mfrep::certify_options opts;
  opts.threads = threads;
  mfrep::cert_report report = mfrep::certify_baumslag(inst, eps, opts);
  report.params.emplace_back("seed", seed);
  fs::create_directories(out);
  mfrep::write_report(out / "report.json", report);
  if (dump_instance) mfrep::write_instance(out / "instance", inst);
  std::cout << "dim=" << inst.total_dim << " epsilon=" << double_str(eps)
            << " epsilon_eff=" << double_str(inst.epsilon_eff)
            << " pass=" << (report.pass ? "true" : "false") << "\n";
  return report.pass ? 0 : 1;
}

int cmd_certify(const fs::path& pres_file, const fs::path& matrices_dir, double epsilon,
                unsigned threads, const fs::path& out) {
  const mfrep::presentation pres = mfrep::read_presentation(pres_file);
  std::map<std::string, mfrep::unitary_matrix> mats;
  for (const std::string& g : pres.generators)
    mats.emplace(g, mfrep::read_matrix(matrices_dir / (g + ".json")));
  const mfrep::generator_assignment asg(std::move(mats));
  mfrep::certify_options opts;
  opts.threads = threads;
  const mfrep::cert_report report = mfrep::certify(pres, asg, epsilon, opts);
  fs::create_directories(out);
  mfrep::write_report(out / "report.json", report);
  std::cout << "presentation=" << report.presentation
            << " pass=" << (report.pass ? "true" : "false") << "\n";
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mfrep: builds finite-dimensional almost-representations of the group\n"
      "<a, b | a^{a^b} = a^2> and certifies them numerically (relator defects\n"
      "below epsilon, nontrivial words separated from the identity)."};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 1;
  app.add_option("--threads", threads,
                 "worker threads for independent row evaluations (results are byte-identical "
                 "for any value)")
      ->envname("MFREP_THREADS");
  long long seed = 0;
  app.add_option("--seed", seed, "seed recorded in reports; reserved for randomized helpers");

  auto* doubling = app.add_subcommand(
      "doubling",
      "Cycle census and eigenvalue histogram of the doubling permutation P e_y = e_{2y mod n}; "
      "P conjugates the diagonal of n-th roots to its square exactly, and each length-L cycle "
      "contributes all L-th roots of unity to the spectrum.");
  long long n = 0;
  int bins = 8;
  std::string out;
  doubling->add_option("--n", n, "odd modulus")->required();
  doubling->add_option("--bins", bins, "histogram bin count (default 8)");
  doubling->add_option("--out", out, "output directory (histogram.csv, census.txt)")->required();

  auto* chain = app.add_subcommand(
      "chain",
      "Builds the chain of almost-squaring unitaries a_{-j-1}..a_{j+1} on dimension 2^p - 1: "
      "each step conjugates by the doubling permutation exactly and snaps the spectrum back "
      "onto the simple roots of unity; all conjugation defects equal one exactly computed "
      "number. Writes manifest.json and one matrix file per generator.");
  int p = 3;
  long long j = 0;
  chain->add_option("--p", p, "prime block-dimension exponent (dimension 2^p - 1)")->required();
  chain->add_option("--j", j, "chain half-width (generators a_{-j-1}..a_{j+1})");
  chain->add_option("--out", out, "output directory")->required();

  auto* baumslag = app.add_subcommand(
      "baumslag",
      "Assembles the block-shift almost-representation of <a, b | a^{a^b} = a^2>: A is block "
      "diagonal over 2j+1 = (2k0+1)(2N+1) slots holding path-conjugated chain generators, B is "
      "the exact block shift. Certifies the relator window |i| <= k0 and the separations of "
      "window words; default epsilon is 17 * epsilon_eff (the proven defect budget), override "
      "with --epsilon. Writes report.json.");
  int k0 = 1, n_steps = 1;
  double epsilon = 0.0;
  bool dump_instance = false;
  baumslag->add_option("--p", p, "prime block-dimension exponent")->required();
  baumslag->add_option("--k0", k0, "certified central window half-width")->required();
  baumslag->add_option("--N", n_steps, "geodesic path half-length")->required();
  auto* eps_opt = baumslag->add_option("--epsilon", epsilon, "relator defect threshold");
  baumslag->add_flag("--dump-instance", dump_instance,
                     "also write the instance matrices under <out>/instance");
  baumslag->add_option("--out", out, "output directory")->required();

  auto* certify = app.add_subcommand(
      "certify",
      "Certifies a generator assignment against a presentation: evaluates every relator and "
      "word-list entry, records operator-norm distances, and passes iff all relator defects "
      "are below epsilon and all separations reach the threshold. Reads <generator>.json "
      "matrix files from the matrices directory.");
  std::string pres_file, matrices_dir;
  double cert_epsilon = 1e-6;
  certify->add_option("presentation", pres_file, "presentation JSON file")->required();
  certify->add_option("matrices", matrices_dir, "directory with <generator>.json files")
      ->required();
  certify->add_option("--epsilon", cert_epsilon, "relator defect threshold (default 1e-6)");
  certify->add_option("--out", out, "output directory (report.json)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*doubling) return cmd_doubling(n, bins, out);
    if (*chain) return cmd_chain(p, j, out);
    if (*baumslag)
      return cmd_baumslag(p, k0, n_steps, eps_opt->count() > 0, epsilon, dump_instance, seed,
                          threads, out);
    if (*certify) return cmd_certify(pres_file, matrices_dir, cert_epsilon, threads, out);
  } catch (const mfrep::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
