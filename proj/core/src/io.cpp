#include "mfrep/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mfrep {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
}

const ordered_json& field(const ordered_json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

std::string matrix_to_json(const unitary_matrix& u) {
  const cmatrix& m = u.entries();
  ordered_json j;
  j["dim"] = u.dim();
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < u.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < u.dim(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j.dump() + "\n";
}

unitary_matrix matrix_from_json(const std::string& text) {
  const ordered_json j = parse_json(text);
  if (!j.is_object() || !field(j, "dim").is_number_integer())
    throw std::invalid_argument("matrix file: expected an object with integer 'dim'");
  const long long n = field(j, "dim").get<long long>();
  if (n < 1 || n > dense_dim_cap)
    throw std::invalid_argument("matrix file: dim " + std::to_string(n) + " out of range");
  const ordered_json& rows = field(j, "entries");
  if (!rows.is_array() || static_cast<long long>(rows.size()) != n)
    throw std::invalid_argument("matrix file: 'entries' must hold dim rows");
  cmatrix m(n, n);
  for (long long r = 0; r < n; ++r) {
    const ordered_json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<long long>(row.size()) != n)
      throw std::invalid_argument("matrix file: row " + std::to_string(r) + " must hold dim cells");
    for (long long c = 0; c < n; ++c) {
      const ordered_json& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
        throw std::invalid_argument("matrix file: cell (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") must be [re, im]");
      m(r, c) = cplx(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return unitary_matrix::from_entries(std::move(m));
}

std::string presentation_to_json(const presentation& pres) {
  ordered_json j;
  j["name"] = pres.name;
  j["generators"] = pres.generators;
  ordered_json relators = ordered_json::array();
  for (const word& r : pres.relators) relators.push_back(r.str());
  j["relators"] = std::move(relators);
  ordered_json words = ordered_json::array();
  for (const labeled_word& lw : pres.word_list)
    words.push_back({{"label", lw.label}, {"word", lw.w.str()}});
  j["words"] = std::move(words);
  return j.dump(2) + "\n";
}

presentation presentation_from_json(const std::string& text) {
  const ordered_json j = parse_json(text);
  presentation pres;
  pres.name = field(j, "name").get<std::string>();
  for (const ordered_json& g : field(j, "generators")) pres.generators.push_back(g.get<std::string>());
  std::size_t idx = 0;
  for (const ordered_json& r : field(j, "relators")) {
    try {
      pres.relators.push_back(word::parse(r.get<std::string>()));
    } catch (const parse_error& e) {
      throw parse_error("relator " + std::to_string(idx) + ": " + e.what(), e.position());
    }
    ++idx;
  }
  if (j.contains("words")) {
    for (const ordered_json& entry : j["words"]) {
      labeled_word lw;
      lw.label = field(entry, "label").get<std::string>();
      try {
        lw.w = word::parse(field(entry, "word").get<std::string>());
      } catch (const parse_error& e) {
        throw parse_error("word '" + lw.label + "': " + e.what(), e.position());
      }
      pres.word_list.push_back(std::move(lw));
    }
  }
  validate(pres);
  return pres;
}

std::string report_to_json(const cert_report& report) {
  ordered_json j;
  j["presentation"] = report.presentation;
  j["epsilon"] = report.epsilon;
  j["separation_threshold"] = report.separation_threshold;
  ordered_json defects = ordered_json::array();
  for (const cert_row& r : report.relator_defects)
    defects.push_back({{"relator", r.label}, {"norm", r.norm}});
  j["relator_defects"] = std::move(defects);
  ordered_json seps = ordered_json::array();
  for (const cert_row& r : report.separations)
    seps.push_back({{"label", r.label}, {"norm", r.norm}});
  j["separations"] = std::move(seps);
  j["pass"] = report.pass;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : report.params)
    std::visit([&](const auto& v) { params[key] = v; }, value);
  j["params"] = std::move(params);
  return j.dump(2) + "\n";
}

cert_report report_from_json(const std::string& text) {
  const ordered_json j = parse_json(text);
  cert_report rep;
  rep.presentation = field(j, "presentation").get<std::string>();
  rep.epsilon = field(j, "epsilon").get<double>();
  rep.separation_threshold = field(j, "separation_threshold").get<double>();
  for (const ordered_json& r : field(j, "relator_defects"))
    rep.relator_defects.push_back({field(r, "relator").get<std::string>(), field(r, "norm").get<double>()});
  for (const ordered_json& r : field(j, "separations"))
    rep.separations.push_back({field(r, "label").get<std::string>(), field(r, "norm").get<double>()});
  rep.pass = field(j, "pass").get<bool>();
  if (j.contains("params")) {
    for (const auto& [key, value] : j["params"].items()) {
      if (value.is_number_integer())
        rep.params.emplace_back(key, value.get<long long>());
      else if (value.is_number_float())
        rep.params.emplace_back(key, value.get<double>());
      else if (value.is_string())
        rep.params.emplace_back(key, value.get<std::string>());
      else
        throw std::invalid_argument("report file: unsupported param type for '" + key + "'");
    }
  }
  return rep;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read failed: " + path.string());
  return buf.str();
}

void write_matrix(const std::filesystem::path& path, const unitary_matrix& u) {
  write_text(path, matrix_to_json(u));
}

unitary_matrix read_matrix(const std::filesystem::path& path) {
  return matrix_from_json(read_text(path));
}

void write_presentation(const std::filesystem::path& path, const presentation& pres) {
  write_text(path, presentation_to_json(pres));
}

presentation read_presentation(const std::filesystem::path& path) {
  return presentation_from_json(read_text(path));
}

void write_report(const std::filesystem::path& path, const cert_report& report) {
  write_text(path, report_to_json(report));
}

cert_report read_report(const std::filesystem::path& path) {
  return report_from_json(read_text(path));
}

void write_chain(const std::filesystem::path& dir, const chain_rep& rep) {
  std::filesystem::create_directories(dir);
  ordered_json m;
  m["p"] = rep.p();
  m["f"] = rep.f();
  m["j"] = rep.j();
  ordered_json defects = ordered_json::object();
  for (const auto& [i, d] : rep.defects()) defects[std::to_string(i)] = d;
  m["defects"] = std::move(defects);
  write_text(dir / "manifest.json", m.dump(2) + "\n");
  for (long long i = -rep.j() - 1; i <= rep.j() + 1; ++i)
    write_matrix(dir / ("gen_" + std::to_string(i) + ".json"), rep.generator(i));
}

void write_instance(const std::filesystem::path& dir, const baumslag_instance& inst) {
  std::filesystem::create_directories(dir);
  ordered_json m;
  m["p"] = inst.p;
  m["f"] = inst.f;
  m["k0"] = inst.k0;
  m["N"] = inst.n_steps;
  m["j"] = inst.j;
  m["dim"] = inst.total_dim;
  m["epsilon_eff"] = inst.epsilon_eff;
  m["delta_chain"] = inst.delta_chain;
  m["delta_step"] = inst.delta_step;
  m["delta_conj"] = inst.delta_conj;
  m["block_defects"] = inst.block_defects;
  m["max_block_defect"] = inst.max_block_defect;
  m["wraparound_defect"] = inst.wraparound_defect;
  m["interior_within_17"] = inst.interior_within_17;
  m["wraparound_within_3"] = inst.wraparound_within_3;
  write_text(dir / "manifest.json", m.dump(2) + "\n");
  for (long long i = -inst.j - 1; i <= inst.j + 1; ++i)
    write_matrix(dir / ("gen_" + std::to_string(i) + ".json"), inst.chain.generator(i));
  write_matrix(dir / "conjugator.json", inst.w);
  for (long long t = -inst.n_steps; t <= inst.n_steps; ++t)
    write_matrix(dir / ("path_" + std::to_string(t) + ".json"), inst.path.at(t));
}

}  // namespace mfrep
