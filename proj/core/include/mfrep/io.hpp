#pragma once

#include <filesystem>
#include <string>

#include "mfrep/assembly.hpp"
#include "mfrep/certify.hpp"
#include "mfrep/chain.hpp"
#include "mfrep/words.hpp"

namespace mfrep {

// All JSON is UTF-8 with stable key order; doubles use the shortest
// round-trip representation. Parse failures throw mfrep::parse_error with a
// byte offset.

// Matrix file: {"dim": n, "entries": [[[re, im], ...], ...]} row-major.
std::string matrix_to_json(const unitary_matrix& u);
unitary_matrix matrix_from_json(const std::string& text);  // validates unitarity
void write_matrix(const std::filesystem::path& path, const unitary_matrix& u);
unitary_matrix read_matrix(const std::filesystem::path& path);

// Presentation file: {"name": ..., "generators": [...], "relators": [...],
// "words": [{"label": ..., "word": ...}]} with words in the word grammar.
std::string presentation_to_json(const presentation& pres);
presentation presentation_from_json(const std::string& text);
void write_presentation(const std::filesystem::path& path, const presentation& pres);
presentation read_presentation(const std::filesystem::path& path);

// Report: {"presentation", "epsilon", "separation_threshold",
// "relator_defects", "separations", "pass", "params"} in that key order.
std::string report_to_json(const cert_report& report);
cert_report report_from_json(const std::string& text);
void write_report(const std::filesystem::path& path, const cert_report& report);
cert_report read_report(const std::filesystem::path& path);

// Chain directory: manifest.json {"p", "f", "j", "defects"} plus one
// gen_<i>.json matrix file per generator index.
void write_chain(const std::filesystem::path& dir, const chain_rep& rep);

// Instance directory: manifest.json {"p", "k0", "N", "j", "epsilon_eff",
// "block_defects"} plus matrix files for the chain generators and the
// conjugator path. A and B stay structural and are not written densely.
void write_instance(const std::filesystem::path& dir, const baumslag_instance& inst);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace mfrep
