#ifndef NOVIKOV_JSON_IO_HPP
#define NOVIKOV_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include <novikov/betti.hpp>
#include <novikov/chain_complex.hpp>
#include <novikov/cz_index.hpp>
#include <novikov/series.hpp>
#include <novikov/torus.hpp>

namespace novikov
{

using Json = nlohmann::ordered_json;

// Parses text; ParseError carries the byte offset of the first error.
Json parse_json_text(const std::string& text, const std::string& source = "input");
Json read_json_file(const std::string& path);

// Readers throw ParseError with a JSON-pointer-like location ("/channels/0/row").
WeightedLattice lattice_from_json(const Json& j, const std::string& where = "");
Json lattice_to_json(const WeightedLattice& lattice);

TruncatedSeries<Rational> series_from_json(const Json& j, const std::string& where = "");
Json series_to_json(const TruncatedSeries<Rational>& s);
Json grouped_to_json(const GroupedSeries<Rational>& g);
GroupedSeries<Rational> grouped_from_json(const Json& j, const std::string& where = "");

LaurentPoly poly_from_json(const Json& j, std::size_t nvars, const std::string& where = "");
Json poly_to_json(const LaurentPoly& p);

// {"lattice", "grading": "Z" | N, "ranks": {"k": r}, "boundaries": {"k": [[poly]]},
//  "labels": {"k": [names]}}; polynomials are lists of {"coeff", "monomial"}.
GroupRingComplex complex_from_json(const Json& j, const std::string& where = "");
Json complex_to_json(const GroupRingComplex& c);

TorusSystem system_from_json(const Json& j, const std::string& where = "");
Json system_to_json(const TorusSystem& s);

// {"n": n, "samples": [[row-major 2n x 2n entries], ...]}
SymplecticPath path_from_json(const Json& j, const std::string& where = "");

Json betti_report_to_json(const BettiReport& r);
Json orbit_to_json(const PeriodicOrbit& o);
Json orbit_search_to_json(const OrbitSearchResult& r, const OrbitSearchOptions& opt);
Json verification_to_json(const VerificationReport& r);

} // namespace novikov

#endif
