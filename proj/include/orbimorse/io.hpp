// Text formats: datum files, surface files, homology reports.
//
// Datum file (JSON, schema "orbimorse-datum/1"):
//   {
//     "schema_version": "orbimorse-datum/1",
//     "ambient_dimension": 2,                       (optional)
//     "points": [ {"id": "p", "index": 2, "stab": 3, "stable": true}, ... ],
//     "flows":  [ {"from": "p", "to": "q", "count": -1},
//                 {"from": "p", "to": "r", "count": "unknown"}, ... ]
//   }
// "stab" defaults to 1 and "stable" to true. Counts are JSON integers or
// decimal strings (for values beyond 64 bits). Unknown keys are rejected.
//
// Surface file (JSON, schema "orbimorse-surface/1"):
//   {
//     "schema_version": "orbimorse-surface/1",
//     "surface": {"kind": "torus", "params": {"R": 2, "r": 1}},
//     "group": ["rotation_pi_z"],
//     "tolerances": {"newton_tol": 1e-12, ...}    (optional)
//   }
//
// Machine homology format: one line per degree, "degree betti t1,t2,...",
// the torsion field omitted when there is none. A report for both
// complexes prefixes each block with a "[co]" or "[in]" header line.

#ifndef ORBIMORSE_IO_HPP
#define ORBIMORSE_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "orbimorse/exact_linalg.hpp"
#include "orbimorse/morse_datum.hpp"
#include "orbimorse/surface.hpp"

namespace orbimorse {

inline constexpr std::string_view datum_schema = "orbimorse-datum/1";
inline constexpr std::string_view surface_schema = "orbimorse-surface/1";

// All parsers throw ParseError on malformed or schema-violating input.
MorseDatum parse_datum(std::string_view text);
MorseDatum read_datum_file(const std::string& path);
std::string dump_datum(const MorseDatum& d);
void write_datum_file(const MorseDatum& d, const std::string& path);

// Surface construction errors from make_surface propagate as InvalidSurface.
ImplicitQuotientSurface parse_surface(std::string_view text);
ImplicitQuotientSurface read_surface_file(const std::string& path);

std::string format_homology_table(const std::vector<HomologyGroup>& H);
std::string format_homology_machine(const std::vector<HomologyGroup>& H);
// section selects a "[name]" block; it must be given exactly when the text has headers.
std::vector<HomologyGroup> parse_homology_machine(std::string_view text, const std::string& section = "");
std::vector<HomologyGroup> read_homology_file(const std::string& path, const std::string& section = "");

std::string read_text_file(const std::string& path);

}   // namespace orbimorse

#endif
