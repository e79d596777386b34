// JSON serialization of graded algebras.
//
// Format (all rationals as "num/den" or "num" strings):
//   {
//     "dims":         { "<degree>": <dimension>, ... },
//     "labels":       { "<degree>": ["x0", ...], ... },        optional
//     "differential": { "<degree>": [[row], ...], ... },       omitted rows zero
//     "product":      [ { "da": k, "i": i, "db": l, "j": j,
//                         "value": ["c0", "c1", ...] }, ... ],
//     "unit":         <degree-0 basis index>
//   }
#pragma once

#include <iosfwd>
#include <string>

#include "ispace/cdga.hpp"

namespace ispace {

std::string cdga_to_json(const FiniteCDGA& a);
FiniteCDGA cdga_from_json(const std::string& text);
FiniteCDGA cdga_from_stream(std::istream& in);
FiniteCDGA cdga_from_file(const std::string& path);

}  // namespace ispace
