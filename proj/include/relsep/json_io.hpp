#pragma once

#include <filesystem>

#include "json.hpp"
#include "relsep/cubecomplex.hpp"
#include "relsep/stats.hpp"

namespace relsep {

using Json = nlohmann::json;

// Words serialize as text (a..z / A..Z); parsing also accepts the integer
// array form for alphabets beyond 26 generators.
Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

Json to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

// { "n": ..., "relators": [...], "splits": [...] }
Json to_json(const HalvedPresentation& hp);
HalvedPresentation halved_from_json(const Json& j);

// [ { "kappa": word, "pair": int }, ... ]
Json to_json(const QVec& q);
QVec qvec_from_json(const Json& j);

Json to_json(const CayleyBall& ball);
Json to_json(const CoverBall& cover);  // ball + spanning tree + edge voltages

// Cutset ids, component labels, partitions, transversality edges.
Json wall_report(const WallSpace& ws, const CayleyBall& ball);

Json to_json(const DualComplex& complex);  // cubes by dimension
Json to_json(const TrialReport& report);

// Stable two-space indentation plus trailing newline, so identical data
// yields byte-identical files.
void write_json(const std::filesystem::path& path, const Json& j);
Json read_json(const std::filesystem::path& path);

}  // namespace relsep
