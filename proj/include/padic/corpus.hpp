#pragma once

// The bundled map corpus: squaring-type maps over p in {2, 3, 5, 97} spanning
// unit and non-unit resultants, plus one map on P^2. Mirrors the JSON files
// shipped under maps/.

#include <string>
#include <vector>

#include "padic/morphism.hpp"

namespace padic {

struct CorpusEntry {
    std::string name; // matches the maps/<name>.json file stem
    HomogeneousMap map;
};

std::vector<CorpusEntry> bundled_corpus();

} // namespace padic
