#include "packpair/models.hpp"

#include "packpair/errors.hpp"

namespace packpair {

std::string to_string(Softness s) {
    switch (s) {
        case Softness::Rigid: return "rigid";
        case Softness::Soft: return "soft";
        case Softness::Elastic: return "elastic";
    }
    return "rigid";
}

Softness softness_from_string(const std::string& name) {
    if (name == "rigid") return Softness::Rigid;
    if (name == "soft") return Softness::Soft;
    if (name == "elastic") return Softness::Elastic;
    throw ParseError("unknown softness: " + name);
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {{"sports", 281.0, 100.0, 110.0, 245.0, Softness::Soft, true, false},
         {"sports", 300.0, 220.0, 110.0}},
        {{"high_heel", 255.0, 85.0, 95.0, 255.0, Softness::Rigid, false, true},
         {"high_heel", 300.0, 180.0, 90.0}},
        {{"leather", 290.0, 105.0, 115.0, 398.0, Softness::Rigid, false, false},
         {"leather", 330.0, 205.0, 115.0}},
        {{"sandal", 266.5, 95.0, 90.0, 235.0, Softness::Elastic, true, false},
         {"sandal", 315.0, 190.0, 110.0}},
    };
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.shoe.name == name) return e;
    throw ParseError("unknown catalog shoe: " + name);
}

const CatalogEntry& catalog_entry(std::size_t index) {
    if (index >= catalog().size()) throw ParseError("catalog index out of range");
    return catalog()[index];
}

}  // namespace packpair
