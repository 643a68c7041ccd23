#pragma once

#include <string>
#include <vector>

namespace packpair {

enum class Softness { Rigid, Soft, Elastic };

std::string to_string(Softness s);
Softness softness_from_string(const std::string& name);

struct ShoeModel {
    std::string name;
    double length = 0.0;  // mm
    double width = 0.0;   // mm
    double height = 0.0;  // mm
    double mass = 0.0;    // g
    Softness softness = Softness::Rigid;
    // Structural traits: some shoes have no stable sole-up pose, and some
    // are markedly hard to topple out of the side state.
    bool has_bottom_state = true;
    bool side_topple_hard = false;
};

struct BoxModel {
    std::string name;
    double length = 0.0;       // mm
    double width = 0.0;        // mm
    double wall_height = 0.0;  // mm
};

struct CatalogEntry {
    ShoeModel shoe;
    BoxModel box;
};

// The four tested shoe/box pairs. Lengths, masses and box dimensions are
// measured values; widths and heights are representative estimates.
const std::vector<CatalogEntry>& catalog();

const CatalogEntry& catalog_entry(const std::string& name);
const CatalogEntry& catalog_entry(std::size_t index);

}  // namespace packpair
