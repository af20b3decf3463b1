#pragma once

// Built-in proper ball maps. The n = 2, N = 3 entries are Faran's four
// representatives; each map sends e_n to e_N so its Cayley conjugate fixes 0.

#include <string>
#include <vector>

#include "ballmap.hpp"

namespace crball {

struct CatalogEntry {
    RationalMap map;
    int expected_degree = 0;
    bool faran = false;  // member of the n = 2, N = 3 family
};

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        auto proper = [](RationalMap m) {
            m.proper = true;
            return m;
        };
        std::vector<CatalogEntry> e;
        e.push_back({proper(RationalMap::parse("linear_2_3", 2, Side::ball, {"z1", "0", "z2"})), 1, true});
        e.push_back({proper(RationalMap::parse("whitney_2_3", 2, Side::ball, {"z1", "z1*z2", "z2^2"})), 2, true});
        e.push_back({proper(RationalMap::parse("homogeneous_2_3", 2, Side::ball, {"z1^2", "z1*z2", "z2^2"}, "1",
                                               {Rational(1), Rational(2), Rational(1)})),
                     2, true});
        e.push_back({proper(RationalMap::parse("faran_cubic_2_3", 2, Side::ball, {"z1^3", "z1*z2", "z2^3"}, "1",
                                               {Rational(1), Rational(3), Rational(1)})),
                     3, true});
        e.push_back({proper(RationalMap::parse("linear_3_5", 3, Side::ball, {"z1", "z2", "0", "0", "z3"})), 1, false});
        e.push_back({proper(RationalMap::parse("homogeneous_3_6", 3, Side::ball,
                                               {"z1^2", "z1*z2", "z1*z3", "z2^2", "z2*z3", "z3^2"}, "1",
                                               {Rational(1), Rational(2), Rational(2), Rational(1), Rational(2), Rational(1)})),
                     2, false});
        e.push_back({proper(RationalMap::parse("whitney_3_5", 3, Side::ball, {"z1", "z2", "z3*z1", "z3*z2", "z3^2"})), 2, false});
        return e;
    }();
    return entries;
}

inline const CatalogEntry* find_catalog_entry(const std::string& name) {
    for (const auto& e : catalog()) {
        if (e.map.name == name) return &e;
    }
    return nullptr;
}

} // namespace crball
