#pragma once

#include <set>

#include "prefixm/words.hpp"

namespace prefixm {

// Birooted subtree of the Cayley tree traced by a word: vertex set is
// the reduced prefixes, second root is the reduced word itself.
struct MunnTree {
    AlphabetPtr alphabet;
    std::set<std::vector<Letter>> vertices;
    std::vector<Letter> endpoint;

    bool operator==(const MunnTree& rhs) const {
        return vertices == rhs.vertices && endpoint == rhs.endpoint;
    }
};

MunnTree munn_tree(const Word& w);
bool fim_equal(const Word& u, const Word& v);

// Sorted printable vertex list, for CLI display.
std::vector<std::string> munn_vertex_strings(const MunnTree& t);

}  // namespace prefixm
