#include "prefixm/munn.hpp"

namespace prefixm {

MunnTree munn_tree(const Word& w) {
    MunnTree t;
    t.alphabet = w.alphabet();
    std::vector<Letter> cur;
    t.vertices.insert(cur);
    for (const Letter& l : w.letters()) {
        if (!cur.empty() && cur.back() == l.inverse())
            cur.pop_back();
        else
            cur.push_back(l);
        t.vertices.insert(cur);
    }
    t.endpoint = cur;
    return t;
}

bool fim_equal(const Word& u, const Word& v) {
    return munn_tree(u) == munn_tree(v);
}

std::vector<std::string> munn_vertex_strings(const MunnTree& t) {
    std::vector<std::string> out;
    for (const auto& v : t.vertices)
        out.push_back(t.alphabet ? print_word(Word(t.alphabet, v)) : "1");
    return out;
}

}  // namespace prefixm
