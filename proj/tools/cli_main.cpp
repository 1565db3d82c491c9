#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "prefixm/munn.hpp"
#include "prefixm/oracle.hpp"
#include "prefixm/parse.hpp"

using json = nlohmann::ordered_json;
using namespace prefixm;

namespace {

constexpr int kYes = 0, kNo = 1, kUnsupported = 2, kResources = 3;
constexpr int kUsage = 64, kParse = 65;

struct Options {
    bool json = false;
    std::size_t max_len = 24;
    std::size_t automaton_cap = 1u << 20;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error(0, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* answer_str(MemberResult::Answer a) {
    switch (a) {
        case MemberResult::yes: return "yes";
        case MemberResult::no: return "no";
        case MemberResult::resources: return "resource-exceeded";
        default: return "unsupported";
    }
}

int answer_exit(MemberResult::Answer a) {
    switch (a) {
        case MemberResult::yes: return kYes;
        case MemberResult::no: return kNo;
        case MemberResult::resources: return kResources;
        default: return kUnsupported;
    }
}

// The stable report shape for every membership-style query.
json report_json(const std::string& query, const MemberResult& r,
                 const std::string& cls) {
    json j;
    j["query"] = query;
    j["answer"] = answer_str(r.answer);
    j["class"] = cls;
    j["method"] = r.method;
    if (r.witness) {
        json w = json::array();
        for (const Word& f : *r.witness) w.push_back(print_word(f));
        j["witness"] = w;
    }
    j["unchecked-hypotheses"] = r.unchecked_hypotheses;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

void print_report(const Options& opt, const std::string& query,
                  const MemberResult& r, const std::string& cls) {
    if (opt.json) {
        std::cout << report_json(query, r, cls).dump(2) << "\n";
        return;
    }
    std::cout << query << ": " << answer_str(r.answer);
    if (!cls.empty()) std::cout << "  (class " << cls << ", " << r.method << ")";
    std::cout << "\n";
    if (r.witness) {
        std::cout << "witness:";
        for (const Word& f : *r.witness) std::cout << " " << print_word(f);
        std::cout << "\n";
    }
    for (const std::string& h : r.unchecked_hypotheses)
        std::cout << "unchecked hypothesis: " << h << "\n";
    if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
}

// First tag with a decision procedure; nullopt when everything failed.
std::optional<ClassTag> pick_tag(const std::vector<ClassTag>& tags) {
    for (const ClassTag& t : tags)
        if (t.decider) return t;
    return std::nullopt;
}

std::string alphabet_str(const AlphabetPtr& a) {
    std::string s;
    for (std::size_t i = 0; i < a->size(); ++i) {
        if (i) s += " ";
        s += to_string(a->at(i));
    }
    return s;
}

// Alphabet inferred from the base characters appearing in the words
// (subscripted generators need an explicit presentation file).
AlphabetPtr infer_alphabet(std::initializer_list<std::string> words) {
    std::set<char> bases;
    for (const std::string& w : words)
        for (char c : w) {
            unsigned char u = static_cast<unsigned char>(c);
            if (std::islower(u)) bases.insert(c);
            else if (std::isupper(u)) bases.insert(static_cast<char>(std::tolower(u)));
            else throw parse_error(0, std::string("bad letter '") + c + "'");
        }
    if (bases.empty()) throw parse_error(0, "cannot infer an alphabet from empty words");
    return make_alphabet(std::string(bases.begin(), bases.end()));
}

int cmd_classify(const Options& opt, const std::string& file) {
    Presentation p = parse_presentation(read_file(file));
    std::vector<ClassTag> tags = classify(p);
    if (opt.json) {
        json j;
        j["gens"] = alphabet_str(p.alphabet);
        j["rel"] = print_word(p.relator);
        j["classes"] = json::array();
        for (const ClassTag& t : tags) {
            json c;
            c["class"] = to_string(t.kind);
            c["provenance"] = t.provenance;
            if (t.stable) c["stable"] = to_string(*t.stable);
            if (!t.note.empty()) c["note"] = t.note;
            json ps = json::array();
            for (const Word& w : t.pieces) ps.push_back(print_word(w));
            c["pieces"] = ps;
            j["classes"].push_back(c);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const ClassTag& t : tags) {
            std::cout << "class: " << to_string(t.kind);
            if (!t.provenance.empty()) std::cout << "  [" << t.provenance << "]";
            if (t.stable) std::cout << "  stable=" << to_string(*t.stable);
            std::cout << "\n";
            if (!t.note.empty()) std::cout << "  note: " << t.note << "\n";
        }
    }
    return pick_tag(tags) ? kYes : kUnsupported;
}

int cmd_pieces(const Options& opt, const std::string& file,
               const std::string& algo) {
    Presentation p = parse_presentation(read_file(file));
    Factorisation f = algo == "adjan" ? adjan_factorisation(p.relator)
                                      : benois_pieces(p.relator);
    std::vector<Word> pieces = f.pieces();
    if (opt.json) {
        json j;
        j["algo"] = algo;
        j["rel"] = print_word(p.relator);
        j["pieces"] = json::array();
        for (const Word& w : pieces) j["pieces"].push_back(print_word(w));
        j["cuts"] = f.cut_points;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const Word& w : pieces) std::cout << "(" << print_word(w) << ")";
        std::cout << "\n";
    }
    return kYes;
}

int cmd_adjan(const Options& opt, const std::string& file) {
    Presentation p = parse_presentation(read_file(file));
    std::vector<Word> gamma = adjan_overlap({p.relator});
    if (opt.json) {
        json j;
        j["gamma"] = json::array();
        for (const Word& w : gamma) j["gamma"].push_back(print_word(w));
        std::cout << j.dump(2) << "\n";
    } else {
        for (const Word& w : gamma) std::cout << print_word(w) << "\n";
    }
    return kYes;
}

int cmd_prefix_member(const Options& opt, const std::string& file,
                      const std::string& word) {
    Presentation p = parse_presentation(read_file(file));
    Word q = parse_word(p.alphabet, word);
    std::vector<ClassTag> tags = classify(p);
    auto tag = pick_tag(tags);
    if (!tag) {
        MemberResult r;
        r.method = "classification";
        r.note = tags.empty() ? "no class tag" : tags.front().note;
        print_report(opt, word, r, "unsupported");
        return kUnsupported;
    }
    MemberResult r = prefix_member(p, *tag, q, opt.automaton_cap, opt.max_len);
    print_report(opt, word, r, to_string(tag->kind));
    return answer_exit(r.answer);
}

int cmd_right_invertible(const Options& opt, const std::string& file,
                         const std::string& word) {
    Presentation p = parse_presentation(read_file(file));
    Word q = parse_word(p.alphabet, word);
    std::string cls;
    for (const ClassTag& t : classify(p))
        if (t.decider) { cls = to_string(t.kind); break; }
    MemberResult r;
    try {
        r = right_invertible(p, q, opt.automaton_cap);
    } catch (const std::invalid_argument& e) {
        r.answer = MemberResult::unsupported;
        r.method = "right-invertibility";
        r.note = e.what();
    }
    print_report(opt, word, r, cls);
    return answer_exit(r.answer);
}

int cmd_submonoid_amalgam(const Options& opt, const std::string& spec_file,
                          const std::string& gens_file, const std::string& word) {
    auto spec = parse_amalgam(read_file(spec_file));
    GroupHandle g = amalgam_handle(spec);
    // Generators sorted to sides by letter ownership; a mixed word has
    // no side and is rejected.
    std::vector<Word> mb, mc;
    for (const Word& w : parse_gens(g.generators, read_file(gens_file))) {
        bool in_b = true, in_c = true;
        for (const Letter& l : w.letters()) {
            const Symbol& s = g.generators->at(l.sym);
            if (!spec->B.generators->contains(s)) in_b = false;
            if (!spec->C.generators->contains(s)) in_c = false;
        }
        if (in_b) mb.push_back(parse_word(spec->B.generators, print_word(w)));
        else if (in_c) mc.push_back(parse_word(spec->C.generators, print_word(w)));
        else throw parse_error(0, "generator \"" + print_word(w) +
                                      "\" mixes letters of both factors");
    }
    Word q = parse_word(g.generators, word);
    SyllableForm sq = split_syllables(*spec, g.generators, q);
    MemberResult r;
    bool both_free = as_free(spec->B).has_value() && as_free(spec->C).has_value();
    try {
        if (both_free) {
            r.method = "amalgam-rational-chain";
            r.answer = member_thmB(*spec, mb, mc, sq, opt.automaton_cap)
                           ? MemberResult::yes
                           : MemberResult::no;
        } else {
            r.method = "amalgam-syllable";
            r.unchecked_hypotheses.push_back(
                "the amalgamated subgroup lies in both generated submonoids");
            r.answer = member_thmA(*spec, mb, mc, sq) ? MemberResult::yes
                                                      : MemberResult::no;
        }
    } catch (const resource_exceeded& e) {
        r.answer = MemberResult::resources;
        r.note = e.what();
    }
    print_report(opt, word, r, "");
    return answer_exit(r.answer);
}

int cmd_submonoid_hnn(const Options& opt, const std::string& spec_file,
                      const std::string& gens_file, const std::string& word) {
    auto spec = parse_hnn(read_file(spec_file));
    std::vector<Word> t_gens =
        parse_gens(spec->base.generators, read_file(gens_file));
    Word q = parse_word(spec->combined, word);
    MemberResult r;
    r.method = "hnn-syllable";
    r.unchecked_hypotheses.push_back(
        "both associated subgroups lie in the generated submonoid");
    try {
        r.answer = member_thmC(*spec, t_gens, q) ? MemberResult::yes
                                                 : MemberResult::no;
    } catch (const resource_exceeded& e) {
        r.answer = MemberResult::resources;
        r.note = e.what();
    }
    print_report(opt, word, r, "");
    return answer_exit(r.answer);
}

int cmd_munn_eq(const Options& opt, const std::string& u_text,
                const std::string& v_text, bool vertices) {
    AlphabetPtr alpha = infer_alphabet({u_text, v_text});
    Word u = parse_word(alpha, u_text);
    Word v = parse_word(alpha, v_text);
    bool eq = fim_equal(u, v);
    if (opt.json) {
        json j;
        j["u"] = u_text;
        j["v"] = v_text;
        j["equal"] = eq;
        if (vertices) {
            j["u-vertices"] = munn_vertex_strings(munn_tree(u));
            j["v-vertices"] = munn_vertex_strings(munn_tree(v));
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (eq ? "equal" : "distinct") << "\n";
        if (vertices) {
            auto dump = [](const char* tag, const Word& w) {
                std::cout << tag << ":";
                for (const std::string& s : munn_vertex_strings(munn_tree(w)))
                    std::cout << " " << (s.empty() ? "1" : s);
                std::cout << "\n";
            };
            dump("u", u);
            dump("v", v);
        }
    }
    return eq ? kYes : kNo;
}

int cmd_oracle(const Options& opt, const std::string& file,
               const std::string& word) {
    Presentation p = parse_presentation(read_file(file));
    Word q = parse_word(p.alphabet, word);
    auto tag = pick_tag(classify(p));
    if (!tag) {
        MemberResult r;
        r.method = "oracle";
        r.note = "no supported class provides a group model";
        print_report(opt, word, r, "unsupported");
        return kUnsupported;
    }
    auto hit = oracle_member(tag->decider->group(), tag->decider->monoid_gens(),
                             free_reduce(q), opt.max_len);
    MemberResult r;
    r.method = "oracle";
    if (hit) {
        r.answer = MemberResult::yes;
        r.witness = std::move(*hit);
    } else {
        r.answer = MemberResult::no;
        r.note = "not-found-at-bound " + std::to_string(opt.max_len);
    }
    print_report(opt, word, r, to_string(tag->kind));
    return answer_exit(r.answer);
}

int cmd_reduce(const Options& opt, const std::string& word) {
    AlphabetPtr alpha = infer_alphabet({word});
    std::string out = print_word(free_reduce(parse_word(alpha, word)));
    if (opt.json) {
        json j;
        j["word"] = word;
        j["reduced"] = out;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << out << "\n";
    }
    return kYes;
}

std::string dirname_of(const std::string& path) {
    std::size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

int cmd_corpus(const Options& opt, const std::string& manifest_path) {
    json manifest;
    try {
        manifest = json::parse(read_file(manifest_path));
    } catch (const json::exception& e) {
        throw parse_error(0, std::string("manifest: ") + e.what());
    }
    std::string dir = dirname_of(manifest_path);
    std::size_t pass = 0, fail = 0;
    json results = json::array();
    auto record = [&](const std::string& file, const std::string& what,
                      bool ok, const std::string& detail) {
        ok ? ++pass : ++fail;
        if (opt.json) {
            json r;
            r["file"] = file;
            r["check"] = what;
            r["ok"] = ok;
            if (!detail.empty()) r["detail"] = detail;
            results.push_back(r);
        } else {
            std::cout << (ok ? "PASS" : "FAIL") << "  " << file << "  " << what;
            if (!detail.empty()) std::cout << "  (" << detail << ")";
            std::cout << "\n";
        }
    };
    for (const json& entry : manifest.at("entries")) {
        std::string file = entry.at("file").get<std::string>();
        std::string path = dir + "/" + file;
        Presentation p;
        std::vector<ClassTag> tags;
        try {
            p = parse_presentation(read_file(path));
            tags = classify(p);
        } catch (const std::exception& e) {
            record(file, "load", false, e.what());
            continue;
        }
        if (entry.contains("class")) {
            std::string want = entry.at("class").get<std::string>();
            bool found = false;
            for (const ClassTag& t : tags)
                if (to_string(t.kind) == want && t.decider) found = true;
            std::string got;
            for (const ClassTag& t : tags) {
                if (!got.empty()) got += ",";
                got += to_string(t.kind);
            }
            record(file, "class " + want, found, found ? "" : "got " + got);
        }
        auto tag = pick_tag(tags);
        for (const json& qj : entry.value("queries", json::array())) {
            std::string word = qj.at("word").get<std::string>();
            std::string want = qj.at("expect").get<std::string>();
            std::string got;
            try {
                if (!tag) {
                    got = "unsupported";
                } else {
                    Word q = parse_word(p.alphabet, word);
                    got = answer_str(
                        prefix_member(p, *tag, q, opt.automaton_cap, opt.max_len)
                            .answer);
                }
            } catch (const std::exception& e) {
                record(file, "query " + word, false, e.what());
                continue;
            }
            record(file, "query " + word + " -> " + want, got == want,
                   got == want ? "" : "got " + got);
        }
    }
    if (opt.json) {
        json j;
        j["pass"] = pass;
        j["fail"] = fail;
        j["results"] = results;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << pass << " passed, " << fail << " failed\n";
    }
    return fail == 0 ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prefix membership toolkit for one-relator groups"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_flag("--json", opt.json, "emit JSON reports");
    app.add_option("--max-len", opt.max_len,
                   "witness / oracle product-length bound");
    app.add_option("--automaton-cap", opt.automaton_cap,
                   "state cap for automaton constructions");

    std::string file, word, algo = "benois", gens_file, amalgam_file, hnn_file;
    std::string u_text, v_text;
    bool vertices = false;

    CLI::App* c_classify = app.add_subcommand("classify", "class tags of a presentation");
    c_classify->add_option("file", file)->required();

    CLI::App* c_pieces = app.add_subcommand("pieces", "invertible-piece factorisation of the relator");
    c_pieces->add_option("file", file)->required();
    c_pieces->add_option("--algo", algo)->check(CLI::IsMember({"benois", "adjan"}));

    CLI::App* c_adjan = app.add_subcommand("adjan", "overlap closure of the relator");
    c_adjan->add_option("file", file)->required();

    CLI::App* c_pm = app.add_subcommand("prefix-member", "membership in the prefix monoid");
    c_pm->add_option("file", file)->required();
    c_pm->add_option("--word", word)->required();

    CLI::App* c_ri = app.add_subcommand("right-invertible", "right invertibility in the inverse monoid");
    c_ri->add_option("file", file)->required();
    c_ri->add_option("--word", word)->required();

    CLI::App* c_sm = app.add_subcommand("submonoid-member", "membership in a generated submonoid");
    c_sm->add_option("--amalgam", amalgam_file);
    c_sm->add_option("--hnn", hnn_file);
    c_sm->add_option("--gens", gens_file)->required();
    c_sm->add_option("--word", word)->required();

    CLI::App* c_munn = app.add_subcommand("munn-eq", "equality in the free inverse monoid");
    c_munn->add_option("u", u_text)->required();
    c_munn->add_option("v", v_text)->required();
    c_munn->add_flag("--vertices", vertices, "print Munn tree vertex lists");

    CLI::App* c_oracle = app.add_subcommand("oracle", "bounded product search over the prefix generators");
    c_oracle->add_option("file", file)->required();
    c_oracle->add_option("--word", word)->required();

    CLI::App* c_reduce = app.add_subcommand("reduce", "free reduction of a word");
    c_reduce->add_option("word", word)->required();

    CLI::App* c_corpus = app.add_subcommand("corpus", "run a manifest of presentations and queries");
    c_corpus->add_option("manifest", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*c_classify) return cmd_classify(opt, file);
        if (*c_pieces) return cmd_pieces(opt, file, algo);
        if (*c_adjan) return cmd_adjan(opt, file);
        if (*c_pm) return cmd_prefix_member(opt, file, word);
        if (*c_ri) return cmd_right_invertible(opt, file, word);
        if (*c_sm) {
            if (amalgam_file.empty() == hnn_file.empty()) {
                std::cerr << "exactly one of --amalgam / --hnn is required\n";
                return kUsage;
            }
            return amalgam_file.empty()
                       ? cmd_submonoid_hnn(opt, hnn_file, gens_file, word)
                       : cmd_submonoid_amalgam(opt, amalgam_file, gens_file, word);
        }
        if (*c_munn) return cmd_munn_eq(opt, u_text, v_text, vertices);
        if (*c_oracle) return cmd_oracle(opt, file, word);
        if (*c_reduce) return cmd_reduce(opt, word);
        if (*c_corpus) return cmd_corpus(opt, file);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const resource_exceeded& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResources;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return kUsage;
}
