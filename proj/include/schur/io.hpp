#pragma once

// JSON file formats.
//
// Words, surfaces, rewrite traces, and certificates are small JSON
// documents keyed by the owning group's spec. Elements are written in
// display form, so the files stay readable and survive a round trip
// through GroupTable::parse. Readers re-validate structure against the
// table and throw parse_error on malformed documents; semantic checks
// (kernel membership, certificate claims) stay with the callers.

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "schur/extend.hpp"
#include "schur/group.hpp"
#include "schur/pairword.hpp"
#include "schur/util.hpp"

namespace schur {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& need_field(const Json& j, const char* key) {
    if (!j.is_object()) throw parse_error(std::string("expected an object holding \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) throw parse_error(std::string("missing field \"") + key + "\"");
    return *it;
}

inline std::string need_string(const Json& j, const char* key) {
    const Json& v = need_field(j, key);
    if (!v.is_string()) throw parse_error(std::string("field \"") + key + "\" must be a string");
    return v.get<std::string>();
}

inline long long need_int(const Json& j, const char* key) {
    const Json& v = need_field(j, key);
    if (!v.is_number_integer()) throw parse_error(std::string("field \"") + key + "\" must be an integer");
    return v.get<long long>();
}

inline std::uint64_t need_u64(const Json& j, const char* key) {
    const Json& v = need_field(j, key);
    if (!v.is_number_unsigned() && !v.is_number_integer())
        throw parse_error(std::string("field \"") + key + "\" must be an unsigned integer");
    return v.get<std::uint64_t>();
}

inline bool need_bool(const Json& j, const char* key) {
    const Json& v = need_field(j, key);
    if (!v.is_boolean()) throw parse_error(std::string("field \"") + key + "\" must be a boolean");
    return v.get<bool>();
}

inline const Json& need_array(const Json& j, const char* key) {
    const Json& v = need_field(j, key);
    if (!v.is_array()) throw parse_error(std::string("field \"") + key + "\" must be an array");
    return v;
}

inline void need_group(const GroupTable& G, const Json& j) {
    std::string spec = need_string(j, "group");
    if (spec != G.spec) throw parse_error("file is for group " + spec + ", expected " + G.spec);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Words and surfaces
// ---------------------------------------------------------------------------

inline Json word_to_json(const GroupTable& G, const PairWord& w) {
    Json letters = Json::array();
    for (const auto& l : w) {
        check_letter(G, l);
        letters.push_back({{"x", G.display(l.x)}, {"y", G.display(l.y)}, {"e", l.e}});
    }
    return Json{{"group", G.spec}, {"letters", std::move(letters)}};
}

inline PairWord word_from_json(const GroupTable& G, const Json& j) {
    detail::need_group(G, j);
    PairWord w;
    for (const Json& e : detail::need_array(j, "letters")) {
        PairLetter l;
        l.x = G.parse(detail::need_string(e, "x"));
        l.y = G.parse(detail::need_string(e, "y"));
        long long exp = detail::need_int(e, "e");
        if (exp != 1 && exp != -1) throw parse_error("letter exponent must be +1 or -1");
        l.e = static_cast<int>(exp);
        w.push_back(l);
    }
    return w;
}

inline Json surface_to_json(const GroupTable& G, const SurfaceWord& s) {
    Json handles = Json::array();
    for (const auto& h : s.handles) {
        check_letter(G, {h.x, h.y, 1});
        handles.push_back({{"y", G.display(h.y)}, {"x", G.display(h.x)}});
    }
    return Json{{"group", G.spec}, {"handles", std::move(handles)}};
}

inline SurfaceWord surface_from_json(const GroupTable& G, const Json& j) {
    detail::need_group(G, j);
    SurfaceWord s;
    for (const Json& e : detail::need_array(j, "handles"))
        s.handles.push_back({G.parse(detail::need_string(e, "y")), G.parse(detail::need_string(e, "x"))});
    return s;
}

// ---------------------------------------------------------------------------
// Rewrite traces
// ---------------------------------------------------------------------------

inline Json trace_to_json(const GroupTable& G, const RewriteTrace& tr) {
    Json steps = Json::array();
    for (const RewriteStep& s : tr) {
        Json elems = Json::array();
        for (Elem g : s.params.elems) elems.push_back(G.display(g));
        steps.push_back({{"rule", rule_name(s.rule)},
                         {"pos", s.pos},
                         {"dir", s.dir == Dir::Forward ? "fwd" : "bwd"},
                         {"elems", std::move(elems)},
                         {"ints", s.params.ints},
                         {"before", s.before},
                         {"after", s.after}});
    }
    return Json{{"group", G.spec}, {"steps", std::move(steps)}};
}

inline RewriteTrace trace_from_json(const GroupTable& G, const Json& j) {
    detail::need_group(G, j);
    RewriteTrace tr;
    for (const Json& e : detail::need_array(j, "steps")) {
        RewriteStep s;
        s.rule = rule_from_name(detail::need_string(e, "rule"));
        s.pos = static_cast<int>(detail::need_int(e, "pos"));
        std::string dir = detail::need_string(e, "dir");
        if (dir != "fwd" && dir != "bwd") throw parse_error("step direction must be fwd or bwd");
        s.dir = dir == "fwd" ? Dir::Forward : Dir::Backward;
        for (const Json& g : detail::need_array(e, "elems")) {
            if (!g.is_string()) throw parse_error("step elements must be strings");
            s.params.elems.push_back(G.parse(g.get<std::string>()));
        }
        for (const Json& n : detail::need_array(e, "ints")) {
            if (!n.is_number_integer()) throw parse_error("step exponents must be integers");
            s.params.ints.push_back(n.get<long long>());
        }
        s.before = detail::need_u64(e, "before");
        s.after = detail::need_u64(e, "after");
        tr.push_back(std::move(s));
    }
    return tr;
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

inline Json certificate_to_json(const GroupTable& G, const ExtensionCertificate& c) {
    Json pieces = Json::array();
    for (const GenusOnePiece& p : c.pieces)
        pieces.push_back({{"g", G.display(p.g)}, {"k", G.display(p.k)}, {"commuting", p.commuting}});
    Json recipe = Json::array();
    for (const PieceRecipe& r : c.recipes) {
        Json iso = Json::array();
        for (Elem g : r.isotropy) iso.push_back(G.display(g));
        recipe.push_back({{"rotation_order", r.rotation_order},
                          {"isotropy", std::move(iso)},
                          {"fixed_locus", r.fixed_locus},
                          {"transverse", G.display(r.transverse)}});
    }
    Json branch = Json::array();
    for (const BranchData& b : c.branch_data)
        branch.push_back({{"degree", b.degree},
                          {"quotient_genus", b.quotient_genus},
                          {"orders", b.branch_orders},
                          {"chi", b.chi}});
    return Json{{"group", c.group_spec},
                {"pieces", std::move(pieces)},
                {"recipe", std::move(recipe)},
                {"provenance", trace_to_json(G, c.provenance)["steps"]},
                {"branch", std::move(branch)}};
}

inline ExtensionCertificate certificate_from_json(const GroupTable& G, const Json& j) {
    detail::need_group(G, j);
    ExtensionCertificate c;
    c.group_spec = G.spec;
    for (const Json& e : detail::need_array(j, "pieces"))
        c.pieces.push_back({G.parse(detail::need_string(e, "g")), G.parse(detail::need_string(e, "k")),
                            detail::need_bool(e, "commuting")});
    for (const Json& e : detail::need_array(j, "recipe")) {
        PieceRecipe r;
        r.rotation_order = static_cast<int>(detail::need_int(e, "rotation_order"));
        for (const Json& g : detail::need_array(e, "isotropy")) {
            if (!g.is_string()) throw parse_error("isotropy entries must be strings");
            r.isotropy.push_back(G.parse(g.get<std::string>()));
        }
        r.fixed_locus = detail::need_bool(e, "fixed_locus");
        r.transverse = G.parse(detail::need_string(e, "transverse"));
        c.recipes.push_back(std::move(r));
    }
    Json prov = Json{{"group", G.spec}, {"steps", detail::need_array(j, "provenance")}};
    c.provenance = trace_from_json(G, prov);
    for (const Json& e : detail::need_array(j, "branch")) {
        BranchData b;
        b.degree = detail::need_int(e, "degree");
        b.quotient_genus = detail::need_int(e, "quotient_genus");
        for (const Json& n : detail::need_array(e, "orders")) {
            if (!n.is_number_integer()) throw parse_error("branching orders must be integers");
            b.branch_orders.push_back(n.get<long long>());
        }
        b.chi = detail::need_int(e, "chi");
        c.branch_data.push_back(std::move(b));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw parse_error("malformed JSON in " + path);
    return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw precondition_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace schur
