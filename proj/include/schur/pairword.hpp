#pragma once

// Words in the free group on pairs <x,y> over a fixed finite group, the
// defining and derived relations as auditable positional rewrites, and the
// correspondence with genus-n surface monodromy data.
//
// Conventions, pinned once here and relied on everywhere else:
//   [x,y] = x y x^-1 y^-1, conjugation g.h = g h g^-1, and a conjugated pair
//   <u,v>^g is evaluated eagerly to <g u g^-1, g v g^-1> before storage.
// A letter with exponent -1 denotes the formal inverse of the pair; rule R2
// converts between the two sign forms.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "schur/group.hpp"
#include "schur/util.hpp"

namespace schur {

struct PairLetter {
    Elem x = 0;
    Elem y = 0;
    int e = 1;

    friend bool operator==(const PairLetter&, const PairLetter&) = default;
};

using PairWord = std::vector<PairLetter>;

// Handles are stored in surface order, which reverses word order: the word
// <x_1,y_1>...<x_n,y_n> corresponds to handles (y_n,x_n),...,(y_1,x_1).
struct SurfaceHandle {
    Elem y = 0;
    Elem x = 0;

    friend bool operator==(const SurfaceHandle&, const SurfaceHandle&) = default;
};

struct SurfaceWord {
    std::vector<SurfaceHandle> handles;

    int genus() const { return static_cast<int>(handles.size()); }
};

inline void check_letter(const GroupTable& G, const PairLetter& l) {
    if (l.x < 0 || l.x >= G.order() || l.y < 0 || l.y >= G.order())
        throw precondition_error("letter element out of range");
    if (l.e != 1 && l.e != -1) throw precondition_error("letter exponent must be +1 or -1");
}

inline Elem commutator_product(const GroupTable& G, const PairWord& w) {
    Elem p = G.identity();
    for (const auto& l : w) {
        check_letter(G, l);
        Elem c = commutator(G, l.x, l.y);
        p = G.mul(p, l.e == 1 ? c : G.inv(c));
    }
    return p;
}

inline bool in_z(const GroupTable& G, const PairWord& w) {
    return commutator_product(G, w) == G.identity();
}

// Stable digest of the canonical rendering: FNV-1a over the letters as
// decimal "x,y,e;" index triplets. Documented in the README; traces embed it.
inline std::uint64_t word_digest(const PairWord& w) {
    std::string blob;
    for (const auto& l : w) {
        blob += std::to_string(l.x);
        blob += ',';
        blob += std::to_string(l.y);
        blob += ',';
        blob += l.e == 1 ? '+' : '-';
        blob += ';';
    }
    return fnv1a(blob);
}

inline std::string render_word(const GroupTable& G, const PairWord& w) {
    std::string out;
    for (const auto& l : w) {
        out += '<';
        out += G.display(l.x);
        out += '|';
        out += G.display(l.y);
        out += l.e == 1 ? "|+1>" : "|-1>";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rewrite rules
// ---------------------------------------------------------------------------
//
// Forward direction replaces the numbered left side at `pos` by the right
// side; backward matches the right side and restores the left. Parameters
// carry the group elements that the matched letters do not determine.
//
//   R1  <x,x>                     <-> (empty)
//   R2  <x,y>                     <-> <y,x>^-1
//   R3  <x*y, z>                  <-> <y,z>^x <x,z>                params fwd: x
//   R4  <y,z>^x                   <-> <x,[y,z]> <y,z>              params fwd: x
//   R5  <x, y*z>                  <-> <x,y> <x,z>^y                params fwd: y
//   R6  <a,b> <x,y> <a,b>^-1      <-> <x,y>^[a,b]                  params bwd: a,b
//   R7  <x,y> <a,b> <x,y>^-1 <a,b>^-1 <-> <[x,y],[a,b]>            params bwd: x,y,a,b
//   R8  <b,b'> <a0,b0>            <-> <[b,b'],a0> <a0,[b,b']b0> <b,b'>
//   R9  <b,b'> <b0,a0>            <-> <[b,b']b0,a0> <a0,[b,b']> <b,b'>
//   R10 <b,b'> <a,a'>             <-> <[b,b'],[a,a']> <a,a'> <b,b'>
//   R11 <x^n, x^s>                <-> (empty)                      params: x, n, s
//
// Two extra step kinds close the system for trace purposes: Swap is the
// commuting shift <x,y><a,b> <-> <a,b><x,y>^[b,a], and Cancel is free
// reduction of a letter against its adjacent formal inverse.

enum class Rule : std::uint8_t { R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, R11, Swap, Cancel };

enum class Dir : std::uint8_t { Forward, Backward };

inline const char* rule_name(Rule r) {
    switch (r) {
        case Rule::R1: return "R1";
        case Rule::R2: return "R2";
        case Rule::R3: return "R3";
        case Rule::R4: return "R4";
        case Rule::R5: return "R5";
        case Rule::R6: return "R6";
        case Rule::R7: return "R7";
        case Rule::R8: return "R8";
        case Rule::R9: return "R9";
        case Rule::R10: return "R10";
        case Rule::R11: return "R11";
        case Rule::Swap: return "SWAP";
        case Rule::Cancel: return "CANCEL";
    }
    return "?";
}

inline Rule rule_from_name(const std::string& s) {
    for (Rule r : {Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6, Rule::R7, Rule::R8,
                   Rule::R9, Rule::R10, Rule::R11, Rule::Swap, Rule::Cancel})
        if (s == rule_name(r)) return r;
    throw parse_error("unknown rule id: " + s);
}

struct RuleParams {
    std::vector<Elem> elems;
    std::vector<long long> ints;
};

struct RewriteStep {
    Rule rule = Rule::R1;
    int pos = 0;
    Dir dir = Dir::Forward;
    RuleParams params;
    std::uint64_t before = 0;
    std::uint64_t after = 0;
};

using RewriteTrace = std::vector<RewriteStep>;

namespace detail {

inline void need_span(const PairWord& w, int pos, int len) {
    if (pos < 0 || pos + len > static_cast<int>(w.size()))
        throw precondition_error("rewrite position out of range");
}

inline void need_insert_pos(const PairWord& w, int pos) {
    if (pos < 0 || pos > static_cast<int>(w.size()))
        throw precondition_error("rewrite position out of range");
}

inline const PairLetter& positive_at(const PairWord& w, int pos) {
    const PairLetter& l = w[static_cast<size_t>(pos)];
    if (l.e != 1) throw precondition_error("rule requires exponent +1 at the matched letter");
    return l;
}

inline Elem param_elem(const GroupTable& G, const RuleParams& p, size_t i) {
    if (i >= p.elems.size()) throw precondition_error("missing rule parameter");
    Elem g = p.elems[i];
    if (g < 0 || g >= G.order()) throw precondition_error("rule parameter out of range");
    return g;
}

inline long long param_int(const RuleParams& p, size_t i) {
    if (i >= p.ints.size()) throw precondition_error("missing rule exponent parameter");
    return p.ints[i];
}

inline void splice(PairWord& w, int pos, int removed, const std::vector<PairLetter>& put) {
    w.erase(w.begin() + pos, w.begin() + pos + removed);
    w.insert(w.begin() + pos, put.begin(), put.end());
}

}  // namespace detail

inline std::pair<PairWord, RewriteStep> apply_relation(const GroupTable& G, const PairWord& w, Rule rule,
                                                       int pos, const RuleParams& params, Dir dir) {
    using detail::need_insert_pos;
    using detail::need_span;
    using detail::param_elem;
    using detail::param_int;
    using detail::positive_at;

    for (const auto& l : w) check_letter(G, l);
    PairWord out = w;
    bool fwd = dir == Dir::Forward;

    auto conj_letter = [&](Elem g, const PairLetter& l) {
        return PairLetter{G.conj(g, l.x), G.conj(g, l.y), l.e};
    };

    switch (rule) {
        case Rule::R1: {
            if (fwd) {
                need_span(w, pos, 1);
                const PairLetter& l = positive_at(w, pos);
                if (l.x != l.y) throw precondition_error("R1 needs a letter of the form <x,x>");
                detail::splice(out, pos, 1, {});
            } else {
                need_insert_pos(w, pos);
                Elem x = param_elem(G, params, 0);
                detail::splice(out, pos, 0, {{x, x, 1}});
            }
            break;
        }
        case Rule::R2: {
            need_span(w, pos, 1);
            const PairLetter& l = w[static_cast<size_t>(pos)];
            if (fwd) {
                if (l.e != 1) throw precondition_error("R2 forward needs exponent +1");
                detail::splice(out, pos, 1, {{l.y, l.x, -1}});
            } else {
                if (l.e != -1) throw precondition_error("R2 backward needs exponent -1");
                detail::splice(out, pos, 1, {{l.y, l.x, 1}});
            }
            break;
        }
        case Rule::R3: {
            // <x*y, z> <-> <y,z>^x <x,z>
            if (fwd) {
                need_span(w, pos, 1);
                const PairLetter& l = positive_at(w, pos);
                Elem x = param_elem(G, params, 0);
                Elem y = G.mul(G.inv(x), l.x);
                Elem z = l.y;
                detail::splice(out, pos, 1, {{G.conj(x, y), G.conj(x, z), 1}, {x, z, 1}});
            } else {
                need_span(w, pos, 2);
                const PairLetter& a = positive_at(w, pos);
                const PairLetter& b = positive_at(w, pos + 1);
                Elem x = b.x, z = b.y;
                if (a.y != G.conj(x, z)) throw precondition_error("R3 backward: second slots differ");
                Elem y = G.conj(G.inv(x), a.x);
                detail::splice(out, pos, 2, {{G.mul(x, y), z, 1}});
            }
            break;
        }
        case Rule::R4: {
            // <y,z>^x <-> <x,[y,z]> <y,z>
            if (fwd) {
                need_span(w, pos, 1);
                const PairLetter& l = positive_at(w, pos);
                Elem x = param_elem(G, params, 0);
                Elem y = G.conj(G.inv(x), l.x);
                Elem z = G.conj(G.inv(x), l.y);
                detail::splice(out, pos, 1, {{x, commutator(G, y, z), 1}, {y, z, 1}});
            } else {
                need_span(w, pos, 2);
                const PairLetter& a = positive_at(w, pos);
                const PairLetter& b = positive_at(w, pos + 1);
                Elem x = a.x, y = b.x, z = b.y;
                if (a.y != commutator(G, y, z))
                    throw precondition_error("R4 backward: first letter is not <x,[y,z]>");
                detail::splice(out, pos, 2, {{G.conj(x, y), G.conj(x, z), 1}});
            }
            break;
        }
        case Rule::R5: {
            // <x, y*z> <-> <x,y> <x,z>^y
            if (fwd) {
                need_span(w, pos, 1);
                const PairLetter& l = positive_at(w, pos);
                Elem x = l.x;
                Elem y = param_elem(G, params, 0);
                Elem z = G.mul(G.inv(y), l.y);
                detail::splice(out, pos, 1, {{x, y, 1}, {G.conj(y, x), G.conj(y, z), 1}});
            } else {
                need_span(w, pos, 2);
                const PairLetter& a = positive_at(w, pos);
                const PairLetter& b = positive_at(w, pos + 1);
                Elem x = a.x, y = a.y;
                if (b.x != G.conj(y, x)) throw precondition_error("R5 backward: conjugated slot differs");
                Elem z = G.conj(G.inv(y), b.y);
                detail::splice(out, pos, 2, {{x, G.mul(y, z), 1}});
            }
            break;
        }
        case Rule::R6: {
            // <a,b> <x,y> <a,b>^-1 <-> <x,y>^[a,b]
            if (fwd) {
                need_span(w, pos, 3);
                const PairLetter& c0 = positive_at(w, pos);
                const PairLetter& mid = positive_at(w, pos + 1);
                const PairLetter& c1 = w[static_cast<size_t>(pos) + 2];
                if (c1.e != -1 || c1.x != c0.x || c1.y != c0.y)
                    throw precondition_error("R6 forward: outer letters are not a conjugating pair");
                Elem d = commutator(G, c0.x, c0.y);
                detail::splice(out, pos, 3, {conj_letter(d, mid)});
            } else {
                need_span(w, pos, 1);
                const PairLetter& l = positive_at(w, pos);
                Elem a = param_elem(G, params, 0);
                Elem b = param_elem(G, params, 1);
                Elem d = commutator(G, a, b);
                detail::splice(out, pos, 1,
                               {{a, b, 1}, conj_letter(G.inv(d), l), {a, b, -1}});
            }
            break;
        }
        case Rule::R7: {
            // <x,y> <a,b> <x,y>^-1 <a,b>^-1 <-> <[x,y],[a,b]>
            if (fwd) {
                need_span(w, pos, 4);
                const PairLetter& l0 = positive_at(w, pos);
                const PairLetter& l1 = positive_at(w, pos + 1);
                const PairLetter& l2 = w[static_cast<size_t>(pos) + 2];
                const PairLetter& l3 = w[static_cast<size_t>(pos) + 3];
                if (l2.e != -1 || l2.x != l0.x || l2.y != l0.y || l3.e != -1 || l3.x != l1.x ||
                    l3.y != l1.y)
                    throw precondition_error("R7 forward: letters are not a commutator of pairs");
                detail::splice(out, pos, 4,
                               {{commutator(G, l0.x, l0.y), commutator(G, l1.x, l1.y), 1}});
            } else {
                need_span(w, pos, 1);
                const PairLetter& l = positive_at(w, pos);
                Elem x = param_elem(G, params, 0);
                Elem y = param_elem(G, params, 1);
                Elem a = param_elem(G, params, 2);
                Elem b = param_elem(G, params, 3);
                if (commutator(G, x, y) != l.x || commutator(G, a, b) != l.y)
                    throw precondition_error("R7 backward: parameters do not produce the letter");
                detail::splice(out, pos, 1, {{x, y, 1}, {a, b, 1}, {x, y, -1}, {a, b, -1}});
            }
            break;
        }
        case Rule::R8: {
            // <b,b'> <a0,b0> <-> <[b,b'],a0> <a0,[b,b']b0> <b,b'>
            if (fwd) {
                need_span(w, pos, 2);
                const PairLetter& l0 = positive_at(w, pos);
                const PairLetter& l1 = positive_at(w, pos + 1);
                Elem d = commutator(G, l0.x, l0.y);
                detail::splice(out, pos, 2,
                               {{d, l1.x, 1}, {l1.x, G.mul(d, l1.y), 1}, {l0.x, l0.y, 1}});
            } else {
                need_span(w, pos, 3);
                const PairLetter& l0 = positive_at(w, pos);
                const PairLetter& l1 = positive_at(w, pos + 1);
                const PairLetter& l2 = positive_at(w, pos + 2);
                Elem d = commutator(G, l2.x, l2.y);
                if (l0.x != d || l1.x != l0.y)
                    throw precondition_error("R8 backward: letters do not match the expansion");
                detail::splice(out, pos, 3, {{l2.x, l2.y, 1}, {l1.x, G.mul(G.inv(d), l1.y), 1}});
            }
            break;
        }
        case Rule::R9: {
            // <b,b'> <b0,a0> <-> <[b,b']b0,a0> <a0,[b,b']> <b,b'>
            if (fwd) {
                need_span(w, pos, 2);
                const PairLetter& l0 = positive_at(w, pos);
                const PairLetter& l1 = positive_at(w, pos + 1);
                Elem d = commutator(G, l0.x, l0.y);
                detail::splice(out, pos, 2,
                               {{G.mul(d, l1.x), l1.y, 1}, {l1.y, d, 1}, {l0.x, l0.y, 1}});
            } else {
                need_span(w, pos, 3);
                const PairLetter& l0 = positive_at(w, pos);
                const PairLetter& l1 = positive_at(w, pos + 1);
                const PairLetter& l2 = positive_at(w, pos + 2);
                Elem d = commutator(G, l2.x, l2.y);
                if (l1.y != d || l1.x != l0.y)
                    throw precondition_error("R9 backward: letters do not match the expansion");
                detail::splice(out, pos, 3, {{l2.x, l2.y, 1}, {G.mul(G.inv(d), l0.x), l0.y, 1}});
            }
            break;
        }
        case Rule::R10: {
            // <b,b'> <a,a'> <-> <[b,b'],[a,a']> <a,a'> <b,b'>
            if (fwd) {
                need_span(w, pos, 2);
                const PairLetter& l0 = positive_at(w, pos);
                const PairLetter& l1 = positive_at(w, pos + 1);
                detail::splice(out, pos, 2,
                               {{commutator(G, l0.x, l0.y), commutator(G, l1.x, l1.y), 1},
                                {l1.x, l1.y, 1},
                                {l0.x, l0.y, 1}});
            } else {
                need_span(w, pos, 3);
                const PairLetter& l0 = positive_at(w, pos);
                const PairLetter& l1 = positive_at(w, pos + 1);
                const PairLetter& l2 = positive_at(w, pos + 2);
                if (l0.x != commutator(G, l2.x, l2.y) || l0.y != commutator(G, l1.x, l1.y))
                    throw precondition_error("R10 backward: leading letter is not the commutator pair");
                detail::splice(out, pos, 3, {{l2.x, l2.y, 1}, {l1.x, l1.y, 1}});
            }
            break;
        }
        case Rule::R11: {
            // <x^n, x^s> <-> (empty)
            Elem x = param_elem(G, params, 0);
            long long n = param_int(params, 0);
            long long s = param_int(params, 1);
            Elem xn = G.power(x, n);
            Elem xs = G.power(x, s);
            if (fwd) {
                need_span(w, pos, 1);
                const PairLetter& l = positive_at(w, pos);
                if (l.x != xn || l.y != xs)
                    throw precondition_error("R11: letter entries are not the stated powers");
                detail::splice(out, pos, 1, {});
            } else {
                need_insert_pos(w, pos);
                detail::splice(out, pos, 0, {{xn, xs, 1}});
            }
            break;
        }
        case Rule::Swap: {
            // <x,y> <a,b> <-> <a,b> <x,y>^[b,a]
            need_span(w, pos, 2);
            const PairLetter& l0 = positive_at(w, pos);
            const PairLetter& l1 = positive_at(w, pos + 1);
            if (fwd) {
                Elem d = commutator(G, l1.y, l1.x);
                detail::splice(out, pos, 2, {{l1.x, l1.y, 1}, conj_letter(d, l0)});
            } else {
                Elem d = commutator(G, l0.y, l0.x);
                detail::splice(out, pos, 2, {conj_letter(G.inv(d), l1), {l0.x, l0.y, 1}});
            }
            break;
        }
        case Rule::Cancel: {
            if (fwd) {
                need_span(w, pos, 2);
                const PairLetter& l0 = w[static_cast<size_t>(pos)];
                const PairLetter& l1 = w[static_cast<size_t>(pos) + 1];
                if (l0.x != l1.x || l0.y != l1.y || l0.e != -l1.e)
                    throw precondition_error("cancel needs a letter next to its inverse");
                detail::splice(out, pos, 2, {});
            } else {
                need_insert_pos(w, pos);
                Elem x = param_elem(G, params, 0);
                Elem y = param_elem(G, params, 1);
                long long e = param_int(params, 0);
                if (e != 1 && e != -1) throw precondition_error("cancel exponent must be +1 or -1");
                int ei = static_cast<int>(e);
                detail::splice(out, pos, 0, {{x, y, ei}, {x, y, -ei}});
            }
            break;
        }
    }

    RewriteStep step;
    step.rule = rule;
    step.pos = pos;
    step.dir = dir;
    step.params = params;
    step.before = word_digest(w);
    step.after = word_digest(out);
    return {std::move(out), step};
}

inline std::pair<PairWord, RewriteStep> commuting_shift(const GroupTable& G, const PairWord& w,
                                                        int pos) {
    return apply_relation(G, w, Rule::Swap, pos, {}, Dir::Forward);
}

// Replays a trace from `start`, checking every digest along the way.
inline PairWord replay_trace(const GroupTable& G, const PairWord& start, const RewriteTrace& trace) {
    PairWord w = start;
    for (size_t i = 0; i < trace.size(); ++i) {
        const RewriteStep& s = trace[i];
        if (word_digest(w) != s.before)
            throw property_error("trace step " + std::to_string(i) + " does not match the word");
        auto [next, step] = apply_relation(G, w, s.rule, s.pos, s.params, s.dir);
        if (step.after != s.after)
            throw property_error("trace step " + std::to_string(i) + " produced a different word");
        w = std::move(next);
    }
    return w;
}

// ---------------------------------------------------------------------------
// Surface correspondence
// ---------------------------------------------------------------------------

inline SurfaceWord to_surface(const GroupTable& G, const PairWord& w) {
    for (const auto& l : w) {
        check_letter(G, l);
        if (l.e != 1) throw precondition_error("surface data needs all exponents +1");
    }
    if (!in_z(G, w)) throw precondition_error("word is not in the kernel");
    SurfaceWord s;
    for (auto it = w.rbegin(); it != w.rend(); ++it) s.handles.push_back({it->y, it->x});
    return s;
}

inline PairWord from_surface(const GroupTable& G, const SurfaceWord& s) {
    PairWord w;
    for (auto it = s.handles.rbegin(); it != s.handles.rend(); ++it) {
        PairLetter l{it->x, it->y, 1};
        check_letter(G, l);
        w.push_back(l);
    }
    if (!in_z(G, w)) throw precondition_error("handles do not close up");
    return w;
}

// Monodromy of the standard separating curve after the first i handles,
// together with its membership in the commutator subgroup. The membership
// always holds; callers assert it as a sanity check.
inline std::pair<Elem, bool> separating_monodromy(const GroupTable& G, const SurfaceWord& s, int i) {
    if (i < 0 || i > s.genus()) throw precondition_error("handle index out of range");
    Elem p = G.identity();
    for (int j = 0; j < i; ++j) {
        const SurfaceHandle& h = s.handles[static_cast<size_t>(j)];
        p = G.mul(p, commutator(G, h.x, h.y));
    }
    SubgroupEmbedding der = commutator_subgroup(G);
    bool member = false;
    for (Elem g : der.embed)
        if (g == p) {
            member = true;
            break;
        }
    return {p, member};
}

// Entry-wise conjugation by a fixed group element. Preserves kernel
// membership and the class of the word.
inline PairWord conjugate_word(const GroupTable& G, const PairWord& w, Elem g) {
    PairWord out;
    out.reserve(w.size());
    for (const auto& l : w) {
        check_letter(G, l);
        out.push_back({G.conj(g, l.x), G.conj(g, l.y), l.e});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Seeded sampling of kernel words
// ---------------------------------------------------------------------------

// Draws words in the kernel: k random positive letters followed by a short
// completion whose commutator product cancels the residue. The completion
// pairs come from a breadth-first search over right multiplication by
// commutator values, so any residue in the derived subgroup is reachable.
class ZWordSampler {
  public:
    explicit ZWordSampler(const GroupTable& G) : G_(&G) {
        int n = G.order();
        std::vector<std::pair<Elem, Elem>> gens;
        std::vector<char> seen_val(static_cast<size_t>(n), 0);
        for (Elem x = 0; x < n; ++x)
            for (Elem y = 0; y < n; ++y) {
                Elem c = commutator(G, x, y);
                if (c != G.identity() && !seen_val[static_cast<size_t>(c)]) {
                    seen_val[static_cast<size_t>(c)] = 1;
                    gens.push_back({x, y});
                }
            }
        prev_.assign(static_cast<size_t>(n), -1);
        via_.assign(static_cast<size_t>(n), {0, 0});
        std::vector<Elem> queue{G.identity()};
        prev_[static_cast<size_t>(G.identity())] = G.identity();
        for (size_t head = 0; head < queue.size(); ++head) {
            Elem g = queue[head];
            for (const auto& [x, y] : gens) {
                Elem h = G.mul(g, commutator(G, x, y));
                if (prev_[static_cast<size_t>(h)] < 0) {
                    prev_[static_cast<size_t>(h)] = g;
                    via_[static_cast<size_t>(h)] = {x, y};
                    queue.push_back(h);
                }
            }
        }
    }

    PairWord sample(Rng& rng, int k) const {
        const GroupTable& G = *G_;
        PairWord w;
        Elem residue = G.identity();
        for (int i = 0; i < k; ++i) {
            Elem x = static_cast<Elem>(rng.below(static_cast<std::uint64_t>(G.order())));
            Elem y = static_cast<Elem>(rng.below(static_cast<std::uint64_t>(G.order())));
            w.push_back({x, y, 1});
            residue = G.mul(residue, commutator(G, x, y));
        }
        // Walk the search tree from the inverse residue back to the identity;
        // the edge labels, appended in path order, cancel the residue.
        Elem target = G.inv(residue);
        if (prev_[static_cast<size_t>(target)] < 0)
            throw property_error("residue escaped the derived subgroup");
        std::vector<std::pair<Elem, Elem>> path;
        for (Elem g = target; g != G.identity(); g = prev_[static_cast<size_t>(g)])
            path.push_back(via_[static_cast<size_t>(g)]);
        for (auto it = path.rbegin(); it != path.rend(); ++it) w.push_back({it->first, it->second, 1});
        return w;
    }

  private:
    const GroupTable* G_;
    std::vector<Elem> prev_;
    std::vector<std::pair<Elem, Elem>> via_;
};

}  // namespace schur
