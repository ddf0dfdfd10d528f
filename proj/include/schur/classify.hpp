#pragma once

// Constructive classification of kernel pair words in the multiplier.
//
// Four reduction strategies, each cross-checkable against the bar
// resolution oracle:
//   abelian    bilinear pairing on the exterior square of the factor list
//   dihedral   rewrite to the normal form <c^k,a>^m with a full trace
//   symmetric  expand to transposition pairs, reduce to powers of
//              u = <(1,2),(3,4)>, recurse on a fixed point for n = 7
//   sylow      transfer the surface cycle to every Sylow subgroup and
//              classify there; the joint restriction map is injective
//
// A dispatcher picks the most specific strategy and, in test mode, runs
// all applicable ones and insists they agree.

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "schur/group.hpp"
#include "schur/homology.hpp"
#include "schur/pairword.hpp"
#include "schur/util.hpp"

namespace schur {

enum class Method : std::uint8_t { Oracle, Abelian, Dihedral, Symmetric, Sylow };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::Oracle: return "oracle";
        case Method::Abelian: return "abelian";
        case Method::Dihedral: return "dihedral";
        case Method::Symmetric: return "symmetric";
        case Method::Sylow: return "sylow";
    }
    return "?";
}

struct SylowComponent {
    long long prime = 0;
    std::string subgroup_spec;
    MultiplierClass component;  // class of the transferred cycle in M(Syl_p)
};

struct ClassificationResult {
    MultiplierClass klass;
    Method method = Method::Oracle;
    // True when klass is written in the coordinates of oracle_structure(G)
    // (or in the unique Z/2 coordinate for dihedral and symmetric groups).
    // False when only another basis is available: exterior coordinates for
    // large abelian groups, or no ambient coordinates at all when a Sylow
    // classification could not be pulled back.
    bool reference_basis = true;
    RewriteTrace trace;
    std::vector<SylowComponent> sylow_components;
    std::string notes;
};

namespace detail {

inline void log_step(const GroupTable& G, PairWord& w, RewriteTrace& tr, Rule r, int pos,
                     const RuleParams& p, Dir d) {
    auto [next, step] = apply_relation(G, w, r, pos, p, d);
    w = std::move(next);
    tr.push_back(std::move(step));
}

inline std::vector<long long> prime_divisors(int n) {
    std::vector<long long> ps;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= static_cast<int>(p);
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Abelian groups: exterior square pairing
// ---------------------------------------------------------------------------

inline ClassificationResult classify_abelian(const GroupTable& G, const PairWord& w,
                                             int oracle_bound = kDefaultOracleBound) {
    if (G.codec != Codec::Abelian) throw precondition_error("classify_abelian needs an abelian group");
    for (const auto& l : w) check_letter(G, l);

    ExteriorSquare E = exterior_square(G);
    size_t k = G.factors.size();
    std::vector<long long> ext(E.summands.size(), 0);
    for (const auto& l : w) {
        std::vector<int> xr = G.abelian_decode(l.x), yr = G.abelian_decode(l.y);
        for (size_t s = 0; s < E.summands.size(); ++s) {
            const auto& sm = E.summands[s];
            long long coef = static_cast<long long>(xr[static_cast<size_t>(sm.i)]) * yr[static_cast<size_t>(sm.j)] -
                             static_cast<long long>(xr[static_cast<size_t>(sm.j)]) * yr[static_cast<size_t>(sm.i)];
            ext[s] = mod_floor(ext[s] + l.e * coef, sm.modulus);
        }
    }

    ClassificationResult R;
    R.method = Method::Abelian;
    R.notes = "exterior coordinates:";
    for (size_t s = 0; s < ext.size(); ++s)
        R.notes += " (" + std::to_string(E.summands[s].i) + "," + std::to_string(E.summands[s].j) +
                   ")=" + std::to_string(ext[s]);

    if (G.order() <= oracle_bound) {
        // Express the answer in the oracle basis through the classes of the
        // basis pair words; the pairing is additive, so this is exact.
        const MultiplierStructure& M = oracle_structure(G, oracle_bound);
        MultiplierClass acc{std::vector<long long>(M.invariant_factors.size(), 0), M.invariant_factors};
        auto unit = [&](int i) {
            std::vector<int> r(k, 0);
            r[static_cast<size_t>(i)] = 1;
            return G.abelian_encode(r);
        };
        for (size_t s = 0; s < ext.size(); ++s) {
            if (ext[s] == 0) continue;
            MultiplierClass basis = class_of(G, {{unit(E.summands[s].i), unit(E.summands[s].j), 1}});
            acc = class_add(acc, class_scale(basis, ext[s]));
        }
        R.klass = std::move(acc);
        R.reference_basis = true;
    } else {
        R.klass = MultiplierClass{std::move(ext), E.moduli()};
        R.reference_basis = false;
        R.notes += "; group exceeds the oracle bound, coordinates stay in the exterior basis";
    }
    return R;
}

// ---------------------------------------------------------------------------
// Dihedral groups: normal form <c^k,a> with a replayable trace
// ---------------------------------------------------------------------------

namespace detail {

struct DihedralCtx {
    const GroupTable* G;
    int n;
    Elem c, a;

    Elem rot(long long j) const { return G->power(c, j); }
    Elem refl(long long j) const { return G->mul(a, rot(j)); }
    static bool is_refl(const GroupTable& G, Elem e) { return e >= static_cast<Elem>(G.rot_n); }
    static long long rot_exp(const GroupTable& G, Elem e) { return e % G.rot_n; }
};

// Removes a letter whose entries are both rotations.
inline void dihedral_kill_rotations(const DihedralCtx& D, PairWord& v, RewriteTrace& tr, int pos) {
    const PairLetter& l = v[static_cast<size_t>(pos)];
    log_step(*D.G, v, tr, Rule::R11, pos,
             {{D.c}, {DihedralCtx::rot_exp(*D.G, l.x), DihedralCtx::rot_exp(*D.G, l.y)}}, Dir::Forward);
}

}  // namespace detail

inline ClassificationResult classify_dihedral(const GroupTable& G, const PairWord& w) {
    if (G.codec != Codec::Dihedral) throw precondition_error("classify_dihedral needs a dihedral group");
    if (!in_z(G, w)) throw precondition_error("word is not in the kernel");

    const int n = G.rot_n;
    detail::DihedralCtx D{&G, n, n >= 2 ? static_cast<Elem>(1) : G.identity(), static_cast<Elem>(n)};

    // Arithmetic shortcut: sum the <c,a> exponent of every letter.
    long long m = 0;
    for (const auto& l : w) {
        bool rx = detail::DihedralCtx::is_refl(G, l.x), ry = detail::DihedralCtx::is_refl(G, l.y);
        long long jx = detail::DihedralCtx::rot_exp(G, l.x), jy = detail::DihedralCtx::rot_exp(G, l.y);
        long long c = 0;
        if (!rx && ry) c = jx;
        else if (rx && !ry) c = -jy;
        else if (rx && ry) c = jy - jx;
        m += l.e * c;
    }

    PairWord v = w;
    RewriteTrace tr;

    // Flip negative letters to positive ones.
    for (int pos = 0; pos < static_cast<int>(v.size()); ++pos)
        if (v[static_cast<size_t>(pos)].e == -1) detail::log_step(G, v, tr, Rule::R2, pos, {}, Dir::Backward);

    // Reduce every letter to copies of <c,a>.
    int pos = 0;
    while (pos < static_cast<int>(v.size())) {
        PairLetter l = v[static_cast<size_t>(pos)];
        bool rx = detail::DihedralCtx::is_refl(G, l.x), ry = detail::DihedralCtx::is_refl(G, l.y);
        long long jx = detail::DihedralCtx::rot_exp(G, l.x), jy = detail::DihedralCtx::rot_exp(G, l.y);
        if (!rx && !ry) {
            detail::dihedral_kill_rotations(D, v, tr, pos);
        } else if (!rx && ry) {
            // <c^i, a c^j>: peel i copies of <c, a c^*>, then clean each up.
            int i = static_cast<int>(jx);
            for (int t = 0; t < i; ++t) detail::log_step(G, v, tr, Rule::R3, pos, {{D.c}, {}}, Dir::Forward);
            detail::log_step(G, v, tr, Rule::R11, pos, {{v[static_cast<size_t>(pos)].y}, {0, 1}}, Dir::Forward);
            for (int t = 0; t < i; ++t) {
                if (v[static_cast<size_t>(pos) + static_cast<size_t>(t)].y != D.a) {
                    detail::log_step(G, v, tr, Rule::R5, pos + t, {{D.a}, {}}, Dir::Forward);
                    detail::dihedral_kill_rotations(D, v, tr, pos + t + 1);
                }
            }
            pos += i;
        } else if (rx && !ry) {
            if (jy == 0) {
                detail::log_step(G, v, tr, Rule::R11, pos, {{l.x}, {1, 0}}, Dir::Forward);
            } else {
                // Split off the reflection pair; both outputs are reflection
                // pairs and fall through to the next branch.
                detail::log_step(G, v, tr, Rule::R5, pos, {{D.refl(n - jy)}, {}}, Dir::Forward);
            }
        } else {
            if (l.x == l.y) {
                detail::log_step(G, v, tr, Rule::R1, pos, {}, Dir::Forward);
            } else {
                detail::log_step(G, v, tr, Rule::R3, pos, {{l.y}, {}}, Dir::Forward);
                detail::log_step(G, v, tr, Rule::R1, pos + 1, {}, Dir::Forward);
            }
        }
    }

    for (const auto& l : v)
        if (l.x != D.c || l.y != D.a || l.e != 1)
            throw property_error("dihedral reduction left a letter outside the generator run");
    long long M = static_cast<long long>(v.size());

    // Merge the run into a single <c^M, a c^{2(M-1)}> letter.
    for (long long t = 1; t < M; ++t) {
        long long s2 = mod_floor(2 * t, n);
        if (s2 != 0) {
            detail::log_step(G, v, tr, Rule::R11, 2, {{D.c}, {-1, -s2}}, Dir::Backward);
            detail::log_step(G, v, tr, Rule::R5, 1, {}, Dir::Backward);
        }
        detail::log_step(G, v, tr, Rule::R3, 0, {}, Dir::Backward);
    }

    // Land on the normal form: empty word or exactly <c^k, a>.
    if (!v.empty()) {
        if (v[0].x == G.identity()) {
            detail::log_step(G, v, tr, Rule::R11, 0, {{v[0].y}, {0, 1}}, Dir::Forward);
        } else {
            if (n % 2 != 0 || v[0].x != D.rot(n / 2))
                throw property_error("dihedral reduction missed the normal form");
            if (v[0].y != D.a) {
                detail::log_step(G, v, tr, Rule::R5, 0, {{D.a}, {}}, Dir::Forward);
                detail::dihedral_kill_rotations(D, v, tr, 1);
            }
        }
    }

    int cls_trace = v.empty() ? 0 : 1;
    int cls_arith;
    if (n % 2 != 0) {
        if (mod_floor(m, n) != 0) throw property_error("kernel word with nonzero exponent sum in odd dihedral");
        cls_arith = 0;
    } else {
        int k = n / 2;
        if (mod_floor(m, k) != 0) throw property_error("kernel word with exponent sum off the half-turn lattice");
        cls_arith = static_cast<int>(mod_floor(mod_floor(m, n) / k, 2));
    }
    if (cls_trace != cls_arith) throw property_error("dihedral trace and exponent arithmetic disagree");
    if (replay_trace(G, w, tr) != v) throw property_error("dihedral trace does not replay");

    ClassificationResult R;
    R.method = Method::Dihedral;
    R.trace = std::move(tr);
    if (n % 2 == 0)
        R.klass = MultiplierClass{{cls_arith}, {2}};
    else
        R.klass = MultiplierClass{{}, {}};
    R.notes = "exponent sum " + std::to_string(m) + ", normal form " +
              (v.empty() ? std::string("empty") : render_word(G, v));
    return R;
}

// ---------------------------------------------------------------------------
// Symmetric groups
// ---------------------------------------------------------------------------

namespace detail {

struct PermIndex {
    const GroupTable* G;
    std::unordered_map<std::uint32_t, Elem> idx;

    explicit PermIndex(const GroupTable& g) : G(&g) {
        idx.reserve(static_cast<size_t>(g.order()) * 2);
        for (Elem e = 0; e < g.order(); ++e) idx.emplace(perm_pack(g.perms[static_cast<size_t>(e)], g.points), e);
    }
    Elem from_perm(const Perm& p) const {
        auto it = idx.find(perm_pack(p, G->points));
        if (it == idx.end()) throw property_error("permutation missing from the group table");
        return it->second;
    }
    Elem transposition(int p, int q) const {
        Perm t = perm_identity(G->points);
        t[static_cast<size_t>(p)] = static_cast<std::uint8_t>(q);
        t[static_cast<size_t>(q)] = static_cast<std::uint8_t>(p);
        return from_perm(t);
    }
};

inline int perm_moved_count(const GroupTable& G, Elem e) {
    int c = 0;
    for (int i = 0; i < G.points; ++i)
        if (G.perms[static_cast<size_t>(e)][static_cast<size_t>(i)] != i) ++c;
    return c;
}

inline bool perm_fixes(const GroupTable& G, Elem e, int p0) {
    return G.perms[static_cast<size_t>(e)][static_cast<size_t>(p0)] == p0;
}

// Writes e as a product of transpositions under the table's multiplication.
inline std::vector<Elem> transposition_factors(const GroupTable& G, const PermIndex& ix, Elem e) {
    std::vector<Elem> fs;
    Elem cur = e;
    while (cur != G.identity()) {
        int p = 0;
        while (perm_fixes(G, cur, p)) ++p;
        Elem t = ix.transposition(p, G.perms[static_cast<size_t>(cur)][static_cast<size_t>(p)]);
        Elem next = G.mul(t, cur);
        if (perm_moved_count(G, next) >= perm_moved_count(G, cur))
            throw property_error("transposition peeling made no progress");
        fs.push_back(t);
        cur = next;
    }
    Elem acc = G.identity();
    for (Elem f : fs) acc = G.mul(acc, f);
    if (acc != e) throw property_error("transposition factorization does not multiply back");
    return fs;
}

}  // namespace detail

// Moves every pair fixing the given 1-based point to the front using
// commuting shifts. The prefix length equals the number of such pairs.
struct FixedPointSplit {
    PairWord word;
    int split = 0;
    RewriteTrace trace;
};

inline FixedPointSplit sort_by_fixed_point(const GroupTable& G, const PairWord& w, int point) {
    if (G.codec != Codec::Permutation) throw precondition_error("sorting needs a permutation group");
    if (point < 1 || point > G.points) throw precondition_error("fixed point out of range");
    int p0 = point - 1;
    for (const auto& l : w) {
        check_letter(G, l);
        if (l.e != 1) throw precondition_error("sorting needs positive exponents");
    }
    auto fixes_both = [&](const PairLetter& l) {
        return detail::perm_fixes(G, l.x, p0) && detail::perm_fixes(G, l.y, p0);
    };
    int expected = 0;
    for (const auto& l : w)
        if (fixes_both(l)) ++expected;

    FixedPointSplit out;
    out.word = w;
    for (int idx = 0; idx < static_cast<int>(out.word.size()); ++idx) {
        if (!fixes_both(out.word[static_cast<size_t>(idx)])) continue;
        for (int j = idx; j > out.split; --j) {
            auto [next, step] = commuting_shift(G, out.word, j - 1);
            out.word = std::move(next);
            out.trace.push_back(std::move(step));
        }
        ++out.split;
    }
    if (out.split != expected) throw property_error("fixed point sort lost a fixing pair");
    for (int i = 0; i < static_cast<int>(out.word.size()); ++i)
        if ((i < out.split) != fixes_both(out.word[static_cast<size_t>(i)]))
            throw property_error("fixed point sort left the word unsplit");
    return out;
}

// Ambient coordinates are reconstructed from Sylow components only when the
// ambient oracle is cheap; larger groups report per-prime components alone.
inline constexpr int kDefaultAmbientBound = 24;

inline ClassificationResult classify_via_sylow(const GroupTable& G, const PairWord& w,
                                               int oracle_bound = kDefaultOracleBound,
                                               int ambient_bound = kDefaultAmbientBound,
                                               int start_index = 0);

namespace detail {

// Reads the k of u^k off a Sylow classification: the 2-component carries the
// bit and every odd component must vanish.
inline int two_torsion_bit(const ClassificationResult& syl) {
    int k = 0;
    for (const auto& c : syl.sylow_components) {
        if (c.prime == 2)
            k = c.component.is_zero() ? 0 : 1;
        else if (!c.component.is_zero())
            throw property_error("odd torsion component in a class that must be 2-torsion");
    }
    return k;
}

}  // namespace detail

inline ClassificationResult classify_symmetric(const GroupTable& G, const PairWord& w,
                                               int oracle_bound = kDefaultOracleBound) {
    if (G.codec != Codec::Permutation || G.alternating)
        throw precondition_error("classify_symmetric needs a symmetric group");
    if (!in_z(G, w)) throw precondition_error("word is not in the kernel");

    const int n = G.points;
    detail::PermIndex ix(G);
    PairWord v = w;
    RewriteTrace tr;
    std::string notes;

    // Positive exponents throughout.
    for (int pos = 0; pos < static_cast<int>(v.size()); ++pos)
        if (v[static_cast<size_t>(pos)].e == -1) detail::log_step(G, v, tr, Rule::R2, pos, {}, Dir::Backward);

    // Expand both entries of every letter into transpositions.
    int pos = 0;
    while (pos < static_cast<int>(v.size())) {
        PairLetter l = v[static_cast<size_t>(pos)];
        if (l.x == l.y) {
            detail::log_step(G, v, tr, Rule::R1, pos, {}, Dir::Forward);
            continue;
        }
        if (l.x == G.identity()) {
            detail::log_step(G, v, tr, Rule::R11, pos, {{l.y}, {0, 1}}, Dir::Forward);
            continue;
        }
        if (l.y == G.identity()) {
            detail::log_step(G, v, tr, Rule::R11, pos, {{l.x}, {1, 0}}, Dir::Forward);
            continue;
        }
        if (detail::perm_moved_count(G, l.x) > 2) {
            std::vector<Elem> fs = detail::transposition_factors(G, ix, l.x);
            detail::log_step(G, v, tr, Rule::R3, pos, {{fs[0]}, {}}, Dir::Forward);
            continue;
        }
        if (detail::perm_moved_count(G, l.y) > 2) {
            std::vector<Elem> fs = detail::transposition_factors(G, ix, l.y);
            detail::log_step(G, v, tr, Rule::R5, pos, {{fs[0]}, {}}, Dir::Forward);
            continue;
        }
        ++pos;
    }

    // Turn disjoint transposition pairs into u by an R4 conjugation whose
    // inserted commutator letter is trivial.
    Elem u1 = -1, u2 = -1;
    if (n >= 4) {
        u1 = G.parse("(1,2)");
        u2 = G.parse("(3,4)");
    }
    pos = 0;
    while (pos < static_cast<int>(v.size())) {
        PairLetter l = v[static_cast<size_t>(pos)];
        std::vector<int> mx, my;
        for (int i = 0; i < n; ++i) {
            if (!detail::perm_fixes(G, l.x, i)) mx.push_back(i);
            if (!detail::perm_fixes(G, l.y, i)) my.push_back(i);
        }
        bool disjoint = true;
        for (int i : mx)
            for (int j : my)
                if (i == j) disjoint = false;
        if (!disjoint || (l.x == u1 && l.y == u2)) {
            ++pos;
            continue;
        }
        detail::Perm xp = detail::perm_identity(n);
        std::vector<char> used(static_cast<size_t>(n), 0);
        int slots[4] = {mx[0], mx[1], my[0], my[1]};
        for (int s = 0; s < 4; ++s) {
            xp[static_cast<size_t>(s)] = static_cast<std::uint8_t>(slots[s]);
            used[static_cast<size_t>(slots[s])] = 1;
        }
        int next_pt = 0;
        for (int s = 4; s < n; ++s) {
            while (used[static_cast<size_t>(next_pt)]) ++next_pt;
            xp[static_cast<size_t>(s)] = static_cast<std::uint8_t>(next_pt);
            used[static_cast<size_t>(next_pt)] = 1;
        }
        Elem g = ix.from_perm(xp);
        if (G.conj(g, u1) != l.x || G.conj(g, u2) != l.y) g = G.inv(g);
        if (G.conj(g, u1) != l.x || G.conj(g, u2) != l.y)
            throw property_error("conjugator construction failed for a disjoint pair");
        detail::log_step(G, v, tr, Rule::R4, pos, {{g}, {}}, Dir::Forward);
        detail::log_step(G, v, tr, Rule::R11, pos, {{g}, {1, 0}}, Dir::Forward);
        ++pos;
    }

    ClassificationResult R;
    R.method = Method::Symmetric;
    if (n <= 3) {
        R.klass = MultiplierClass{{}, {}};
        R.trace = std::move(tr);
        R.notes = "trivial multiplier for n <= 3";
        return R;
    }

    int k;
    if (n <= 4) {
        MultiplierClass cl = class_of(G, v, oracle_bound);
        k = cl.is_zero() ? 0 : 1;
        notes = "base case by oracle";
    } else if (n <= 6) {
        ClassificationResult syl = classify_via_sylow(G, v, oracle_bound, /*ambient_bound=*/0);
        k = detail::two_torsion_bit(syl);
        notes = "base case by Sylow transfer";
    } else {
        // n = 7: peel off the pairs fixing the best point, close both halves
        // with a mutually inverse pair, recurse on the fixing half inside S6
        // and on the remainder (Sylow transfer once the length stalls).
        if (v.empty()) {
            k = 0;
            notes = "empty after normalization";
        } else {
            int best = 0, best_cnt = -1;
            for (int x0 = 0; x0 < n; ++x0) {
                int cnt = 0;
                for (const auto& l : v)
                    if (detail::perm_fixes(G, l.x, x0) && detail::perm_fixes(G, l.y, x0)) ++cnt;
                if (cnt > best_cnt) {
                    best_cnt = cnt;
                    best = x0;
                }
            }
            FixedPointSplit sp = sort_by_fixed_point(G, v, best + 1);
            v = sp.word;
            for (auto& st : sp.trace) tr.push_back(std::move(st));

            PairWord prefix(v.begin(), v.begin() + sp.split);
            Elem P = commutator_product(G, prefix);
            if (P != G.identity()) {
                std::vector<Elem> fixers;
                for (Elem e = 0; e < G.order(); ++e)
                    if (detail::perm_fixes(G, e, best)) fixers.push_back(e);
                Elem al = -1, be = -1, target = G.inv(P);
                for (Elem x : fixers) {
                    for (Elem y : fixers)
                        if (commutator(G, x, y) == target) {
                            al = x;
                            be = y;
                            break;
                        }
                    if (al >= 0) break;
                }
                if (al < 0) throw property_error("no closing commutator pair fixes the chosen point");
                detail::log_step(G, v, tr, Rule::Cancel, sp.split, {{al, be}, {1}}, Dir::Backward);
                detail::log_step(G, v, tr, Rule::R2, sp.split + 1, {}, Dir::Backward);
                prefix.push_back({al, be, 1});
            }
            PairWord rest(v.begin() + sp.split + (P != G.identity() ? 1 : 0), v.end());

            // Relabel the fixing half into S6 by conjugating the chosen point
            // to the last position; conjugation does not move the class.
            static const GroupTable S6 = build_group("S6");
            Elem gamma = best == n - 1 ? G.identity() : ix.transposition(best, n - 1);
            PairWord pre7 = conjugate_word(G, prefix, gamma);
            detail::PermIndex ix6(S6);
            PairWord pre6;
            for (const auto& l : pre7) {
                detail::Perm px{}, py{};
                for (int i = 0; i < 6; ++i) {
                    px[static_cast<size_t>(i)] = G.perms[static_cast<size_t>(l.x)][static_cast<size_t>(i)];
                    py[static_cast<size_t>(i)] = G.perms[static_cast<size_t>(l.y)][static_cast<size_t>(i)];
                }
                pre6.push_back({ix6.from_perm(px), ix6.from_perm(py), 1});
            }
            int k1 = 0;
            {
                ClassificationResult sub = classify_symmetric(S6, pre6, oracle_bound);
                k1 = sub.klass.is_zero() ? 0 : 1;
            }
            int k2 = 0;
            if (!rest.empty()) {
                if (rest.size() < w.size()) {
                    ClassificationResult sub = classify_symmetric(G, rest, oracle_bound);
                    k2 = sub.klass.is_zero() ? 0 : 1;
                    notes = "recursed on point " + std::to_string(best + 1);
                } else {
                    ClassificationResult sub = classify_via_sylow(G, rest, oracle_bound, /*ambient_bound=*/0);
                    k2 = detail::two_torsion_bit(sub);
                    notes = "recursion stalled, remainder by Sylow transfer";
                }
            }
            k = (k1 + k2) % 2;
            if (notes.empty()) notes = "recursed on point " + std::to_string(best + 1);
        }
    }

    R.klass = MultiplierClass{{k}, {2}};
    R.trace = std::move(tr);
    R.notes = notes;
    return R;
}

// ---------------------------------------------------------------------------
// Sylow transfer
// ---------------------------------------------------------------------------

inline ClassificationResult classify_via_sylow(const GroupTable& G, const PairWord& w, int oracle_bound,
                                               int ambient_bound, int start_index) {
    if (!in_z(G, w)) throw precondition_error("word is not in the kernel");
    BarChain2 z = surface_cycle(G, w);

    ClassificationResult R;
    R.method = Method::Sylow;
    std::vector<SubgroupEmbedding> embs;
    for (long long p : detail::prime_divisors(G.order())) {
        SubgroupEmbedding emb = sylow_subgroup(G, static_cast<int>(p), start_index);
        if (emb.sub.order() > oracle_bound)
            throw range_error("Sylow " + std::to_string(p) + "-subgroup of order " +
                              std::to_string(emb.sub.order()) + " exceeds the oracle bound");
        BarChain2 rz = restriction_transfer(emb, z);
        MultiplierClass comp = oracle_structure(emb.sub, oracle_bound).project(emb.sub, rz);
        R.sylow_components.push_back({p, emb.sub.spec, std::move(comp)});
        embs.push_back(std::move(emb));
    }

    if (G.order() <= ambient_bound) {
        // Pull the components back to ambient coordinates: the joint
        // restriction is injective, so exactly one combination of the
        // oracle's generators matches every component.
        const MultiplierStructure& M = oracle_structure(G, ambient_bound);
        size_t r = M.invariant_factors.size();
        std::vector<std::vector<MultiplierClass>> wres(embs.size(), std::vector<MultiplierClass>(r));
        for (size_t pi = 0; pi < embs.size(); ++pi)
            for (size_t i = 0; i < r; ++i) {
                BarChain2 t = restriction_transfer(embs[pi], M.witness_cycles[i]);
                wres[pi][i] = oracle_structure(embs[pi].sub, oracle_bound).project(embs[pi].sub, t);
            }
        std::vector<long long> cand(r, 0);
        std::vector<long long> found;
        bool more = true;
        while (more) {
            bool ok = true;
            for (size_t pi = 0; pi < embs.size() && ok; ++pi) {
                MultiplierClass acc{std::vector<long long>(R.sylow_components[pi].component.coords.size(), 0),
                                    R.sylow_components[pi].component.moduli};
                for (size_t i = 0; i < r; ++i) acc = class_add(acc, class_scale(wres[pi][i], cand[i]));
                if (!(acc == R.sylow_components[pi].component)) ok = false;
            }
            if (ok) {
                if (!found.empty()) throw property_error("joint Sylow restriction is not injective");
                found = cand;
            }
            more = false;
            for (size_t i = 0; i < r; ++i) {
                if (++cand[i] < M.invariant_factors[i]) {
                    more = true;
                    break;
                }
                cand[i] = 0;
            }
        }
        if (found.empty() && r > 0) throw property_error("no ambient class matches the Sylow components");
        R.klass = MultiplierClass{std::move(found), M.invariant_factors};
        if (r == 0) R.klass = MultiplierClass{{}, {}};
        R.reference_basis = true;
    } else {
        R.klass = MultiplierClass{{}, {}};
        R.reference_basis = false;
        R.notes = "ambient group exceeds the bound; per-prime components only";
    }
    return R;
}

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

struct ClassifyOptions {
    int oracle_bound = kDefaultOracleBound;
    int ambient_bound = kDefaultAmbientBound;
    bool test_mode = false;
    int sylow_start = 0;
};

inline bool sylow_applicable(const GroupTable& G, int bound) {
    for (long long p : detail::prime_divisors(G.order()))
        if (p_part(G.order(), static_cast<int>(p)) > bound) return false;
    return true;
}

inline ClassificationResult classify(const GroupTable& G, const PairWord& w, const ClassifyOptions& opt = {}) {
    if (!in_z(G, w)) throw precondition_error("word is not in the kernel");

    std::vector<Method> applicable;
    if (G.codec == Codec::Abelian) applicable.push_back(Method::Abelian);
    if (G.codec == Codec::Dihedral) applicable.push_back(Method::Dihedral);
    if (G.codec == Codec::Permutation && !G.alternating && G.points <= 7)
        applicable.push_back(Method::Symmetric);
    if (G.order() > 1 && sylow_applicable(G, opt.oracle_bound)) applicable.push_back(Method::Sylow);
    if (G.order() <= opt.oracle_bound) applicable.push_back(Method::Oracle);
    if (applicable.empty())
        throw range_error("no classification method applies: order " + std::to_string(G.order()) +
                          " with Sylow subgroups beyond the oracle bound");

    auto run = [&](Method m) -> ClassificationResult {
        switch (m) {
            case Method::Abelian: return classify_abelian(G, w, opt.oracle_bound);
            case Method::Dihedral: return classify_dihedral(G, w);
            case Method::Symmetric: return classify_symmetric(G, w, opt.oracle_bound);
            case Method::Sylow:
                return classify_via_sylow(G, w, opt.oracle_bound, opt.ambient_bound, opt.sylow_start);
            case Method::Oracle: {
                ClassificationResult R;
                R.method = Method::Oracle;
                R.klass = class_of(G, w, opt.oracle_bound);
                return R;
            }
        }
        throw property_error("unreachable");
    };

    ClassificationResult primary = run(applicable.front());
    if (opt.test_mode) {
        for (size_t i = 1; i < applicable.size(); ++i) {
            ClassificationResult other = run(applicable[i]);
            if (primary.reference_basis && other.reference_basis && !(primary.klass == other.klass))
                throw property_error(std::string("classifier disagreement: ") +
                                     method_name(applicable.front()) + " vs " + method_name(applicable[i]));
        }
    }
    return primary;
}

}  // namespace schur
