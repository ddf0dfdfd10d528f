#pragma once

// Extendability certificates.
//
// A kernel word whose letters all commute entrywise is a disjoint union of
// genus-one blocks, and each block <g,k> extends: rotate the disc factor by
// one |g|-th of a full turn, so the center circle is fixed with isotropy
// <g>, and take the product with the circle bundle of monodromy k. A
// certificate records the blocks, the filling recipe for each, a rewrite
// trace from the input word to the block word, and optional branched-cover
// bookkeeping checked against the Riemann-Hurwitz relation. Everything a
// certificate claims is re-checkable from the group table alone.

#include <string>
#include <utility>
#include <vector>

#include "schur/classify.hpp"
#include "schur/group.hpp"
#include "schur/homology.hpp"
#include "schur/pairword.hpp"
#include "schur/util.hpp"

namespace schur {

// One closed genus-one block: disc-rotation monodromy g, transverse
// monodromy k. Valid only when the two commute.
struct GenusOnePiece {
    Elem g = 0;
    Elem k = 0;
    bool commuting = true;

    friend bool operator==(const GenusOnePiece&, const GenusOnePiece&) = default;
};

// Filling instructions for one block. The disc factor spins by one
// rotation_order-th of a turn; g = identity degenerates to the free case
// with no fixed locus.
struct PieceRecipe {
    int rotation_order = 1;
    std::vector<Elem> isotropy;  // the cyclic subgroup <g>, sorted
    bool fixed_locus = false;    // center circle fixed iff g is not the identity
    Elem transverse = 0;         // circle-bundle monodromy, equals the block's k

    friend bool operator==(const PieceRecipe&, const PieceRecipe&) = default;
};

// Bookkeeping for a degree-N branched cover of a genus-h surface: local
// branching orders m_1..m_r and the total-space Euler characteristic.
struct BranchData {
    long long degree = 1;
    long long quotient_genus = 0;
    std::vector<long long> branch_orders;  // each at least 2 and dividing degree
    long long chi = 2;
};

struct ExtensionCertificate {
    std::string group_spec;
    std::vector<GenusOnePiece> pieces;
    std::vector<PieceRecipe> recipes;  // parallel to pieces
    RewriteTrace provenance;           // input word -> block word
    std::vector<BranchData> branch_data;
};

namespace detail {

inline GenusOnePiece make_piece(const GroupTable& G, Elem g, Elem k) {
    check_letter(G, {g, k, 1});
    return {g, k, commutator(G, g, k) == G.identity()};
}

inline PieceRecipe make_recipe(const GroupTable& G, const GenusOnePiece& p) {
    PieceRecipe r;
    r.rotation_order = G.elem_order(p.g);
    r.isotropy = closure(G, {p.g});
    r.fixed_locus = p.g != G.identity();
    r.transverse = p.k;
    return r;
}

inline PairWord pieces_word(const std::vector<GenusOnePiece>& pieces) {
    PairWord w;
    w.reserve(pieces.size());
    for (const auto& p : pieces) w.push_back({p.g, p.k, 1});
    return w;
}

}  // namespace detail

// Certificate for a single commuting pair. Throws when [g,k] != identity.
inline ExtensionCertificate genus_one_certificate(const GroupTable& G, Elem g, Elem k) {
    GenusOnePiece p = detail::make_piece(G, g, k);
    if (!p.commuting) throw precondition_error("monodromies do not commute");
    ExtensionCertificate c;
    c.group_spec = G.spec;
    c.recipes.push_back(detail::make_recipe(G, p));
    c.pieces.push_back(std::move(p));
    return c;
}

// Splits abelian surface data into one block per handle. The handles already
// are the disjoint union, so the provenance trace is empty.
inline ExtensionCertificate decompose_abelian(const GroupTable& G, const SurfaceWord& s) {
    if (!G.is_abelian()) throw precondition_error("decompose_abelian needs an abelian group");
    PairWord w = from_surface(G, s);
    ExtensionCertificate c;
    c.group_spec = G.spec;
    for (const auto& l : w) {
        GenusOnePiece p = detail::make_piece(G, l.x, l.y);
        c.recipes.push_back(detail::make_recipe(G, p));
        c.pieces.push_back(std::move(p));
    }
    return c;
}

// Reduces a dihedral kernel word to its normal form and certifies the
// residual generator, if any, as a genus-one block. The attached branch data
// describes the sphere the reduction is modeled on: the rotation poles carry
// the full cyclic stabilizer and the reflection axes give two more orbits.
inline ExtensionCertificate dihedral_reduction_certificate(const GroupTable& G, const PairWord& w) {
    ClassificationResult r = classify_dihedral(G, w);
    PairWord residual = replay_trace(G, w, r.trace);
    ExtensionCertificate c;
    c.group_spec = G.spec;
    c.provenance = std::move(r.trace);
    for (const auto& l : residual) {
        GenusOnePiece p = detail::make_piece(G, l.x, l.y);
        if (!p.commuting || l.e != 1) throw property_error("dihedral residual is not a genus-one block");
        c.recipes.push_back(detail::make_recipe(G, p));
        c.pieces.push_back(std::move(p));
    }
    if (G.rot_n >= 2) c.branch_data.push_back({2LL * G.rot_n, 0, {2, 2, G.rot_n}, 2});
    return c;
}

struct RiemannHurwitzReport {
    bool pass = false;
    long long expected_chi = 0;
    long long residual = 0;
    std::string detail;
};

// Checks chi = N(2 - 2h) - sum(N - N/m_i) in exact integers, after checking
// that every branching order is at least 2 and divides N. Violations land in
// the report, never in an exception.
inline RiemannHurwitzReport riemann_hurwitz_check(const BranchData& b) {
    RiemannHurwitzReport r;
    if (b.degree < 1) {
        r.detail = "degree must be positive";
        return r;
    }
    if (b.quotient_genus < 0) {
        r.detail = "quotient genus must be nonnegative";
        return r;
    }
    for (long long m : b.branch_orders) {
        if (m < 2) {
            r.detail = "branching order " + std::to_string(m) + " is below 2";
            return r;
        }
        if (b.degree % m != 0) {
            r.detail =
                "branching order " + std::to_string(m) + " does not divide " + std::to_string(b.degree);
            return r;
        }
    }
    long long e = b.degree * (2 - 2 * b.quotient_genus);
    for (long long m : b.branch_orders) e -= b.degree - b.degree / m;
    r.expected_chi = e;
    r.residual = b.chi - e;
    if (r.residual != 0) {
        r.detail = "characteristic should be " + std::to_string(e) + ", got " + std::to_string(b.chi);
        return r;
    }
    r.pass = true;
    r.detail = "ok";
    return r;
}

struct CertificateReport {
    bool provenance_ok = false;
    bool pieces_commute = false;
    bool recipes_ok = false;
    bool branch_ok = false;
    bool class_ok = false;
    bool pass = false;
    std::string detail;
};

// Re-derives every claim a certificate makes about the word w: the
// provenance trace must replay from w to the block word, every block must
// commute, every recipe must match its block, and any attached branch data
// must satisfy Riemann-Hurwitz. When the group fits the oracle bound the
// input and block words are also compared in the multiplier.
inline CertificateReport validate_certificate(const GroupTable& G, const ExtensionCertificate& c,
                                              const PairWord& w, int oracle_bound = kDefaultOracleBound) {
    CertificateReport rep;
    if (c.group_spec != G.spec) {
        rep.detail = "certificate was issued for " + c.group_spec + ", not " + G.spec;
        return rep;
    }
    for (const auto& p : c.pieces)
        if (p.g < 0 || p.g >= G.order() || p.k < 0 || p.k >= G.order()) {
            rep.detail = "block entry out of range";
            return rep;
        }

    std::vector<std::string> bad;
    PairWord target = detail::pieces_word(c.pieces);
    try {
        rep.provenance_ok = replay_trace(G, w, c.provenance) == target;
        if (!rep.provenance_ok) bad.push_back("provenance does not land on the block word");
    } catch (const std::exception& ex) {
        bad.push_back(std::string("provenance replay failed: ") + ex.what());
    }

    rep.pieces_commute = true;
    for (size_t i = 0; i < c.pieces.size(); ++i) {
        const GenusOnePiece& p = c.pieces[i];
        if (!p.commuting || commutator(G, p.g, p.k) != G.identity()) {
            rep.pieces_commute = false;
            bad.push_back("block " + std::to_string(i) + " does not commute");
        }
    }

    rep.recipes_ok = c.recipes.size() == c.pieces.size();
    if (!rep.recipes_ok) bad.push_back("recipe count differs from block count");
    for (size_t i = 0; rep.recipes_ok && i < c.pieces.size(); ++i)
        if (!(c.recipes[i] == detail::make_recipe(G, c.pieces[i]))) {
            rep.recipes_ok = false;
            bad.push_back("recipe " + std::to_string(i) + " does not match its block");
        }

    rep.branch_ok = true;
    for (size_t i = 0; i < c.branch_data.size(); ++i) {
        RiemannHurwitzReport rh = riemann_hurwitz_check(c.branch_data[i]);
        if (!rh.pass) {
            rep.branch_ok = false;
            bad.push_back("branch data " + std::to_string(i) + ": " + rh.detail);
        }
    }

    rep.class_ok = true;
    if (rep.provenance_ok && rep.pieces_commute && G.order() <= oracle_bound) {
        rep.class_ok = class_of(G, w, oracle_bound) == class_of(G, target, oracle_bound);
        if (!rep.class_ok) bad.push_back("block word sits in a different class");
    }

    rep.pass = rep.provenance_ok && rep.pieces_commute && rep.recipes_ok && rep.branch_ok && rep.class_ok;
    if (rep.pass) {
        rep.detail = "ok";
    } else {
        for (const auto& m : bad) {
            if (!rep.detail.empty()) rep.detail += "; ";
            rep.detail += m;
        }
    }
    return rep;
}

}  // namespace schur
