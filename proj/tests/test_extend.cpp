#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "schur/extend.hpp"
#include "schur/group.hpp"
#include "schur/homology.hpp"
#include "schur/pairword.hpp"
#include "schur/util.hpp"

using namespace schur;

namespace {

PairWord letters(std::initializer_list<PairLetter> ls) { return PairWord(ls); }

std::vector<std::pair<Elem, Elem>> block_multiset(const ExtensionCertificate& c) {
    std::vector<std::pair<Elem, Elem>> v;
    for (const auto& p : c.pieces) v.push_back({p.g, p.k});
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("genus-one blocks carry the rotation recipe") {
    GroupTable Z4 = build_group("Z4");
    ExtensionCertificate c = genus_one_certificate(Z4, 1, 2);
    REQUIRE(c.pieces.size() == 1);
    REQUIRE(c.pieces[0] == GenusOnePiece{1, 2, true});
    REQUIRE(c.recipes[0].rotation_order == 4);
    REQUIRE(c.recipes[0].isotropy == std::vector<Elem>{0, 1, 2, 3});
    REQUIRE(c.recipes[0].fixed_locus);
    REQUIRE(c.recipes[0].transverse == 2);
    REQUIRE(c.provenance.empty());
    REQUIRE(validate_certificate(Z4, c, letters({{1, 2, 1}})).pass);

    GroupTable D8 = build_group("D8");
    ExtensionCertificate free_case = genus_one_certificate(D8, 0, 0);
    REQUIRE(free_case.recipes[0].rotation_order == 1);
    REQUIRE_FALSE(free_case.recipes[0].fixed_locus);
    REQUIRE(free_case.recipes[0].isotropy == std::vector<Elem>{0});
    REQUIRE(validate_certificate(D8, free_case, letters({{0, 0, 1}})).pass);

    // c^2 is central in D8, so the pair (c^2, a) is a valid block; it is
    // also the nonzero generator of the multiplier.
    Elem c2 = D8.parse("c^2"), a = D8.parse("a");
    ExtensionCertificate gen = genus_one_certificate(D8, c2, a);
    REQUIRE(gen.recipes[0].rotation_order == 2);
    REQUIRE(gen.recipes[0].isotropy == std::vector<Elem>{0, c2});
    REQUIRE(validate_certificate(D8, gen, letters({{c2, a, 1}})).pass);
    REQUIRE_FALSE(class_of(D8, letters({{c2, a, 1}})).is_zero());

    REQUIRE_THROWS_AS(genus_one_certificate(D8, D8.parse("c"), a), precondition_error);
    REQUIRE_THROWS_AS(genus_one_certificate(D8, 200, 0), precondition_error);
}

TEST_CASE("abelian surface data splits into one block per handle") {
    GroupTable V = build_group("Z2xZ2");
    Elem e10 = V.abelian_encode({1, 0}), e01 = V.abelian_encode({0, 1});
    SurfaceWord s{{{e01, e10}}};
    ExtensionCertificate c = decompose_abelian(V, s);
    REQUIRE(c.pieces.size() == 1);
    REQUIRE(c.pieces[0].g == e10);
    REQUIRE(c.pieces[0].k == e01);
    REQUIRE(c.provenance.empty());
    REQUIRE(validate_certificate(V, c, from_surface(V, s)).pass);
    REQUIRE_FALSE(class_of(V, from_surface(V, s)).is_zero());

    ExtensionCertificate nothing = decompose_abelian(V, SurfaceWord{});
    REQUIRE(nothing.pieces.empty());
    REQUIRE(validate_certificate(V, nothing, PairWord{}).pass);

    GroupTable Z6 = build_group("Z6");
    SurfaceWord g3{{{1, 2}, {3, 4}, {5, 0}}};
    ExtensionCertificate c3 = decompose_abelian(Z6, g3);
    REQUIRE(c3.pieces.size() == 3);
    std::vector<std::pair<Elem, Elem>> want{{0, 5}, {2, 1}, {4, 3}};
    REQUIRE(block_multiset(c3) == want);
    REQUIRE(validate_certificate(Z6, c3, from_surface(Z6, g3)).pass);

    GroupTable D8 = build_group("D8");
    REQUIRE_THROWS_AS(decompose_abelian(D8, SurfaceWord{}), precondition_error);
}

TEST_CASE("dihedral reduction certificates expose the residual block") {
    GroupTable D8 = build_group("D8");
    Elem c1 = D8.parse("c"), c2 = D8.parse("c^2"), c3 = D8.parse("c^3"), a = D8.parse("a");

    ExtensionCertificate direct = dihedral_reduction_certificate(D8, letters({{c2, a, 1}}));
    REQUIRE(direct.pieces.size() == 1);
    REQUIRE(direct.pieces[0].g == c2);
    REQUIRE(direct.pieces[0].k == a);
    REQUIRE(validate_certificate(D8, direct, letters({{c2, a, 1}})).pass);

    PairWord twice = letters({{c1, a, 1}, {c1, a, 1}});
    ExtensionCertificate merged = dihedral_reduction_certificate(D8, twice);
    REQUIRE(merged.pieces.size() == 1);
    REQUIRE(merged.pieces[0].g == c2);
    REQUIRE(merged.pieces[0].k == a);
    REQUIRE_FALSE(merged.provenance.empty());
    REQUIRE(validate_certificate(D8, merged, twice).pass);

    PairWord cancel = letters({{c1, a, 1}, {c3, a, 1}});
    ExtensionCertificate empty = dihedral_reduction_certificate(D8, cancel);
    REQUIRE(empty.pieces.empty());
    REQUIRE(validate_certificate(D8, empty, cancel).pass);

    // The attached sphere bookkeeping: poles with the full rotation
    // stabilizer plus two reflection orbits.
    REQUIRE(direct.branch_data.size() == 1);
    REQUIRE(direct.branch_data[0].degree == 8);
    REQUIRE(direct.branch_data[0].branch_orders == std::vector<long long>{2, 2, 4});
    REQUIRE(riemann_hurwitz_check(direct.branch_data[0]).pass);

    GroupTable D10 = build_group("D10");
    ZWordSampler s10(D10);
    Rng rng(kDefaultSeed ^ 0xE1);
    for (int t = 0; t < 30; ++t) {
        PairWord w = s10.sample(rng, rng.below_int(4));
        ExtensionCertificate odd = dihedral_reduction_certificate(D10, w);
        REQUIRE(odd.pieces.empty());
        REQUIRE(validate_certificate(D10, odd, w).pass);
    }

    GroupTable S4 = build_group("S4");
    REQUIRE_THROWS_AS(dihedral_reduction_certificate(S4, PairWord{}), precondition_error);
}

TEST_CASE("dihedral residual blocks stay in the class of the input") {
    Rng rng(kDefaultSeed ^ 0xE2);
    for (const char* spec : {"D8", "D12"}) {
        GroupTable G = build_group(spec);
        ZWordSampler samp(G);
        for (int t = 0; t < 60; ++t) {
            PairWord w = samp.sample(rng, rng.below_int(4));
            ExtensionCertificate c = dihedral_reduction_certificate(G, w);
            REQUIRE(class_of(G, detail::pieces_word(c.pieces)) == class_of(G, w));
            CertificateReport rep = validate_certificate(G, c, w);
            REQUIRE(rep.pass);
            REQUIRE(rep.detail == "ok");
        }
    }
}

TEST_CASE("riemann-hurwitz bookkeeping accepts the classics") {
    // Hyperelliptic shape: degree 2, genus-0 quotient, six simple branch points.
    REQUIRE(riemann_hurwitz_check({2, 0, {2, 2, 2, 2, 2, 2}, -2}).pass);

    // Unbranched covers: chi = N(2 - 2h).
    REQUIRE(riemann_hurwitz_check({1, 0, {}, 2}).pass);
    REQUIRE(riemann_hurwitz_check({5, 2, {}, -10}).pass);
    REQUIRE(riemann_hurwitz_check({12, 1, {}, 0}).pass);

    // Sphere quotients of the rotation groups.
    for (long long n = 2; n <= 12; ++n) REQUIRE(riemann_hurwitz_check({2 * n, 0, {2, 2, n}, 2}).pass);
    REQUIRE(riemann_hurwitz_check({12, 0, {2, 3, 3}, 2}).pass);
    REQUIRE(riemann_hurwitz_check({24, 0, {2, 3, 4}, 2}).pass);
    REQUIRE(riemann_hurwitz_check({60, 0, {2, 3, 5}, 2}).pass);

    // Degree 2 with a single branch point: the equation forces chi = 3.
    RiemannHurwitzReport bad = riemann_hurwitz_check({2, 0, {2}, 0});
    REQUIRE_FALSE(bad.pass);
    REQUIRE(bad.expected_chi == 3);
    REQUIRE(bad.residual == -3);
    REQUIRE_FALSE(bad.detail.empty());

    REQUIRE_FALSE(riemann_hurwitz_check({4, 0, {3}, 2}).pass);   // 3 does not divide 4
    REQUIRE_FALSE(riemann_hurwitz_check({4, 0, {1}, 8}).pass);   // orders start at 2
    REQUIRE_FALSE(riemann_hurwitz_check({0, 0, {}, 0}).pass);    // degree at least 1
    REQUIRE_FALSE(riemann_hurwitz_check({2, -1, {}, 8}).pass);   // genus at least 0
}

TEST_CASE("riemann-hurwitz rejects every single-entry perturbation") {
    for (long long h = 0; h <= 5; ++h)
        for (long long r = 0; r <= 10; r += 2) {
            BranchData b{2, h, std::vector<long long>(static_cast<size_t>(r), 2), 4 - 4 * h - r};
            RiemannHurwitzReport ok = riemann_hurwitz_check(b);
            REQUIRE(ok.pass);
            REQUIRE(ok.residual == 0);

            BranchData up = b, down = b;
            up.chi += 1;
            down.chi -= 1;
            REQUIRE_FALSE(riemann_hurwitz_check(up).pass);
            REQUIRE(riemann_hurwitz_check(up).residual == 1);
            REQUIRE_FALSE(riemann_hurwitz_check(down).pass);

            BranchData wider = b;
            wider.branch_orders.push_back(2);
            REQUIRE_FALSE(riemann_hurwitz_check(wider).pass);
        }
}

TEST_CASE("validation flags every broken claim separately") {
    GroupTable D8 = build_group("D8");
    Elem c1 = D8.parse("c"), a = D8.parse("a");
    PairWord twice = letters({{c1, a, 1}, {c1, a, 1}});
    ExtensionCertificate good = dihedral_reduction_certificate(D8, twice);
    CertificateReport base = validate_certificate(D8, good, twice);
    REQUIRE(base.pass);
    REQUIRE(base.provenance_ok);
    REQUIRE(base.pieces_commute);
    REQUIRE(base.recipes_ok);
    REQUIRE(base.branch_ok);
    REQUIRE(base.class_ok);

    SECTION("a non-commuting block") {
        ExtensionCertificate t = good;
        t.pieces[0] = {c1, a, true};
        CertificateReport rep = validate_certificate(D8, t, twice);
        REQUIRE_FALSE(rep.pass);
        REQUIRE_FALSE(rep.pieces_commute);
    }

    SECTION("a block whose commuting flag was cleared") {
        ExtensionCertificate t = good;
        t.pieces[0].commuting = false;
        CertificateReport rep = validate_certificate(D8, t, twice);
        REQUIRE_FALSE(rep.pass);
        REQUIRE_FALSE(rep.pieces_commute);
        REQUIRE(rep.provenance_ok);
    }

    SECTION("a recipe with the wrong rotation order") {
        ExtensionCertificate t = good;
        t.recipes[0].rotation_order = 4;
        CertificateReport rep = validate_certificate(D8, t, twice);
        REQUIRE_FALSE(rep.pass);
        REQUIRE_FALSE(rep.recipes_ok);
        REQUIRE(rep.provenance_ok);
        REQUIRE(rep.pieces_commute);
        REQUIRE(rep.branch_ok);
    }

    SECTION("a recipe with a thinned-out isotropy subgroup") {
        ExtensionCertificate t = good;
        t.recipes[0].isotropy.pop_back();
        REQUIRE_FALSE(validate_certificate(D8, t, twice).recipes_ok);
    }

    SECTION("a dropped recipe") {
        ExtensionCertificate t = good;
        t.recipes.clear();
        REQUIRE_FALSE(validate_certificate(D8, t, twice).recipes_ok);
    }

    SECTION("branch data off by one") {
        ExtensionCertificate t = good;
        t.branch_data[0].chi += 1;
        CertificateReport rep = validate_certificate(D8, t, twice);
        REQUIRE_FALSE(rep.pass);
        REQUIRE_FALSE(rep.branch_ok);
        REQUIRE(rep.provenance_ok);
        REQUIRE(rep.recipes_ok);
    }

    SECTION("a truncated provenance trace") {
        ExtensionCertificate t = good;
        t.provenance.pop_back();
        CertificateReport rep = validate_certificate(D8, t, twice);
        REQUIRE_FALSE(rep.pass);
        REQUIRE_FALSE(rep.provenance_ok);
    }

    SECTION("the wrong input word") {
        PairWord other = letters({{c1, a, 1}, {D8.parse("c^3"), a, 1}});
        CertificateReport rep = validate_certificate(D8, good, other);
        REQUIRE_FALSE(rep.pass);
        REQUIRE_FALSE(rep.provenance_ok);
    }

    SECTION("a foreign group table") {
        GroupTable D12 = build_group("D12");
        CertificateReport rep = validate_certificate(D12, good, twice);
        REQUIRE_FALSE(rep.pass);
        REQUIRE_FALSE(rep.detail.empty());
    }

    SECTION("a block entry outside the group") {
        ExtensionCertificate t = good;
        t.pieces[0].g = 200;
        CertificateReport rep = validate_certificate(D8, t, twice);
        REQUIRE_FALSE(rep.pass);
        REQUIRE(rep.detail == "block entry out of range");
    }
}

TEST_CASE("every produced certificate validates") {
    Rng rng(kDefaultSeed ^ 0xE7);

    for (const char* spec : {"Z2xZ2", "Z6", "Z4xZ2", "Z3xZ3"}) {
        GroupTable G = build_group(spec);
        ZWordSampler samp(G);
        for (int t = 0; t < 40; ++t) {
            SurfaceWord s = to_surface(G, samp.sample(rng, rng.below_int(5)));
            ExtensionCertificate c = decompose_abelian(G, s);
            REQUIRE(c.pieces.size() == s.handles.size());
            REQUIRE(validate_certificate(G, c, from_surface(G, s)).pass);
        }
    }

    for (const char* spec : {"D8", "D10", "D12"}) {
        GroupTable G = build_group(spec);
        ZWordSampler samp(G);
        for (int t = 0; t < 40; ++t) {
            PairWord w = samp.sample(rng, rng.below_int(4));
            REQUIRE(validate_certificate(G, dihedral_reduction_certificate(G, w), w).pass);
        }
    }

    GroupTable S4 = build_group("S4");
    for (int t = 0; t < 60; ++t) {
        Elem x = static_cast<Elem>(rng.below(static_cast<std::uint64_t>(S4.order())));
        Elem g = S4.power(x, rng.below_int(6));
        Elem k = S4.power(x, rng.below_int(6));
        ExtensionCertificate c = genus_one_certificate(S4, g, k);
        REQUIRE(validate_certificate(S4, c, letters({{g, k, 1}})).pass);
    }
}
