#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <string>
#include <vector>

#include "schur/group.hpp"
#include "schur/homology.hpp"
#include "schur/pairword.hpp"
#include "schur/util.hpp"

using namespace schur;

namespace {

// Every structural invariant the oracle promises: divisor chain, witnesses
// projecting to unit vectors, boundaries projecting to zero.
void check_structure(const GroupTable& G, const MultiplierStructure& M, Rng& rng) {
    for (size_t i = 0; i + 1 < M.invariant_factors.size(); ++i) {
        REQUIRE(M.invariant_factors[i] >= 2);
        REQUIRE(M.invariant_factors[i + 1] % M.invariant_factors[i] == 0);
    }
    for (size_t i = 0; i < M.witness_cycles.size(); ++i) {
        REQUIRE(is_cycle(G, M.witness_cycles[i]));
        MultiplierClass cl = M.project(G, M.witness_cycles[i]);
        for (size_t j = 0; j < cl.coords.size(); ++j) REQUIRE(cl.coords[j] == (i == j ? 1 : 0));
    }
    for (int t = 0; t < 40; ++t) {
        Elem g1 = static_cast<Elem>(1 + rng.below(static_cast<std::uint64_t>(G.order() - 1)));
        Elem g2 = static_cast<Elem>(1 + rng.below(static_cast<std::uint64_t>(G.order() - 1)));
        Elem g3 = static_cast<Elem>(1 + rng.below(static_cast<std::uint64_t>(G.order() - 1)));
        REQUIRE(M.project(G, bar_d3(G, g1, g2, g3)).is_zero());
    }
}

std::vector<long long> factors_of(const GroupTable& G) {
    return oracle_structure(G).invariant_factors;
}

}  // namespace

TEST_CASE("boundary operators compose to zero") {
    for (const char* spec : {"Z6", "D8"}) {
        GroupTable G = build_group(spec);
        for (Elem g1 = 1; g1 < G.order(); ++g1)
            for (Elem g2 = 1; g2 < G.order(); ++g2)
                for (Elem g3 = 1; g3 < G.order(); ++g3)
                    REQUIRE(bar_d2(G, bar_d3(G, g1, g2, g3)).empty());
    }
    GroupTable S4 = build_group("S4");
    Rng rng(kDefaultSeed ^ 0x81);
    for (int t = 0; t < 500; ++t) {
        Elem g1 = static_cast<Elem>(1 + rng.below(23));
        Elem g2 = static_cast<Elem>(1 + rng.below(23));
        Elem g3 = static_cast<Elem>(1 + rng.below(23));
        REQUIRE(bar_d2(S4, bar_d3(S4, g1, g2, g3)).empty());
    }
}

TEST_CASE("multiplier table matches the known values") {
    Rng rng(kDefaultSeed ^ 0x82);
    for (int n = 2; n <= 12; ++n)
        REQUIRE(factors_of(build_group("Z" + std::to_string(n))).empty());

    REQUIRE(factors_of(build_group("D4")) == std::vector<long long>{2});
    REQUIRE(factors_of(build_group("D8")) == std::vector<long long>{2});
    REQUIRE(factors_of(build_group("D12")) == std::vector<long long>{2});
    REQUIRE(factors_of(build_group("D6")).empty());
    REQUIRE(factors_of(build_group("D10")).empty());
    REQUIRE(factors_of(build_group("Z2xZ2")) == std::vector<long long>{2});
    REQUIRE(factors_of(build_group("S3")).empty());
    REQUIRE(factors_of(build_group("S4")) == std::vector<long long>{2});
    REQUIRE(factors_of(build_group("A4")) == std::vector<long long>{2});
    REQUIRE(factors_of(build_group("Z3xZ3")) == std::vector<long long>{3});
    REQUIRE(factors_of(build_group("Z4xZ4")) == std::vector<long long>{4});
    REQUIRE(factors_of(build_group("Z2xZ4")) == std::vector<long long>{2});

    for (const char* spec : {"D8", "S4", "A4", "Z3xZ3", "Z4xZ4"}) {
        GroupTable G = build_group(spec);
        check_structure(G, oracle_structure(G), rng);
    }

    REQUIRE_THROWS_AS(bar_h2(build_group("A5"), 24), range_error);
}

TEST_CASE("oracle cache hands back the same structure") {
    GroupTable D8 = build_group("D8");
    const MultiplierStructure& a = oracle_structure(D8);
    const MultiplierStructure& b = oracle_structure(D8);
    REQUIRE(&a == &b);
}

TEST_CASE("surface cycles evaluate to the pinned classes") {
    GroupTable D8 = build_group("D8");
    GroupTable S4 = build_group("S4");
    GroupTable A4 = build_group("A4");
    GroupTable Z6 = build_group("Z6");

    REQUIRE(surface_cycle(D8, {}).terms.empty());
    REQUIRE(class_of(D8, {}).is_zero());

    // Repeated pairs are null.
    for (Elem x = 0; x < D8.order(); ++x) REQUIRE(class_of(D8, {{x, x, 1}}).is_zero());

    Elem c2 = D8.parse("c^2"), a = D8.parse("a");
    MultiplierClass gen = class_of(D8, {{c2, a, 1}});
    REQUIRE(gen.moduli == std::vector<long long>{2});
    REQUIRE(gen.coords == std::vector<long long>{1});

    Elem u1 = S4.parse("(1,2)"), u2 = S4.parse("(3,4)");
    MultiplierClass su = class_of(S4, {{u1, u2, 1}});
    REQUIRE(su.coords == std::vector<long long>{1});

    Elem v1 = A4.parse("(1,2)(3,4)"), v2 = A4.parse("(1,3)(2,4)");
    REQUIRE_FALSE(class_of(A4, {{v1, v2, 1}}).is_zero());

    ZWordSampler z6(Z6);
    Rng rng(kDefaultSeed ^ 0x83);
    for (int t = 0; t < 20; ++t) REQUIRE(class_of(Z6, z6.sample(rng, 3)).is_zero());

    REQUIRE_THROWS_AS(surface_cycle(D8, {{D8.parse("c"), a, 1}}), precondition_error);
}

TEST_CASE("single commuting pairs match the two-term cycle") {
    Rng rng(kDefaultSeed ^ 0x84);
    for (const char* spec : {"D8", "S4"}) {
        GroupTable G = build_group(spec);
        const MultiplierStructure& M = oracle_structure(G);
        int hits = 0;
        for (Elem x = 0; x < G.order(); ++x)
            for (Elem y = 0; y < G.order(); ++y) {
                if (commutator(G, x, y) != G.identity()) continue;
                if (x == G.identity() || y == G.identity()) continue;
                BarChain2 two;
                two.add(G, x, y, 1);
                two.add(G, y, x, -1);
                REQUIRE(class_of(G, {{x, y, 1}}) == M.project(G, two));
                ++hits;
            }
        REQUIRE(hits > 10);
    }
}

TEST_CASE("classes add over concatenation") {
    Rng rng(kDefaultSeed ^ 0x85);
    for (const char* spec : {"D8", "S4", "A4"}) {
        GroupTable G = build_group(spec);
        ZWordSampler sampler(G);
        for (int t = 0; t < 25; ++t) {
            PairWord w1 = sampler.sample(rng, 1 + static_cast<int>(rng.below(3)));
            PairWord w2 = sampler.sample(rng, 1 + static_cast<int>(rng.below(3)));
            PairWord cat = w1;
            cat.insert(cat.end(), w2.begin(), w2.end());
            REQUIRE(class_of(G, cat) == class_add(class_of(G, w1), class_of(G, w2)));
        }
    }
}

TEST_CASE("classes survive rewrite moves") {
    Rng rng(kDefaultSeed ^ 0x86);
    for (const char* spec : {"D8", "S4", "A4"}) {
        GroupTable G = build_group(spec);
        ZWordSampler sampler(G);
        int applications = 0;
        for (int t = 0; t < 6; ++t) {
            PairWord w = sampler.sample(rng, 2);
            MultiplierClass cl = class_of(G, w);
            for (int mv = 0; mv < 30; ++mv) {
                auto rand_elem = [&]() {
                    return static_cast<Elem>(rng.below(static_cast<std::uint64_t>(G.order())));
                };
                PairWord next = w;
                switch (rng.below(7)) {
                    case 0:
                        if (w.size() < 40) {
                            int pos = static_cast<int>(rng.below(w.size() + 1));
                            next = apply_relation(G, w, Rule::R1, pos, {{rand_elem()}, {}}, Dir::Backward).first;
                        }
                        break;
                    case 1: {
                        if (w.empty()) break;
                        int pos = static_cast<int>(rng.below(w.size()));
                        next = apply_relation(G, w, Rule::R3, pos, {{rand_elem()}, {}}, Dir::Forward).first;
                        break;
                    }
                    case 2: {
                        if (w.empty()) break;
                        int pos = static_cast<int>(rng.below(w.size()));
                        next = apply_relation(G, w, Rule::R4, pos, {{rand_elem()}, {}}, Dir::Forward).first;
                        break;
                    }
                    case 3: {
                        if (w.empty()) break;
                        int pos = static_cast<int>(rng.below(w.size()));
                        next = apply_relation(G, w, Rule::R5, pos, {{rand_elem()}, {}}, Dir::Forward).first;
                        break;
                    }
                    case 4: {
                        if (w.size() < 2) break;
                        int pos = static_cast<int>(rng.below(w.size() - 1));
                        Rule r = rng.below(3) == 0 ? Rule::R8 : rng.below(2) ? Rule::R9 : Rule::R10;
                        next = apply_relation(G, w, r, pos, {}, Dir::Forward).first;
                        break;
                    }
                    case 5: {
                        if (w.size() < 2) break;
                        int pos = static_cast<int>(rng.below(w.size() - 1));
                        next = commuting_shift(G, w, pos).first;
                        break;
                    }
                    case 6:
                        if (w.size() < 40) {
                            int pos = static_cast<int>(rng.below(w.size() + 1));
                            Elem x = rand_elem();
                            long long n = static_cast<long long>(rng.below_int(7)) - 3;
                            long long s = static_cast<long long>(rng.below_int(7)) - 3;
                            next = apply_relation(G, w, Rule::R11, pos, {{x}, {n, s}}, Dir::Backward).first;
                        }
                        break;
                }
                if (next == w) continue;
                REQUIRE(class_of(G, next) == cl);
                w = std::move(next);
                ++applications;
            }
        }
        REQUIRE(applications > 100);
    }
}

TEST_CASE("transfer and pushforward satisfy the composition laws") {
    GroupTable S4 = build_group("S4");
    Elem u1 = S4.parse("(1,2)"), u2 = S4.parse("(3,4)");
    BarChain2 zu = surface_cycle(S4, {{u1, u2, 1}});

    SECTION("whole group: both maps are the identity on classes") {
        std::vector<Elem> all(24);
        std::iota(all.begin(), all.end(), 0);
        SubgroupEmbedding full = subgroup_from_elements(S4, all);
        BarChain2 res = restriction_transfer(full, zu);
        MultiplierClass down = oracle_structure(full.sub).project(full.sub, res);
        REQUIRE(down.coords == std::vector<long long>{1});
        BarChain2 back = corestriction(full, res);
        REQUIRE(oracle_structure(S4).project(S4, back).coords == std::vector<long long>{1});
    }

    SECTION("trivial subgroup kills everything") {
        SubgroupEmbedding triv = subgroup_from_elements(S4, {0});
        BarChain2 res = restriction_transfer(triv, zu);
        REQUIRE(oracle_structure(triv.sub).project(triv.sub, res).is_zero());
    }

    SECTION("the 2-Sylow transfer keeps the generator alive") {
        SubgroupEmbedding syl2 = sylow_subgroup(S4, 2);
        REQUIRE(syl2.sub.order() == 8);
        BarChain2 res = restriction_transfer(syl2, zu);
        REQUIRE_FALSE(oracle_structure(syl2.sub).project(syl2.sub, res).is_zero());
    }

    SECTION("pushforward after transfer multiplies by the index") {
        Rng rng(kDefaultSeed ^ 0x87);
        struct Case {
            const char* spec;
            int p;
        };
        for (Case cs : {Case{"S4", 2}, Case{"S4", 3}, Case{"A4", 2}, Case{"D12", 2}}) {
            GroupTable G = build_group(cs.spec);
            SubgroupEmbedding syl = sylow_subgroup(G, cs.p);
            long long index = G.order() / syl.sub.order();
            const MultiplierStructure& M = oracle_structure(G);
            ZWordSampler sampler(G);
            std::vector<BarChain2> cycles = M.witness_cycles;
            for (int t = 0; t < 4; ++t) cycles.push_back(surface_cycle(G, sampler.sample(rng, 2)));
            for (const BarChain2& z : cycles) {
                BarChain2 round = corestriction(syl, restriction_transfer(syl, z));
                REQUIRE(M.project(G, round) == class_scale(M.project(G, z), index));
            }
        }
    }

    SECTION("non-cycles are rejected") {
        BarChain2 bad;
        bad.add(S4, S4.parse("(1,2)"), S4.parse("(1,3)"), 1);
        SubgroupEmbedding syl2 = sylow_subgroup(S4, 2);
        REQUIRE_THROWS_AS(restriction_transfer(syl2, bad), precondition_error);
        BarChain2 badh;
        badh.add(syl2.sub, 1, 2, 1);
        if (!is_cycle(syl2.sub, badh)) REQUIRE_THROWS_AS(corestriction(syl2, badh), precondition_error);
    }
}

TEST_CASE("exterior square matches the bar oracle on abelian groups") {
    // Exhaustive over factor lists with order at most 20, then larger spot
    // checks; the bar side grows cubically so the sweep stays bounded.
    std::vector<std::vector<int>> lists;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int minf, long long prod) -> void {
        if (!cur.empty()) lists.push_back(cur);
        for (int f = minf; prod * f <= 20; ++f) {
            cur.push_back(f);
            self(self, f, prod * f);
            cur.pop_back();
        }
    };
    rec(rec, 2, 1);
    for (const auto& fs : lists) {
        std::string spec;
        for (size_t i = 0; i < fs.size(); ++i) spec += (i ? "x" : "") + ("Z" + std::to_string(fs[i]));
        GroupTable A = build_group(spec);
        ExteriorSquare E = exterior_square(A);
        std::vector<long long> ext = canonical_chain(E.moduli());
        REQUIRE(ext == factors_of(A));
    }
    for (const char* spec : {"Z3xZ9", "Z2xZ4xZ4", "Z6xZ6", "Z2xZ2xZ8"}) {
        GroupTable A = build_group(spec);
        REQUIRE(canonical_chain(exterior_square(A).moduli()) == factors_of(A));
    }
    REQUIRE_THROWS_AS(exterior_square(build_group("D8")), precondition_error);
}

TEST_CASE("the alternating pairing computes oracle classes through the basis") {
    Rng rng(kDefaultSeed ^ 0x88);
    for (const char* spec : {"Z2xZ4", "Z4xZ4", "Z2xZ2xZ4", "Z3xZ3"}) {
        GroupTable A = build_group(spec);
        ExteriorSquare E = exterior_square(A);
        const MultiplierStructure& M = oracle_structure(A);
        size_t k = A.factors.size();

        // Oracle classes of the basis pair words.
        std::vector<std::vector<MultiplierClass>> basis(k, std::vector<MultiplierClass>(k));
        auto unit = [&](size_t i) {
            std::vector<int> r(k, 0);
            r[i] = 1;
            return A.abelian_encode(r);
        };
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j)
                basis[i][j] = class_of(A, {{unit(i), unit(j), 1}});

        for (int t = 0; t < 40; ++t) {
            Elem x = static_cast<Elem>(rng.below(static_cast<std::uint64_t>(A.order())));
            Elem y = static_cast<Elem>(rng.below(static_cast<std::uint64_t>(A.order())));
            std::vector<int> xr = A.abelian_decode(x), yr = A.abelian_decode(y);
            MultiplierClass expect{std::vector<long long>(M.invariant_factors.size(), 0),
                                   M.invariant_factors};
            for (size_t i = 0; i < k; ++i)
                for (size_t j = i + 1; j < k; ++j) {
                    long long coef = static_cast<long long>(xr[i]) * yr[j] -
                                     static_cast<long long>(xr[j]) * yr[i];
                    expect = class_add(expect, class_scale(basis[i][j], coef));
                }
            REQUIRE(class_of(A, {{x, y, 1}}) == expect);

            // The pairing itself is defined on the exterior coordinates.
            MultiplierClass pcl = E.pairing(xr, yr);
            REQUIRE(pcl.coords.size() == E.summands.size());
        }
    }
}

TEST_CASE("canonical chains normalize cyclic factor lists") {
    REQUIRE(canonical_chain({}) == std::vector<long long>{});
    REQUIRE(canonical_chain({1, 1}) == std::vector<long long>{});
    REQUIRE(canonical_chain({2, 4, 3}) == std::vector<long long>{2, 12});
    REQUIRE(canonical_chain({6, 4}) == std::vector<long long>{2, 12});
    REQUIRE(canonical_chain({2, 2, 2}) == std::vector<long long>{2, 2, 2});
    REQUIRE(canonical_chain({8, 9, 5}) == std::vector<long long>{360});
}

TEST_CASE("projection rejects foreign chains and non-cycles") {
    GroupTable D8 = build_group("D8");
    GroupTable S4 = build_group("S4");
    const MultiplierStructure& M = oracle_structure(D8);
    BarChain2 bad;
    bad.add(D8, D8.parse("c"), D8.parse("a"), 1);
    REQUIRE_THROWS_AS(M.project(D8, bad), precondition_error);
    BarChain2 ok;
    REQUIRE_THROWS_AS(M.project(S4, ok), precondition_error);
}
