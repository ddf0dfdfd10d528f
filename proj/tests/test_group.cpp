#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "schur/group.hpp"

using namespace schur;

TEST_CASE("cyclic and product groups build with valid tables") {
    for (const char* spec : {"Z1", "Z2", "Z12", "Z4xZ2", "Z2xZ2xZ2", "Z3xZ5"}) {
        GroupTable G = build_group(spec);
        CAPTURE(spec);
        REQUIRE(validate_table(G));
        REQUIRE(G.is_abelian());
    }
    REQUIRE(build_group("Z12").order() == 12);
    REQUIRE(build_group("Z4xZ2").order() == 8);
}

TEST_CASE("abelian codec round trips and renders canonically") {
    GroupTable G = build_group("Z4xZ6");
    REQUIRE(G.order() == 24);
    for (Elem e = 0; e < G.order(); ++e) {
        auto r = G.abelian_decode(e);
        REQUIRE(G.abelian_encode(r) == e);
        REQUIRE(G.parse(G.display(e)) == e);
    }
    REQUIRE(G.display(0) == "(0,0)");
    REQUIRE(G.parse(" ( 3 , 5 ) ") == G.parse("(3,5)"));
    REQUIRE(G.parse("(-1,7)") == G.parse("(3,1)"));
    REQUIRE_THROWS_AS(G.parse("(1)"), parse_error);
    REQUIRE_THROWS_AS(G.parse("3,5"), parse_error);
}

TEST_CASE("dihedral groups follow the reflection relations") {
    GroupTable G = build_group("D8");
    REQUIRE(G.order() == 8);
    REQUIRE(validate_table(G));
    Elem c = G.parse("c"), a = G.parse("a");
    REQUIRE(G.elem_order(c) == 4);
    REQUIRE(G.elem_order(a) == 2);
    // a c a^-1 = c^-1 and [c,a] = c^2.
    REQUIRE(G.conj(a, c) == G.power(c, -1));
    REQUIRE(commutator(G, c, a) == G.power(c, 2));
    REQUIRE(G.display(G.mul(a, c)) == "a*c");
    REQUIRE(G.parse("a*c^3") == G.parse("ac^3"));
    REQUIRE(G.parse("c^-1") == G.power(c, 3));
    REQUIRE(G.parse("c^0") == 0);
    REQUIRE(G.display(0) == "1");
    for (Elem e = 0; e < G.order(); ++e) REQUIRE(G.parse(G.display(e)) == e);
    REQUIRE_THROWS_AS(G.parse("b"), parse_error);
    REQUIRE_THROWS_AS(build_group("D7"), parse_error);

    GroupTable D2 = build_group("D2");
    REQUIRE(D2.order() == 2);
    REQUIRE(validate_table(D2));
}

TEST_CASE("permutation groups compose right factor first") {
    GroupTable S4 = build_group("S4");
    REQUIRE(S4.order() == 24);
    REQUIRE(validate_table(S4));
    Elem t12 = S4.parse("(1,2)"), t13 = S4.parse("(1,3)");
    REQUIRE(S4.mul(t12, t13) == S4.parse("(1,3,2)"));
    REQUIRE(S4.mul(t13, t12) == S4.parse("(1,2,3)"));
    REQUIRE(S4.display(S4.parse("(3,4)(1,2)")) == "(1,2)(3,4)");
    REQUIRE(S4.parse("id") == 0);
    REQUIRE(S4.parse("( 1 , 2 ) ( 3 , 4 )") == S4.parse("(1,2)(3,4)"));
    std::set<int> orders;
    for (Elem e = 0; e < S4.order(); ++e) orders.insert(S4.elem_order(e));
    REQUIRE(orders == std::set<int>{1, 2, 3, 4});
    REQUIRE_THROWS_AS(S4.parse("(1,5)"), parse_error);
    REQUIRE_THROWS_AS(S4.parse("(1,1)"), parse_error);

    GroupTable A4 = build_group("A4");
    REQUIRE(A4.order() == 12);
    REQUIRE(validate_table(A4));
    REQUIRE_THROWS_AS(A4.parse("(1,2)"), parse_error);
    REQUIRE(A4.parse("(1,2)(3,4)") != 0);
}

TEST_CASE("group spec grammar enforces the order cap") {
    REQUIRE_THROWS_AS(build_group("Q8"), parse_error);
    REQUIRE_THROWS_AS(build_group(""), parse_error);
    REQUIRE_THROWS_AS(build_group("Zx"), parse_error);
    REQUIRE_THROWS_AS(build_group("Z4x"), parse_error);
    REQUIRE_THROWS_AS(build_group("S9"), parse_error);
    REQUIRE_THROWS_AS(build_group("S8"), range_error);
    REQUIRE_THROWS_AS(build_group("A8"), range_error);
    REQUIRE_THROWS_AS(build_group("Z5041"), range_error);
    REQUIRE_THROWS_AS(build_group("Z72xZ71"), range_error);
    REQUIRE(build_group("A7").order() == 2520);
}

TEST_CASE("closure and explicit subgroups") {
    GroupTable D8 = build_group("D8");
    auto H = closure(D8, {D8.parse("c")});
    REQUIRE(H.size() == 4);
    auto E = subgroup_from_elements(D8, H);
    REQUIRE(E.sub.order() == 4);
    REQUIRE(validate_table(E.sub));
    REQUIRE(E.index_in_ambient() == 2);
    REQUIRE(E.amb_to_sub[static_cast<size_t>(D8.parse("a"))] == -1);
    // Embedding respects multiplication.
    for (Elem i = 0; i < E.sub.order(); ++i)
        for (Elem j = 0; j < E.sub.order(); ++j)
            REQUIRE(E.embed[static_cast<size_t>(E.sub.mul(i, j))] ==
                    D8.mul(E.embed[static_cast<size_t>(i)], E.embed[static_cast<size_t>(j)]));
    REQUIRE_THROWS_AS(subgroup_from_elements(D8, {0, D8.parse("c")}), precondition_error);
}

TEST_CASE("commutator subgroups of dihedral and symmetric groups") {
    GroupTable D8 = build_group("D8");
    auto C = commutator_subgroup(D8);
    REQUIRE(C.sub.order() == 2);
    REQUIRE(C.embed == std::vector<Elem>{0, D8.parse("c^2")});

    GroupTable S4 = build_group("S4");
    auto A = commutator_subgroup(S4);
    REQUIRE(A.sub.order() == 12);
    GroupTable A4 = build_group("A4");
    std::vector<Elem> evens;
    for (Elem e = 0; e < S4.order(); ++e) {
        try {
            A4.parse(S4.display(e));
            evens.push_back(e);
        } catch (const parse_error&) {
        }
    }
    REQUIRE(A.embed == evens);
}

TEST_CASE("sylow subgroups have the right order and restart to conjugates") {
    GroupTable S4 = build_group("S4");
    auto P2 = sylow_subgroup(S4, 2);
    REQUIRE(P2.sub.order() == 8);
    REQUIRE(validate_table(P2.sub));
    auto P3 = sylow_subgroup(S4, 3);
    REQUIRE(P3.sub.order() == 3);

    GroupTable D8 = build_group("D8");
    REQUIRE(find_isomorphism(P2.sub, D8).has_value());

    auto Q2 = sylow_subgroup(S4, 2, 7);
    REQUIRE(Q2.sub.order() == 8);
    REQUIRE(find_isomorphism(Q2.sub, P2.sub).has_value());

    GroupTable Z6 = build_group("Z6");
    auto T = sylow_subgroup(Z6, 3);
    REQUIRE(T.embed == std::vector<Elem>{0, 2, 4});
    REQUIRE(sylow_subgroup(Z6, 5).sub.order() == 1);
    REQUIRE_THROWS_AS(sylow_subgroup(Z6, 4), precondition_error);

    GroupTable A4 = build_group("A4");
    REQUIRE(sylow_subgroup(A4, 2).sub.order() == 4);
    REQUIRE(sylow_subgroup(A4, 3).sub.order() == 3);
}

TEST_CASE("isomorphism search separates small groups") {
    GroupTable D4 = build_group("D4");
    GroupTable V = build_group("Z2xZ2");
    auto iso = find_isomorphism(D4, V);
    REQUIRE(iso.has_value());
    for (Elem a = 0; a < 4; ++a)
        for (Elem b = 0; b < 4; ++b)
            REQUIRE((*iso)[static_cast<size_t>(D4.mul(a, b))] ==
                    V.mul((*iso)[static_cast<size_t>(a)], (*iso)[static_cast<size_t>(b)]));
    REQUIRE_FALSE(find_isomorphism(build_group("Z4"), V).has_value());
    REQUIRE_FALSE(find_isomorphism(build_group("D12"), build_group("Z12")).has_value());
    REQUIRE(find_isomorphism(build_group("D6"), build_group("S3")).has_value());
}

TEST_CASE("powers handle negative exponents") {
    GroupTable D12 = build_group("D12");
    Elem c = D12.parse("c");
    REQUIRE(D12.power(c, -1) == D12.inv(c));
    REQUIRE(D12.power(c, 13) == c);
    REQUIRE(D12.power(c, 0) == 0);
    REQUIRE(D12.power(D12.parse("a"), -3) == D12.parse("a"));
}
