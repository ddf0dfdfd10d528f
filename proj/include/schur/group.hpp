#pragma once

// Finite groups as explicit multiplication tables with dense element indices.
//
// Supported constructors (spec strings):
//   Z<n>            cyclic of order n
//   Z<a>xZ<b>x...   direct products of cyclic groups
//   D<2n>           dihedral of order 2n (D2 = Z2, D4 = Z2 x Z2)
//   S<n>, A<n>      symmetric / alternating on n points, n <= 8
// Orders above 5040 are rejected.
//
// Index 0 is always the identity. Element rendering is canonical per codec;
// parsing is whitespace-insensitive.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "schur/util.hpp"

namespace schur {

using Elem = std::int32_t;

inline constexpr int kMaxOrder = 5040;

enum class Codec { Abelian, Dihedral, Permutation, Opaque };

namespace detail {
// One-line permutation on up to 8 points, 0-based internally.
using Perm = std::array<std::uint8_t, 8>;

inline Perm perm_identity(int n) {
    Perm p{};
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = static_cast<std::uint8_t>(i);
    return p;
}
// (fg)(i) = f(g(i)): g acts first.
inline Perm perm_compose(const Perm& f, const Perm& g, int n) {
    Perm r{};
    for (int i = 0; i < n; ++i) r[static_cast<size_t>(i)] = f[g[static_cast<size_t>(i)]];
    return r;
}
inline bool perm_even(const Perm& p, int n) {
    bool seen[8] = {};
    int parity = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p[static_cast<size_t>(j)]) {
            seen[j] = true;
            ++len;
        }
        parity ^= (len - 1) & 1;
    }
    return parity == 0;
}
inline std::uint32_t perm_pack(const Perm& p, int n) {
    std::uint32_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint32_t>(p[static_cast<size_t>(i)]) << (3 * i);
    return v;
}
}  // namespace detail

struct GroupTable {
    std::string spec;             // canonical constructor string (cache key)
    Codec codec = Codec::Opaque;
    int order_ = 0;

    // Abelian: cyclic factor orders as given in the spec string.
    std::vector<int> factors;
    // Dihedral: rotation order n (group order 2n); elements a^eps c^j at
    // index eps*n + j, with a a fixed reflection and c the full rotation.
    int rot_n = 0;
    // Permutation: number of points and stored one-line forms.
    int points = 0;
    bool alternating = false;
    std::vector<detail::Perm> perms;

    std::vector<std::uint16_t> mul_;
    std::vector<std::uint16_t> inv_;

    int order() const { return order_; }
    Elem identity() const { return 0; }
    Elem mul(Elem a, Elem b) const {
        return mul_[static_cast<size_t>(a) * static_cast<size_t>(order_) + static_cast<size_t>(b)];
    }
    Elem inv(Elem a) const { return inv_[static_cast<size_t>(a)]; }
    Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }

    Elem power(Elem a, long long k) const {
        int n = elem_order(a);
        long long r = ((k % n) + n) % n;
        Elem acc = 0;
        for (long long i = 0; i < r; ++i) acc = mul(acc, a);
        return acc;
    }

    int elem_order(Elem a) const {
        int k = 1;
        Elem x = a;
        while (x != 0) {
            x = mul(x, a);
            ++k;
        }
        return k;
    }

    bool is_abelian() const {
        for (Elem a = 0; a < order_; ++a)
            for (Elem b = a + 1; b < order_; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    // --- abelian codec helpers ---
    std::vector<int> abelian_decode(Elem e) const {
        std::vector<int> r(factors.size());
        int v = e;
        for (size_t i = 0; i < factors.size(); ++i) {
            r[i] = v % factors[i];
            v /= factors[i];
        }
        return r;
    }
    Elem abelian_encode(const std::vector<int>& r) const {
        Elem e = 0;
        for (size_t i = factors.size(); i-- > 0;) {
            int v = ((r[i] % factors[i]) + factors[i]) % factors[i];
            e = e * factors[i] + v;
        }
        return e;
    }

    std::string display(Elem e) const;
    Elem parse(const std::string& s) const;
};

inline Elem commutator(const GroupTable& G, Elem x, Elem y) {
    return G.mul(G.mul(G.mul(x, y), G.inv(x)), G.inv(y));
}

// ---------------------------------------------------------------------------
// Rendering and parsing
// ---------------------------------------------------------------------------

namespace detail {

inline std::string strip_ws(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    return t;
}

inline std::string render_perm(const Perm& p, int n) {
    std::string out;
    bool seen[8] = {};
    for (int i = 0; i < n; ++i) {
        if (seen[i] || p[static_cast<size_t>(i)] == i) continue;
        out.push_back('(');
        int j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out.push_back(',');
            out += std::to_string(j + 1);
            first = false;
            j = p[static_cast<size_t>(j)];
        }
        out.push_back(')');
    }
    return out.empty() ? "id" : out;
}

inline Perm parse_perm(const std::string& raw, int n) {
    std::string s = strip_ws(raw);
    if (s == "id" || s == "1" || s == "()") return perm_identity(n);
    Perm acc = perm_identity(n);
    size_t i = 0;
    bool any = false;
    while (i < s.size()) {
        if (s[i] != '(') throw parse_error("bad permutation literal: " + raw);
        size_t close = s.find(')', i);
        if (close == std::string::npos) throw parse_error("unclosed cycle in: " + raw);
        std::string body = s.substr(i + 1, close - i - 1);
        std::vector<int> pts;
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) throw parse_error("empty entry in cycle: " + raw);
            size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size() || v < 1 || v > n) throw parse_error("point out of range in: " + raw);
            pts.push_back(v - 1);
        }
        if (pts.size() < 2) throw parse_error("cycle needs at least two points: " + raw);
        for (size_t a = 0; a < pts.size(); ++a)
            for (size_t b = a + 1; b < pts.size(); ++b)
                if (pts[a] == pts[b]) throw parse_error("repeated point in cycle: " + raw);
        Perm cyc = perm_identity(n);
        for (size_t k = 0; k < pts.size(); ++k)
            cyc[static_cast<size_t>(pts[k])] = static_cast<std::uint8_t>(pts[(k + 1) % pts.size()]);
        // Cycles written left to right compose as functions (rightmost acts
        // first); for disjoint cycles the order is immaterial.
        acc = any ? perm_compose(acc, cyc, n) : cyc;
        any = true;
        i = close + 1;
    }
    return acc;
}

}  // namespace detail

inline std::string GroupTable::display(Elem e) const {
    switch (codec) {
        case Codec::Abelian: {
            auto r = abelian_decode(e);
            std::string out = "(";
            for (size_t i = 0; i < r.size(); ++i) {
                if (i) out.push_back(',');
                out += std::to_string(r[i]);
            }
            out.push_back(')');
            return out;
        }
        case Codec::Dihedral: {
            int eps = e / rot_n, j = e % rot_n;
            if (!eps && !j) return "1";
            std::string out;
            if (eps) out = "a";
            if (j) {
                if (eps) out += "*";
                out += (j == 1) ? "c" : "c^" + std::to_string(j);
            }
            return out;
        }
        case Codec::Permutation:
            return detail::render_perm(perms[static_cast<size_t>(e)], points);
        case Codec::Opaque:
            return "e" + std::to_string(e);
    }
    return {};
}

inline Elem GroupTable::parse(const std::string& raw) const {
    std::string s = detail::strip_ws(raw);
    switch (codec) {
        case Codec::Abelian: {
            if (s.size() < 2 || s.front() != '(' || s.back() != ')')
                throw parse_error("abelian element must look like (r1,...,rk): " + raw);
            std::vector<int> r;
            std::stringstream ss(s.substr(1, s.size() - 2));
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                size_t pos = 0;
                if (tok.empty()) throw parse_error("empty coordinate in: " + raw);
                r.push_back(std::stoi(tok, &pos));
                if (pos != tok.size()) throw parse_error("bad coordinate in: " + raw);
            }
            if (r.size() != factors.size())
                throw parse_error("expected " + std::to_string(factors.size()) + " coordinates: " + raw);
            return abelian_encode(r);
        }
        case Codec::Dihedral: {
            if (s == "1" || s == "c^0") return 0;
            int eps = 0;
            size_t i = 0;
            if (i < s.size() && s[i] == 'a') {
                eps = 1;
                ++i;
                if (i < s.size() && s[i] == '*') ++i;
            }
            long long j = 0;
            if (i < s.size()) {
                if (s[i] != 'c') throw parse_error("bad dihedral element: " + raw);
                ++i;
                if (i < s.size()) {
                    if (s[i] != '^') throw parse_error("bad dihedral element: " + raw);
                    ++i;
                    size_t pos = 0;
                    j = std::stoll(s.substr(i), &pos);
                    if (pos != s.size() - i) throw parse_error("bad dihedral exponent: " + raw);
                } else {
                    j = 1;
                }
            } else if (!eps) {
                throw parse_error("bad dihedral element: " + raw);
            }
            j = ((j % rot_n) + rot_n) % rot_n;
            return static_cast<Elem>(eps * rot_n + j);
        }
        case Codec::Permutation: {
            detail::Perm p = detail::parse_perm(raw, points);
            if (alternating && !detail::perm_even(p, points))
                throw parse_error("odd permutation in alternating group: " + raw);
            std::uint32_t key = detail::perm_pack(p, points);
            for (Elem e = 0; e < order_; ++e)
                if (detail::perm_pack(perms[static_cast<size_t>(e)], points) == key) return e;
            throw parse_error("permutation not in group: " + raw);
        }
        case Codec::Opaque: {
            if (s.size() < 2 || s[0] != 'e') throw parse_error("bad element literal: " + raw);
            size_t pos = 0;
            int v = std::stoi(s.substr(1), &pos);
            if (pos != s.size() - 1 || v < 0 || v >= order_) throw parse_error("bad element index: " + raw);
            return v;
        }
    }
    throw parse_error("bad element literal: " + raw);
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

namespace detail {

inline void finish_inverses(GroupTable& G) {
    G.inv_.assign(static_cast<size_t>(G.order_), 0);
    for (Elem a = 0; a < G.order_; ++a) {
        bool found = false;
        for (Elem b = 0; b < G.order_; ++b)
            if (G.mul(a, b) == 0) {
                G.inv_[static_cast<size_t>(a)] = static_cast<std::uint16_t>(b);
                found = true;
                break;
            }
        if (!found) throw property_error("element without inverse in table for " + G.spec);
    }
}

inline GroupTable build_abelian(const std::string& spec, const std::vector<int>& factors) {
    long long n = 1;
    for (int d : factors) {
        if (d < 1) throw parse_error("cyclic factor must be positive in " + spec);
        n *= d;
        if (n > kMaxOrder) throw range_error("group order exceeds " + std::to_string(kMaxOrder) + ": " + spec);
    }
    GroupTable G;
    G.spec = spec;
    G.codec = Codec::Abelian;
    G.order_ = static_cast<int>(n);
    G.factors = factors;
    G.mul_.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (Elem a = 0; a < G.order_; ++a) {
        auto ra = G.abelian_decode(a);
        for (Elem b = 0; b < G.order_; ++b) {
            auto rb = G.abelian_decode(b);
            std::vector<int> rc(ra.size());
            for (size_t i = 0; i < ra.size(); ++i) rc[i] = (ra[i] + rb[i]) % factors[i];
            G.mul_[static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b)] =
                static_cast<std::uint16_t>(G.abelian_encode(rc));
        }
    }
    finish_inverses(G);
    return G;
}

inline GroupTable build_dihedral(const std::string& spec, int n) {
    GroupTable G;
    G.spec = spec;
    G.codec = Codec::Dihedral;
    G.rot_n = n;
    G.order_ = 2 * n;
    if (G.order_ > kMaxOrder) throw range_error("group order exceeds " + std::to_string(kMaxOrder) + ": " + spec);
    G.mul_.resize(static_cast<size_t>(G.order_) * static_cast<size_t>(G.order_));
    auto idx = [n](int eps, int j) { return eps * n + ((j % n) + n) % n; };
    for (int e1 = 0; e1 < 2; ++e1)
        for (int j1 = 0; j1 < n; ++j1)
            for (int e2 = 0; e2 < 2; ++e2)
                for (int j2 = 0; j2 < n; ++j2) {
                    // c^j a = a c^-j, so (a^e1 c^j1)(a^e2 c^j2) folds to
                    // a^(e1^e2) c^(j2 +- j1).
                    int j = e2 ? (j2 - j1) : (j1 + j2);
                    G.mul_[static_cast<size_t>(idx(e1, j1)) * static_cast<size_t>(G.order_) +
                           static_cast<size_t>(idx(e2, j2))] = static_cast<std::uint16_t>(idx(e1 ^ e2, j));
                }
    finish_inverses(G);
    return G;
}

inline GroupTable build_permutation(const std::string& spec, int n, bool alternating) {
    GroupTable G;
    G.spec = spec;
    G.codec = Codec::Permutation;
    G.points = n;
    G.alternating = alternating;
    Perm p = perm_identity(n);
    do {
        if (!alternating || perm_even(p, n)) G.perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.begin() + n));
    G.order_ = static_cast<int>(G.perms.size());
    if (G.order_ > kMaxOrder) throw range_error("group order exceeds " + std::to_string(kMaxOrder) + ": " + spec);
    std::unordered_map<std::uint32_t, Elem> index;
    index.reserve(G.perms.size() * 2);
    for (Elem e = 0; e < G.order_; ++e) index.emplace(perm_pack(G.perms[static_cast<size_t>(e)], n), e);
    G.mul_.resize(static_cast<size_t>(G.order_) * static_cast<size_t>(G.order_));
    for (Elem a = 0; a < G.order_; ++a) {
        const Perm& pa = G.perms[static_cast<size_t>(a)];
        for (Elem b = 0; b < G.order_; ++b) {
            Perm pc = perm_compose(pa, G.perms[static_cast<size_t>(b)], n);
            G.mul_[static_cast<size_t>(a) * static_cast<size_t>(G.order_) + static_cast<size_t>(b)] =
                static_cast<std::uint16_t>(index.at(perm_pack(pc, n)));
        }
    }
    finish_inverses(G);
    return G;
}

}  // namespace detail

inline GroupTable build_group(const std::string& raw) {
    std::string s = detail::strip_ws(raw);
    if (s.empty()) throw parse_error("empty group spec");
    auto parse_num = [&](size_t from) {
        size_t pos = 0;
        long long v;
        try {
            v = std::stoll(s.substr(from), &pos);
        } catch (const std::exception&) {
            throw parse_error("bad group spec: " + raw);
        }
        if (pos != s.size() - from || v <= 0) throw parse_error("bad group spec: " + raw);
        return v;
    };
    switch (s[0]) {
        case 'Z': {
            std::vector<int> factors;
            size_t i = 0;
            while (i < s.size()) {
                if (s[i] != 'Z') throw parse_error("bad group spec: " + raw);
                size_t j = i + 1, start = j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                if (j == start) throw parse_error("bad group spec: " + raw);
                long long d = std::stoll(s.substr(start, j - start));
                if (d <= 0 || d > kMaxOrder) throw range_error("cyclic factor out of range: " + raw);
                factors.push_back(static_cast<int>(d));
                if (j == s.size()) break;
                if (s[j] != 'x') throw parse_error("bad group spec: " + raw);
                i = j + 1;
                if (i >= s.size()) throw parse_error("bad group spec: " + raw);
            }
            return detail::build_abelian(s, factors);
        }
        case 'D': {
            long long ord = parse_num(1);
            if (ord % 2 != 0) throw parse_error("dihedral spec D<2n> needs an even order: " + raw);
            if (ord > kMaxOrder) throw range_error("group order exceeds " + std::to_string(kMaxOrder) + ": " + raw);
            return detail::build_dihedral(s, static_cast<int>(ord / 2));
        }
        case 'S': {
            long long n = parse_num(1);
            if (n > 8) throw parse_error("symmetric groups supported up to S8: " + raw);
            return detail::build_permutation(s, static_cast<int>(n), false);
        }
        case 'A': {
            long long n = parse_num(1);
            if (n > 8) throw parse_error("alternating groups supported up to A8: " + raw);
            return detail::build_permutation(s, static_cast<int>(n), true);
        }
        default:
            throw parse_error("bad group spec: " + raw);
    }
}

// Exhaustive table validation; meant for tests at order <= 64.
inline bool validate_table(const GroupTable& G) {
    int n = G.order();
    for (Elem a = 0; a < n; ++a) {
        if (G.mul(0, a) != a || G.mul(a, 0) != a) return false;
        if (G.mul(a, G.inv(a)) != 0 || G.mul(G.inv(a), a) != 0) return false;
    }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c)
                if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

struct SubgroupEmbedding {
    GroupTable sub;
    const GroupTable* amb = nullptr;
    std::vector<Elem> embed;       // sub index -> ambient index
    std::vector<Elem> amb_to_sub;  // ambient index -> sub index or -1

    int index_in_ambient() const { return amb->order() / sub.order(); }
    std::string display_ambient(Elem sub_elem) const { return amb->display(embed[static_cast<size_t>(sub_elem)]); }
};

inline std::vector<Elem> closure(const GroupTable& G, std::vector<Elem> gens) {
    std::vector<char> in(static_cast<size_t>(G.order()), 0);
    std::vector<Elem> set{0};
    in[0] = 1;
    for (Elem g : gens)
        if (!in[static_cast<size_t>(g)]) {
            in[static_cast<size_t>(g)] = 1;
            set.push_back(g);
        }
    for (size_t i = 0; i < set.size(); ++i)
        for (size_t j = 0; j < set.size(); ++j) {
            Elem p = G.mul(set[i], set[j]);
            if (!in[static_cast<size_t>(p)]) {
                in[static_cast<size_t>(p)] = 1;
                set.push_back(p);
            }
        }
    std::sort(set.begin(), set.end());
    return set;
}

inline SubgroupEmbedding subgroup_from_elements(const GroupTable& G, std::vector<Elem> elems) {
    std::sort(elems.begin(), elems.end());
    SubgroupEmbedding E;
    E.amb = &G;
    E.embed = elems;
    E.amb_to_sub.assign(static_cast<size_t>(G.order()), -1);
    for (size_t i = 0; i < elems.size(); ++i) E.amb_to_sub[static_cast<size_t>(elems[i])] = static_cast<Elem>(i);
    int m = static_cast<int>(elems.size());
    GroupTable& H = E.sub;
    std::string key = "sub(" + G.spec + ";";
    for (size_t i = 0; i < elems.size(); ++i) {
        if (i) key.push_back(',');
        key += std::to_string(elems[i]);
    }
    key.push_back(')');
    H.spec = key;
    H.codec = Codec::Opaque;
    H.order_ = m;
    H.mul_.resize(static_cast<size_t>(m) * static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Elem p = G.mul(elems[static_cast<size_t>(i)], elems[static_cast<size_t>(j)]);
            Elem q = E.amb_to_sub[static_cast<size_t>(p)];
            if (q < 0) throw precondition_error("element set is not closed under multiplication");
            H.mul_[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(j)] =
                static_cast<std::uint16_t>(q);
        }
    detail::finish_inverses(H);
    return E;
}

inline SubgroupEmbedding commutator_subgroup(const GroupTable& G) {
    std::vector<Elem> gens;
    for (Elem x = 0; x < G.order(); ++x)
        for (Elem y = x + 1; y < G.order(); ++y) {
            Elem c = commutator(G, x, y);
            if (c != 0) gens.push_back(c);
        }
    return subgroup_from_elements(G, closure(G, gens));
}

// Largest power of p dividing n.
inline int p_part(int n, int p) {
    int pk = 1;
    while (n % p == 0) {
        n /= p;
        pk *= p;
    }
    return pk;
}

// Sylow p-subgroup by iterated normalizer growth from a p-element. The scan
// order over element indices makes the output deterministic; start_index
// offsets the initial scan so tests can exercise several conjugate copies.
inline SubgroupEmbedding sylow_subgroup(const GroupTable& G, int p, int start_index = 0) {
    if (p < 2) throw precondition_error("sylow_subgroup needs a prime p");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw precondition_error("sylow_subgroup needs a prime p");
    int pk = p_part(G.order(), p);
    if (pk == 1) return subgroup_from_elements(G, {0});

    int n = G.order();
    Elem seed = -1;
    for (int off = 0; off < n && seed < 0; ++off) {
        Elem g = static_cast<Elem>((start_index + off) % n);
        int og = G.elem_order(g);
        if (og % p == 0) seed = G.power(g, og / p);
    }
    if (seed < 0) throw property_error("no p-element found despite p dividing the order");

    std::vector<Elem> H = closure(G, {seed});
    while (static_cast<int>(H.size()) < pk) {
        std::vector<char> inH(static_cast<size_t>(n), 0);
        for (Elem h : H) inH[static_cast<size_t>(h)] = 1;
        Elem grow = -1;
        for (Elem g = 0; g < n && grow < 0; ++g) {
            // g must normalize H.
            bool normalizes = true;
            for (Elem h : H)
                if (!inH[static_cast<size_t>(G.conj(g, h))]) {
                    normalizes = false;
                    break;
                }
            if (!normalizes) continue;
            int og = G.elem_order(g);
            int m = og;
            while (m % p == 0) m /= p;
            Elem z = G.power(g, m);  // p-part of g
            if (z != 0 && !inH[static_cast<size_t>(z)]) grow = z;
        }
        if (grow < 0) throw property_error("sylow growth stalled below the p-part");
        H.push_back(grow);
        H = closure(G, H);
    }
    return subgroup_from_elements(G, H);
}

// ---------------------------------------------------------------------------
// Isomorphism search (small orders; used by tests)
// ---------------------------------------------------------------------------

namespace detail {

inline bool extend_isomorphism(const GroupTable& A, const GroupTable& B, const std::vector<Elem>& gens,
                               const std::vector<std::pair<Elem, std::pair<Elem, Elem>>>& words, size_t k,
                               std::vector<Elem>& gen_img, const std::vector<int>& orders_b) {
    if (k == gens.size()) {
        // Derive all images from generator images via the recorded words,
        // then check the full multiplication table.
        std::vector<Elem> img(static_cast<size_t>(A.order()), -1);
        img[0] = 0;
        for (size_t i = 0; i < gens.size(); ++i) img[static_cast<size_t>(gens[i])] = gen_img[i];
        for (const auto& w : words) {
            Elem target = w.first;
            Elem u = img[static_cast<size_t>(w.second.first)];
            Elem v = img[static_cast<size_t>(w.second.second)];
            if (u < 0 || v < 0) return false;
            img[static_cast<size_t>(target)] = B.mul(u, v);
        }
        std::vector<char> hit(static_cast<size_t>(B.order()), 0);
        for (Elem a = 0; a < A.order(); ++a) {
            if (img[static_cast<size_t>(a)] < 0) return false;
            if (hit[static_cast<size_t>(img[static_cast<size_t>(a)])]) return false;
            hit[static_cast<size_t>(img[static_cast<size_t>(a)])] = 1;
        }
        for (Elem a = 0; a < A.order(); ++a)
            for (Elem b = 0; b < A.order(); ++b)
                if (img[static_cast<size_t>(A.mul(a, b))] !=
                    B.mul(img[static_cast<size_t>(a)], img[static_cast<size_t>(b)]))
                    return false;
        return true;
    }
    int want = A.elem_order(gens[k]);
    for (Elem c = 0; c < B.order(); ++c) {
        if (orders_b[static_cast<size_t>(c)] != want) continue;
        gen_img[k] = c;
        if (extend_isomorphism(A, B, gens, words, k + 1, gen_img, orders_b)) return true;
    }
    gen_img[k] = -1;
    return false;
}

}  // namespace detail

// Searches for an isomorphism A -> B; returns the element mapping if found.
inline std::optional<std::vector<Elem>> find_isomorphism(const GroupTable& A, const GroupTable& B) {
    if (A.order() != B.order()) return std::nullopt;
    std::vector<int> oa, ob;
    for (Elem e = 0; e < A.order(); ++e) oa.push_back(A.elem_order(e));
    for (Elem e = 0; e < B.order(); ++e) ob.push_back(B.elem_order(e));
    {
        auto sa = oa, sb = ob;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    // Greedy generating set; record how each element is reached as a product
    // of two already-known elements.
    std::vector<Elem> gens;
    std::vector<std::pair<Elem, std::pair<Elem, Elem>>> words;
    std::vector<char> known(static_cast<size_t>(A.order()), 0);
    known[0] = 1;
    std::vector<Elem> reach{0};
    while (static_cast<int>(reach.size()) < A.order()) {
        Elem g = -1;
        for (Elem e = 0; e < A.order(); ++e)
            if (!known[static_cast<size_t>(e)]) {
                g = e;
                break;
            }
        gens.push_back(g);
        known[static_cast<size_t>(g)] = 1;
        reach.push_back(g);
        for (size_t i = 0; i < reach.size(); ++i)
            for (size_t j = 0; j < reach.size(); ++j) {
                Elem p = A.mul(reach[i], reach[j]);
                if (!known[static_cast<size_t>(p)]) {
                    known[static_cast<size_t>(p)] = 1;
                    words.push_back({p, {reach[i], reach[j]}});
                    reach.push_back(p);
                }
            }
    }
    std::vector<Elem> gen_img(gens.size(), -1);
    if (detail::extend_isomorphism(A, B, gens, words, 0, gen_img, ob)) {
        std::vector<Elem> img(static_cast<size_t>(A.order()), -1);
        img[0] = 0;
        for (size_t i = 0; i < gens.size(); ++i) img[static_cast<size_t>(gens[i])] = gen_img[i];
        for (const auto& w : words)
            img[static_cast<size_t>(w.first)] =
                B.mul(img[static_cast<size_t>(w.second.first)], img[static_cast<size_t>(w.second.second)]);
        return img;
    }
    return std::nullopt;
}

}  // namespace schur
