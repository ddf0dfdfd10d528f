#pragma once

// Brute-force multiplier oracle: H2 over the integers via the normalized bar
// complex, invariant factors through the sparse reduction engine, class
// evaluation of kernel words, and the chain-level subgroup maps.
//
// The normalized complex has C_n free on n-tuples of non-identity elements;
// any tuple containing the identity is zero by fiat. Boundaries:
//   d2[g1|g2]    = [g2] - [g1 g2] + [g1]
//   d3[g1|g2|g3] = [g2|g3] - [g1 g2|g3] + [g1|g2 g3] - [g1|g2]
//
// Only the degree-3 boundary goes through a full reduction. Its cokernel's
// torsion equals H2 because the degree-2 kernel is a direct summand (the
// quotient embeds in the free C1) and H2 of a finite group is finite; the
// rank bookkeeping below re-checks that argument's arithmetic on every run.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "schur/group.hpp"
#include "schur/pairword.hpp"
#include "schur/smith.hpp"
#include "schur/util.hpp"

namespace schur {

inline constexpr int kDefaultOracleBound = 60;

// Normalized degree-2 chain. Keys never contain the identity and values are
// never zero; add() maintains both.
struct BarChain2 {
    std::map<std::pair<Elem, Elem>, long long> terms;

    void add(const GroupTable& G, Elem g1, Elem g2, long long c) {
        if (c == 0 || g1 == G.identity() || g2 == G.identity()) return;
        auto key = std::make_pair(g1, g2);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            it->second = checked_add(it->second, c);
            if (it->second == 0) terms.erase(it);
        }
    }

    friend bool operator==(const BarChain2&, const BarChain2&) = default;
};

inline std::map<Elem, long long> bar_d2(const GroupTable& G, const BarChain2& z) {
    std::map<Elem, long long> out;
    auto add = [&](Elem g, long long c) {
        if (g == G.identity() || c == 0) return;
        auto it = out.find(g);
        if (it == out.end()) {
            out.emplace(g, c);
        } else {
            it->second = checked_add(it->second, c);
            if (it->second == 0) out.erase(it);
        }
    };
    for (const auto& [key, c] : z.terms) {
        add(key.second, c);
        add(G.mul(key.first, key.second), -c);
        add(key.first, c);
    }
    return out;
}

inline bool is_cycle(const GroupTable& G, const BarChain2& z) { return bar_d2(G, z).empty(); }

inline BarChain2 bar_d3(const GroupTable& G, Elem g1, Elem g2, Elem g3) {
    BarChain2 out;
    out.add(G, g2, g3, 1);
    out.add(G, G.mul(g1, g2), g3, -1);
    out.add(G, g1, G.mul(g2, g3), 1);
    out.add(G, g1, g2, -1);
    return out;
}

struct MultiplierClass {
    std::vector<long long> coords;
    std::vector<long long> moduli;

    bool is_zero() const {
        for (long long c : coords)
            if (c != 0) return false;
        return true;
    }

    friend bool operator==(const MultiplierClass&, const MultiplierClass&) = default;
};

inline MultiplierClass class_add(const MultiplierClass& a, const MultiplierClass& b) {
    if (a.moduli != b.moduli) throw precondition_error("class arithmetic across different structures");
    MultiplierClass r = a;
    for (size_t i = 0; i < r.coords.size(); ++i)
        r.coords[i] = mod_floor(r.coords[i] + b.coords[i], r.moduli[i]);
    return r;
}

inline MultiplierClass class_scale(const MultiplierClass& a, long long k) {
    MultiplierClass r = a;
    for (size_t i = 0; i < r.coords.size(); ++i)
        r.coords[i] = mod_floor(mod_floor(k, r.moduli[i]) * r.coords[i], r.moduli[i]);
    return r;
}

struct MultiplierStructure {
    std::string group_spec;
    int order = 0;
    int m = 0;  // order - 1, the tuple alphabet size
    bool used_bignum = false;
    std::vector<long long> invariant_factors;       // divisor chain, every entry >= 2
    std::vector<std::vector<long long>> projector;  // per factor: dense row over tuple indices, mod factor
    std::vector<BarChain2> witness_cycles;          // per factor: a cycle projecting to that unit vector

    int tuple_index(Elem g1, Elem g2) const { return (g1 - 1) * m + (g2 - 1); }

    MultiplierClass project(const GroupTable& G, const BarChain2& z) const {
        if (G.spec != group_spec) throw precondition_error("chain belongs to a different group");
        if (!is_cycle(G, z)) throw precondition_error("projection needs a cycle");
        MultiplierClass out;
        out.moduli = invariant_factors;
        out.coords.assign(invariant_factors.size(), 0);
        for (size_t t = 0; t < invariant_factors.size(); ++t) {
            long long d = invariant_factors[t];
            long long acc = 0;
            for (const auto& [key, c] : z.terms) {
                long long p = projector[t][static_cast<size_t>(tuple_index(key.first, key.second))];
                acc = mod_floor(acc + mod_floor(c, d) * p, d);
            }
            out.coords[t] = acc;
        }
        return out;
    }
};

inline MultiplierStructure bar_h2(const GroupTable& G, int oracle_bound = kDefaultOracleBound) {
    if (G.order() > oracle_bound)
        throw range_error("group order " + std::to_string(G.order()) + " exceeds the oracle bound " +
                          std::to_string(oracle_bound));
    const int N = G.order();
    const int m = N - 1;
    const int rows_c2 = m * m;

    // Degree-3 boundary, rows indexed by 2-tuples, one column per 3-tuple.
    // Columns are visited in increasing order, so each row stays sorted.
    std::vector<std::vector<std::pair<int, long long>>> rows(static_cast<size_t>(rows_c2));
    auto index2 = [m](Elem a, Elem b) { return (a - 1) * m + (b - 1); };
    int col = 0;
    std::pair<int, long long> buf[4];
    for (Elem g1 = 1; g1 < N; ++g1)
        for (Elem g2 = 1; g2 < N; ++g2) {
            Elem g12 = G.mul(g1, g2);
            for (Elem g3 = 1; g3 < N; ++g3, ++col) {
                int n = 0;
                auto put = [&](Elem a, Elem b, long long c) {
                    if (a == 0 || b == 0) return;
                    int r = index2(a, b);
                    for (int k = 0; k < n; ++k)
                        if (buf[k].first == r) {
                            buf[k].second += c;
                            return;
                        }
                    buf[n++] = {r, c};
                };
                put(g2, g3, 1);
                put(g12, g3, -1);
                put(g1, G.mul(g2, g3), 1);
                put(g1, g2, -1);
                for (int k = 0; k < n; ++k)
                    if (buf[k].second != 0) rows[static_cast<size_t>(buf[k].first)].push_back({col, buf[k].second});
            }
        }
    RowSnfCertificates cert = row_snf_with_certificates(rows_c2, m * m * m, rows);
    if (!cert.cleared) throw property_error("degree-3 reduction left uncleared rows");

    // Degree-2 boundary rank; together the two ranks must exhaust C2, which
    // is exactly the claim that the cokernel torsion above is all of H2.
    std::vector<std::vector<std::pair<int, long long>>> d2rows(static_cast<size_t>(m));
    col = 0;
    for (Elem g1 = 1; g1 < N; ++g1)
        for (Elem g2 = 1; g2 < N; ++g2, ++col) {
            int n = 0;
            std::pair<int, long long> b2[3];
            auto put = [&](Elem g, long long c) {
                if (g == 0) return;
                for (int k = 0; k < n; ++k)
                    if (b2[k].first == g - 1) {
                        b2[k].second += c;
                        return;
                    }
                b2[n++] = {g - 1, c};
            };
            put(g2, 1);
            put(G.mul(g1, g2), -1);
            put(g1, 1);
            for (int k = 0; k < n; ++k)
                if (b2[k].second != 0) d2rows[static_cast<size_t>(b2[k].first)].push_back({col, b2[k].second});
        }
    RowSnfCertificates d2cert = row_snf_with_certificates(m, rows_c2, d2rows);
    if (d2cert.rank != m || cert.rank + d2cert.rank != rows_c2)
        throw property_error("homology rank bookkeeping failed");

    MultiplierStructure out;
    out.group_spec = G.spec;
    out.order = N;
    out.m = m;
    out.used_bignum = cert.used_bignum;
    for (size_t s = 0; s < cert.torsion_slots.size(); ++s) {
        size_t t = cert.torsion_slots[s];
        out.invariant_factors.push_back(cert.diag[t]);
        out.projector.push_back(std::move(cert.projector[s]));
        BarChain2 w;
        for (const auto& [row, val] : cert.witness[s])
            w.add(G, static_cast<Elem>(row / m + 1), static_cast<Elem>(row % m + 1), val);
        out.witness_cycles.push_back(std::move(w));
    }
    return out;
}

// Process-wide cache; structures are immutable once built and the group spec
// string is a canonical key (subgroup specs embed the ambient spec and the
// sorted element list).
inline const MultiplierStructure& oracle_structure(const GroupTable& G,
                                                   int oracle_bound = kDefaultOracleBound) {
    static std::map<std::string, std::unique_ptr<MultiplierStructure>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(G.spec);
    if (it == cache.end())
        it = cache.emplace(G.spec, std::make_unique<MultiplierStructure>(bar_h2(G, oracle_bound))).first;
    return *it->second;
}

// ---------------------------------------------------------------------------
// Surface cycles and class evaluation
// ---------------------------------------------------------------------------

// Realizes a kernel word as a 2-cycle: the relator letter sequence of the
// word contributes prefix-product tuples, and each pair donates one
// [g|g^-1] correction per inverse letter.
inline BarChain2 surface_cycle(const GroupTable& G, const PairWord& w) {
    if (!in_z(G, w)) throw precondition_error("word is not in the kernel");
    BarChain2 z;
    Elem p = G.identity();
    for (const auto& l : w) {
        Elem seq[4];
        if (l.e == 1) {
            seq[0] = l.x;
            seq[1] = l.y;
            seq[2] = G.inv(l.x);
            seq[3] = G.inv(l.y);
        } else {
            seq[0] = l.y;
            seq[1] = l.x;
            seq[2] = G.inv(l.y);
            seq[3] = G.inv(l.x);
        }
        for (Elem g : seq) {
            z.add(G, p, g, 1);
            p = G.mul(p, g);
        }
        z.add(G, l.x, G.inv(l.x), -1);
        z.add(G, l.y, G.inv(l.y), -1);
    }
    if (!is_cycle(G, z)) throw property_error("surface chain failed the cycle check");
    return z;
}

inline MultiplierClass class_of(const GroupTable& G, const PairWord& w,
                                int oracle_bound = kDefaultOracleBound) {
    const MultiplierStructure& M = oracle_structure(G, oracle_bound);
    return M.project(G, surface_cycle(G, w));
}

// ---------------------------------------------------------------------------
// Subgroup maps on chains
// ---------------------------------------------------------------------------

// Chain-level transfer along right cosets H r_i (representatives chosen by
// minimal element index): [g1|g2] goes to the sum over cosets of the H-parts
// picked up while pushing g1 then g2 past the representatives.
inline BarChain2 restriction_transfer(const SubgroupEmbedding& emb, const BarChain2& z) {
    const GroupTable& G = *emb.amb;
    const GroupTable& H = emb.sub;
    if (!is_cycle(G, z)) throw precondition_error("transfer input is not a cycle");

    int N = G.order();
    std::vector<int> coset_of(static_cast<size_t>(N), -1);
    std::vector<Elem> reps;
    for (Elem g = 0; g < N; ++g) {
        if (coset_of[static_cast<size_t>(g)] >= 0) continue;
        int idx = static_cast<int>(reps.size());
        reps.push_back(g);
        for (Elem h : emb.embed) coset_of[static_cast<size_t>(G.mul(h, g))] = idx;
    }

    auto push_past = [&](int i, Elem g, Elem& h_out) {
        Elem rg = G.mul(reps[static_cast<size_t>(i)], g);
        int j = coset_of[static_cast<size_t>(rg)];
        Elem h_amb = G.mul(rg, G.inv(reps[static_cast<size_t>(j)]));
        h_out = emb.amb_to_sub[static_cast<size_t>(h_amb)];
        if (h_out < 0) throw property_error("coset arithmetic escaped the subgroup");
        return j;
    };

    BarChain2 out;
    for (const auto& [key, c] : z.terms)
        for (int i = 0; i < static_cast<int>(reps.size()); ++i) {
            Elem h1 = 0, h2 = 0;
            int j = push_past(i, key.first, h1);
            push_past(j, key.second, h2);
            out.add(H, h1, h2, c);
        }
    if (!is_cycle(H, out)) throw property_error("transfer output is not a cycle");
    return out;
}

inline BarChain2 corestriction(const SubgroupEmbedding& emb, const BarChain2& z) {
    const GroupTable& H = emb.sub;
    if (!is_cycle(H, z)) throw precondition_error("pushforward input is not a cycle");
    BarChain2 out;
    for (const auto& [key, c] : z.terms)
        out.add(*emb.amb, emb.embed[static_cast<size_t>(key.first)],
                emb.embed[static_cast<size_t>(key.second)], c);
    if (!is_cycle(*emb.amb, out)) throw property_error("pushforward output is not a cycle");
    return out;
}

// ---------------------------------------------------------------------------
// Abelian fast path: the exterior square
// ---------------------------------------------------------------------------

// For A = Z/d_1 x ... x Z/d_k the multiplier is the direct sum over i < j of
// Z/gcd(d_i, d_j), with the alternating pairing on residue vectors as the
// class map. Summands with gcd 1 are dropped.
struct ExteriorSquare {
    struct Summand {
        int i = 0;
        int j = 0;
        long long modulus = 2;
    };
    std::vector<int> factors;
    std::vector<Summand> summands;

    std::vector<long long> moduli() const {
        std::vector<long long> ms;
        for (const auto& s : summands) ms.push_back(s.modulus);
        return ms;
    }

    MultiplierClass pairing(const std::vector<int>& x, const std::vector<int>& y) const {
        if (x.size() != factors.size() || y.size() != factors.size())
            throw precondition_error("residue vector length mismatch");
        MultiplierClass out;
        out.moduli = moduli();
        for (const auto& s : summands) {
            long long xi = x[static_cast<size_t>(s.i)], xj = x[static_cast<size_t>(s.j)];
            long long yi = y[static_cast<size_t>(s.i)], yj = y[static_cast<size_t>(s.j)];
            out.coords.push_back(mod_floor(xi * yj - xj * yi, s.modulus));
        }
        return out;
    }
};

inline ExteriorSquare exterior_square(const std::vector<int>& factors) {
    ExteriorSquare E;
    E.factors = factors;
    for (int i = 0; i < static_cast<int>(factors.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(factors.size()); ++j) {
            long long g = std::gcd(static_cast<long long>(factors[static_cast<size_t>(i)]),
                                   static_cast<long long>(factors[static_cast<size_t>(j)]));
            if (g >= 2) E.summands.push_back({i, j, g});
        }
    return E;
}

inline ExteriorSquare exterior_square(const GroupTable& A) {
    if (A.codec != Codec::Abelian) throw precondition_error("exterior square needs an abelian group");
    return exterior_square(A.factors);
}

// Canonical divisor-chain form of a finite abelian group given by arbitrary
// cyclic factors; used to compare structures computed by different routes.
inline std::vector<long long> canonical_chain(std::vector<long long> moduli) {
    std::map<long long, std::vector<long long>> by_prime;  // prime -> prime powers, descending
    for (long long v : moduli) {
        if (v < 1) throw precondition_error("moduli must be positive");
        for (long long p = 2; p * p <= v; ++p)
            if (v % p == 0) {
                long long q = 1;
                while (v % p == 0) {
                    v /= p;
                    q *= p;
                }
                by_prime[p].push_back(q);
            }
        if (v > 1) by_prime[v].push_back(v);
    }
    size_t len = 0;
    for (auto& [p, qs] : by_prime) {
        std::sort(qs.begin(), qs.end(), std::greater<>());
        len = std::max(len, qs.size());
    }
    std::vector<long long> chain(len, 1);
    for (auto& [p, qs] : by_prime)
        for (size_t t = 0; t < qs.size(); ++t) chain[t] *= qs[t];  // chain[0] is the largest
    std::reverse(chain.begin(), chain.end());
    while (!chain.empty() && chain.front() == 1) chain.erase(chain.begin());
    return chain;
}

}  // namespace schur
