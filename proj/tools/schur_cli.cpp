// Command-line front end: multiplier structures, word classification with
// optional trace files, extendability certificates, and a seeded self-test
// battery. All output is deterministic given the flags and the seed; the
// only environment hook is SCHUR_VERBOSE, which adds notes on stderr.
//
// Exit codes: 0 ok, 1 parse, 2 precondition, 3 range, 4 property failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "schur/classify.hpp"
#include "schur/extend.hpp"
#include "schur/group.hpp"
#include "schur/homology.hpp"
#include "schur/io.hpp"
#include "schur/pairword.hpp"
#include "schur/util.hpp"

namespace {

using namespace schur;

struct Config {
    std::string group;
    std::string word_path;
    std::string method = "auto";
    std::string trace_path;
    std::string out_path;
    std::uint64_t seed = kDefaultSeed;
    int iters = 200;
    int oracle_bound = kDefaultOracleBound;
};

bool verbose() {
    const char* v = std::getenv("SCHUR_VERBOSE");
    return v && *v && std::string(v) != "0";
}

std::string factors_line(const std::vector<long long>& fs) {
    std::string out;
    for (long long d : fs) {
        if (d <= 1) continue;
        if (!out.empty()) out += " x ";
        out += "Z/" + std::to_string(d);
    }
    return out.empty() ? "trivial" : out;
}

std::string coords_line(const MultiplierClass& z) {
    if (z.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < z.coords.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(z.coords[i]);
    }
    if (z.moduli.size() == 1 && std::gcd(z.coords[0], z.moduli[0]) == 1) out += " (generator)";
    return out;
}

// ---------------------------------------------------------------------------
// multiplier
// ---------------------------------------------------------------------------

int cmd_multiplier(const Config& cfg) {
    GroupTable G = build_group(cfg.group);
    std::vector<long long> fs;
    std::string how;
    if (G.is_abelian()) {
        fs = canonical_chain(exterior_square(G).moduli());
        how = "exterior";
    } else if (G.order() <= cfg.oracle_bound) {
        fs = oracle_structure(G, cfg.oracle_bound).invariant_factors;
        how = "bar";
    } else {
        // Beyond the oracle: the restriction to Sylow subgroups is injective,
        // so trivial Sylow multipliers force a trivial multiplier. Nonzero
        // components only give bounds, which is not enough to print. Cyclic
        // Sylows are trivial by structure; non-cyclic abelian ones are never
        // trivial, because two independent generators pair nontrivially.
        for (long long p : detail::prime_divisors(G.order())) {
            SubgroupEmbedding S = sylow_subgroup(G, static_cast<int>(p));
            const GroupTable& H = S.sub;
            bool cyclic = false;
            for (Elem g = 0; g < H.order() && !cyclic; ++g) cyclic = H.elem_order(g) == H.order();
            bool trivial;
            if (cyclic) {
                trivial = true;
            } else if (H.is_abelian()) {
                trivial = false;
            } else if (H.order() <= cfg.oracle_bound) {
                trivial = oracle_structure(H, cfg.oracle_bound).invariant_factors.empty();
            } else {
                throw range_error("the Sylow " + std::to_string(p) +
                                  "-subgroup exceeds the oracle bound; raise --oracle-bound");
            }
            if (!trivial)
                throw range_error("a nonzero Sylow " + std::to_string(p) +
                                  "-component only bounds the multiplier; raise --oracle-bound");
        }
        how = "sylow";
    }
    std::cout << factors_line(fs) << "\n";
    std::cout << "method: " << how << "\n";
    if (!cfg.out_path.empty())
        save_json_file(cfg.out_path, Json{{"group", G.spec}, {"factors", fs}, {"method", how}});
    return 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

GroupTable group_for_word_file(const Config& cfg, const Json& j) {
    std::string spec = cfg.group.empty() ? detail::need_string(j, "group") : cfg.group;
    return build_group(spec);
}

int report_not_in_kernel(const GroupTable& G, const PairWord& w) {
    std::cerr << "word is not in the kernel: the commutator product is " << G.display(commutator_product(G, w))
              << "\n";
    return 2;
}

int cmd_classify(const Config& cfg) {
    Json j = load_json_file(cfg.word_path);
    GroupTable G = group_for_word_file(cfg, j);
    PairWord w = word_from_json(G, j);
    if (!in_z(G, w)) return report_not_in_kernel(G, w);

    ClassifyOptions opt;
    opt.oracle_bound = cfg.oracle_bound;
    ClassificationResult r;
    if (cfg.method == "auto") {
        r = classify(G, w, opt);
    } else if (cfg.method == "oracle") {
        r.klass = class_of(G, w, cfg.oracle_bound);
        r.method = Method::Oracle;
    } else if (cfg.method == "abelian") {
        r = classify_abelian(G, w, cfg.oracle_bound);
    } else if (cfg.method == "dihedral") {
        r = classify_dihedral(G, w);
    } else if (cfg.method == "symmetric") {
        r = classify_symmetric(G, w, cfg.oracle_bound);
    } else if (cfg.method == "sylow") {
        r = classify_via_sylow(G, w, cfg.oracle_bound);
    } else {
        throw parse_error("unknown method: " + cfg.method);
    }

    if (r.reference_basis || r.sylow_components.empty()) {
        std::cout << coords_line(r.klass) << "\n";
    } else {
        for (const SylowComponent& c : r.sylow_components)
            std::cout << "p" << c.prime << ": " << coords_line(c.component) << "\n";
    }
    std::cout << "method: " << method_name(r.method) << "\n";
    if (verbose() && !r.notes.empty()) std::cerr << r.notes << "\n";

    if (!cfg.trace_path.empty()) save_json_file(cfg.trace_path, trace_to_json(G, r.trace));
    if (!cfg.out_path.empty()) {
        Json comps = Json::array();
        for (const SylowComponent& c : r.sylow_components)
            comps.push_back({{"prime", c.prime},
                             {"subgroup", c.subgroup_spec},
                             {"coords", c.component.coords},
                             {"moduli", c.component.moduli}});
        save_json_file(cfg.out_path, Json{{"group", G.spec},
                                          {"coords", r.klass.coords},
                                          {"moduli", r.klass.moduli},
                                          {"method", method_name(r.method)},
                                          {"reference_basis", r.reference_basis},
                                          {"components", std::move(comps)},
                                          {"notes", r.notes}});
    }
    return 0;
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

// Splits a word into genus-one blocks when a reduction lands on a word of
// entrywise-commuting positive letters.
ExtensionCertificate block_certificate(const GroupTable& G, const PairWord& w, const RewriteTrace& tr) {
    PairWord norm = replay_trace(G, w, tr);
    ExtensionCertificate c;
    c.group_spec = G.spec;
    c.provenance = tr;
    for (const auto& l : norm) {
        GenusOnePiece p = detail::make_piece(G, l.x, l.y);
        if (!p.commuting || l.e != 1)
            throw precondition_error("word does not reduce to commuting genus-one blocks");
        c.recipes.push_back(detail::make_recipe(G, p));
        c.pieces.push_back(std::move(p));
    }
    return c;
}

int cmd_certify(const Config& cfg) {
    Json j = load_json_file(cfg.word_path);
    GroupTable G = group_for_word_file(cfg, j);
    PairWord w = word_from_json(G, j);
    if (!in_z(G, w)) return report_not_in_kernel(G, w);

    ExtensionCertificate c;
    if (G.codec == Codec::Dihedral) {
        c = dihedral_reduction_certificate(G, w);
    } else {
        // The classifier trace is tried first: its normal form is a power of
        // a commuting generator for the covered families. The fallback only
        // normalizes the exponents, which settles every abelian word and any
        // word whose letters already commute entrywise.
        try {
            ClassifyOptions opt;
            opt.oracle_bound = cfg.oracle_bound;
            c = block_certificate(G, w, classify(G, w, opt).trace);
        } catch (const std::exception&) {
            RewriteTrace tr;
            PairWord v = w;
            for (size_t i = 0; i < v.size(); ++i)
                if (v[i].e == -1)
                    detail::log_step(G, v, tr, Rule::R2, static_cast<int>(i), {}, Dir::Backward);
            c = block_certificate(G, w, tr);
        }
    }

    CertificateReport rep = validate_certificate(G, c, w, cfg.oracle_bound);
    if (!rep.pass) throw property_error("produced certificate failed validation: " + rep.detail);

    std::cout << "blocks: " << c.pieces.size() << "\n";
    for (size_t i = 0; i < c.pieces.size(); ++i)
        std::cout << "block " << i << ": g=" << G.display(c.pieces[i].g) << " k=" << G.display(c.pieces[i].k)
                  << " rotation_order=" << c.recipes[i].rotation_order << "\n";
    std::cout << "validated: ok\n";
    if (!cfg.out_path.empty()) save_json_file(cfg.out_path, certificate_to_json(G, c));
    return 0;
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

Elem random_elem(const GroupTable& G, Rng& rng) {
    return static_cast<Elem>(rng.below(static_cast<std::uint64_t>(G.order())));
}

// Greedy shrink: drop letters while the word stays in the kernel and the
// failure predicate keeps firing.
template <class Fails>
PairWord shrink_word(const GroupTable& G, PairWord w, const Fails& fails) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < w.size(); ++i) {
            PairWord cand = w;
            cand.erase(cand.begin() + static_cast<long>(i));
            if (in_z(G, cand) && fails(cand)) {
                w = std::move(cand);
                changed = true;
                break;
            }
        }
    }
    return w;
}

void print_reproducer(const GroupTable& G, const std::string& what, const PairWord& w, const Json& extra) {
    Json repro{{"property", what}, {"word", word_to_json(G, w)}};
    for (const auto& [k, v] : extra.items()) repro[k] = v;
    std::cout << "FAIL " << G.spec << ": " << what << "\n";
    std::cout << "reproducer: " << repro.dump() << "\n";
}

int battery_for_group(const GroupTable& G, std::uint64_t seed, int iters, int bound) {
    Rng rng(seed ^ fnv1a(G.spec));
    ZWordSampler samp(G);

    struct TransferTarget {
        SubgroupEmbedding emb;
        long long index;
    };
    std::vector<TransferTarget> transfers;
    for (long long p : detail::prime_divisors(G.order())) {
        SubgroupEmbedding emb = sylow_subgroup(G, static_cast<int>(p));
        long long index = emb.index_in_ambient();
        transfers.push_back({std::move(emb), index});
    }

    const Rule all_rules[] = {Rule::R1, Rule::R2, Rule::R3,  Rule::R4,   Rule::R5,    Rule::R6, Rule::R7,
                              Rule::R8, Rule::R9, Rule::R10, Rule::R11,  Rule::Swap,  Rule::Cancel};

    for (int t = 0; t < iters; ++t) {
        PairWord w = samp.sample(rng, rng.below_int(4));
        MultiplierClass zw = class_of(G, w, bound);

        // One random applicable rewrite must not move the class.
        for (int tries = 0; tries < 40; ++tries) {
            Rule rule = all_rules[rng.below_int(13)];
            Dir dir = rng.below_int(2) ? Dir::Forward : Dir::Backward;
            int pos = rng.below_int(static_cast<int>(w.size()) + 1);
            RuleParams ps;
            for (int i = 0; i < 4; ++i) ps.elems.push_back(random_elem(G, rng));
            ps.ints = {rng.below_int(7) - 3, rng.below_int(7) - 3};
            PairWord out;
            try {
                out = apply_relation(G, w, rule, pos, ps, dir).first;
            } catch (const precondition_error&) {
                continue;
            }
            if (!(class_of(G, out, bound) == zw)) {
                auto fails = [&](const PairWord& v) {
                    try {
                        PairWord r = apply_relation(G, v, rule, pos, ps, dir).first;
                        return !(class_of(G, r, bound) == class_of(G, v, bound));
                    } catch (const std::exception&) {
                        return false;
                    }
                };
                PairWord small = shrink_word(G, w, fails);
                print_reproducer(G, "rule application moved the class", small,
                                 Json{{"rule", rule_name(rule)},
                                      {"pos", pos},
                                      {"dir", dir == Dir::Forward ? "fwd" : "bwd"}});
                return 4;
            }
            break;
        }

        // The dispatcher must agree with the oracle, and in test mode every
        // applicable strategy must agree with the dispatcher.
        ClassifyOptions opt;
        opt.oracle_bound = bound;
        opt.test_mode = true;
        bool agreed;
        try {
            ClassificationResult r = classify(G, w, opt);
            agreed = !r.reference_basis || r.klass == zw;
        } catch (const property_error&) {
            agreed = false;
        }
        if (!agreed) {
            auto fails = [&](const PairWord& v) {
                try {
                    ClassificationResult r = classify(G, v, opt);
                    return r.reference_basis && !(r.klass == class_of(G, v, bound));
                } catch (const property_error&) {
                    return true;
                } catch (const std::exception&) {
                    return false;
                }
            };
            print_reproducer(G, "classifier disagrees with the oracle", shrink_word(G, w, fails), Json::object());
            return 4;
        }

        // Transfer composition: cor(res(z)) = [G:H] * z for every Sylow H.
        BarChain2 z = surface_cycle(G, w);
        for (const TransferTarget& tt : transfers) {
            MultiplierClass back =
                oracle_structure(G, bound).project(G, corestriction(tt.emb, restriction_transfer(tt.emb, z)));
            if (!(back == class_scale(zw, tt.index))) {
                print_reproducer(G, "transfer composition broke", w,
                                 Json{{"subgroup", tt.emb.sub.spec}, {"index", tt.index}});
                return 4;
            }
        }
    }
    std::cout << "battery " << G.spec << ": ok (" << iters << " iterations)\n";
    return 0;
}

int cmd_selftest(const Config& cfg) {
    if (cfg.iters == 0) {
        std::cout << "warning: 0 iterations requested, nothing checked (vacuous pass)\n";
        return 0;
    }

    // Golden structures, sorted by spec.
    struct Golden {
        const char* spec;
        std::vector<long long> want;
    };
    const std::vector<Golden> table = {
        {"A4", {2}},  {"D10", {}},    {"D12", {2}}, {"D4", {2}}, {"D6", {}},  {"D8", {2}}, {"S3", {}},
        {"S4", {2}},  {"Z10", {}},    {"Z11", {}},  {"Z12", {}}, {"Z2", {}},  {"Z2xZ2", {2}},
        {"Z3", {}},   {"Z4", {}},     {"Z5", {}},   {"Z6", {}},  {"Z7", {}},  {"Z8", {}},  {"Z9", {}},
    };
    for (const Golden& g : table) {
        GroupTable G = build_group(g.spec);
        std::vector<long long> got = oracle_structure(G, cfg.oracle_bound).invariant_factors;
        if (got != g.want) {
            std::cout << "FAIL " << g.spec << ": golden structure mismatch\n";
            std::cout << "reproducer: "
                      << Json{{"group", g.spec}, {"expected", g.want}, {"got", got}}.dump() << "\n";
            return 4;
        }
        std::cout << "golden " << g.spec << ": " << factors_line(got) << "\n";
    }

    for (const char* spec : {"A4", "D12", "D8", "S4", "Z2xZ2", "Z8"}) {
        int rc = battery_for_group(build_group(spec), cfg.seed, cfg.iters, cfg.oracle_bound);
        if (rc != 0) return rc;
    }
    std::cout << "selftest passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiplier classification and extendability toolkit"};
    app.require_subcommand(1);
    Config cfg;

    CLI::App* mult = app.add_subcommand("multiplier", "print the multiplier structure of a group");
    mult->add_option("--group", cfg.group, "group spec, e.g. D8 or Z2xZ4")->required();
    mult->add_option("--oracle-bound", cfg.oracle_bound, "largest order the bar resolution handles");
    mult->add_option("--out", cfg.out_path, "write the structure as JSON");

    CLI::App* cls = app.add_subcommand("classify", "classify a kernel word in the multiplier");
    cls->add_option("--group", cfg.group, "group spec; defaults to the word file's group");
    cls->add_option("--word", cfg.word_path, "word file (JSON)")->required();
    cls->add_option("--method", cfg.method, "auto|oracle|abelian|dihedral|symmetric|sylow");
    cls->add_option("--trace", cfg.trace_path, "write the rewrite trace as JSON");
    cls->add_option("--oracle-bound", cfg.oracle_bound, "largest order the bar resolution handles");
    cls->add_option("--out", cfg.out_path, "write the result as JSON");

    CLI::App* cert = app.add_subcommand("certify", "emit an extendability certificate for a kernel word");
    cert->add_option("--group", cfg.group, "group spec; defaults to the word file's group");
    cert->add_option("--word", cfg.word_path, "word file (JSON)")->required();
    cert->add_option("--oracle-bound", cfg.oracle_bound, "largest order the bar resolution handles");
    cert->add_option("--out", cfg.out_path, "write the certificate as JSON");

    CLI::App* self = app.add_subcommand("selftest", "run the golden table and the seeded property battery");
    self->add_option("--seed", cfg.seed, "battery seed");
    self->add_option("--iters", cfg.iters, "iterations per group (0 skips every check)")
        ->check(CLI::NonNegativeNumber);
    self->add_option("--oracle-bound", cfg.oracle_bound, "largest order the bar resolution handles")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (mult->parsed()) return cmd_multiplier(cfg);
        if (cls->parsed()) return cmd_classify(cfg);
        if (cert->parsed()) return cmd_certify(cfg);
        if (self->parsed()) return cmd_selftest(cfg);
        return 1;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const precondition_error& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 2;
    } catch (const range_error& e) {
        std::cerr << "out of range: " << e.what() << "\n";
        return 3;
    } catch (const property_error& e) {
        std::cerr << "property failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
