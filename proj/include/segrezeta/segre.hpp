#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "segrezeta/chowring.hpp"
#include "segrezeta/errors.hpp"
#include "segrezeta/groebner.hpp"
#include "segrezeta/multipoly.hpp"

namespace segrezeta {

/// Genericity protocol knobs. Every point count is confirmed over a second
/// prime; disagreements retry with fresh randomness, never pass silently.
struct SegreOptions {
    std::uint64_t seed = 0;
    std::uint64_t prime = 2147483647ULL;
    int retries = 5;
    bool allow_full_ambient = false;
};

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
    // splitmix64 over the pair
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// A product of projective spaces together with its coordinate blocks.
struct ProjectiveAmbient {
    AmbientSpec spec;
    VarBlocksPtr blocks;

    ProjectiveAmbient() = default;
    ProjectiveAmbient(AmbientSpec s, VarBlocksPtr b)
        : spec(std::move(s)), blocks(std::move(b)) {
        if (spec.factors() != blocks->block_count())
            throw StructuralError("ProjectiveAmbient: factor/block mismatch");
        for (int f = 0; f < spec.factors(); ++f)
            if (static_cast<int>(blocks->blocks[f].size()) !=
                spec.factor_dims[f] + 1)
                throw StructuralError(
                    "ProjectiveAmbient: block size must be dim+1");
    }

    static ProjectiveAmbient proj(int n, const std::string& stem = "x") {
        std::vector<std::string> vars;
        for (int i = 0; i <= n; ++i) vars.push_back(stem + std::to_string(i));
        return ProjectiveAmbient(AmbientSpec::proj(n), make_blocks({vars}));
    }
    static ProjectiveAmbient product(int n, int m) {
        std::vector<std::string> xs, ys;
        for (int i = 0; i <= n; ++i) xs.push_back("x" + std::to_string(i));
        for (int i = 0; i <= m; ++i) ys.push_back("y" + std::to_string(i));
        return ProjectiveAmbient(AmbientSpec::product(n, m),
                                 make_blocks({xs, ys}));
    }
};

/// Closure-of-graph data for the rational map defined by equigenerated forms.
struct GraphData {
    IdealHandle graph_ideal; // in ambient blocks + aux block u_0..u_r
    Multidegree common_degree;
    int generator_count = 0; // r + 1
    VarBlocksPtr graph_blocks;
};

/// Coefficients of [Gamma] in the product ambient, indexed by the exponent
/// split (p_1..p_k, c).
struct MultidegreeVector {
    std::map<std::vector<int>, long long> entries;

    bool operator==(const MultidegreeVector& o) const {
        return entries == o.entries;
    }
    bool operator!=(const MultidegreeVector& o) const { return !(*this == o); }
};

/// Replace generators by all monomial multiples reaching the componentwise
/// max degree; the subscheme is unchanged. Duplicate forms are pruned.
inline std::pair<std::vector<MultiPoly>, Multidegree> equigenerate(
    const std::vector<std::pair<MultiPoly, Multidegree>>& gens,
    const VarBlocksPtr& blocks) {
    std::vector<std::pair<const MultiPoly*, Multidegree>> live;
    for (const auto& [g, d] : gens) {
        if (g.is_zero()) continue;
        Multidegree actual = multidegree_of(g);
        if (actual != d)
            throw StructuralError("equigenerate: generator has degree " +
                                  actual.str() + ", declared " + d.str());
        live.push_back({&g, d});
    }
    if (live.empty())
        throw StructuralError("equigenerate: no nonzero generators");
    Multidegree dmax = live[0].second;
    for (const auto& [g, d] : live)
        for (size_t i = 0; i < dmax.degrees.size(); ++i)
            dmax.degrees[i] = std::max(dmax.degrees[i], d.degrees[i]);
    std::vector<MultiPoly> forms;
    for (const auto& [g, d] : live) {
        Multidegree gap = dmax;
        for (size_t i = 0; i < gap.degrees.size(); ++i)
            gap.degrees[i] -= d.degrees[i];
        Scalar one = Scalar::one_like(g->any_coeff());
        for (const auto& m : monomials_of_multidegree(*blocks, gap)) {
            MultiPoly f = *g * MultiPoly::monomial(blocks, m, one);
            MultiPoly fm = f.monic();
            bool dup = false;
            for (const auto& prev : forms)
                if (prev.monic() == fm) { dup = true; break; }
            if (!dup) forms.push_back(std::move(f));
        }
    }
    return {std::move(forms), dmax};
}

/// Ideal of the closure of the graph of (F_0 : ... : F_r): the 2x2 minors of
/// the matrix with rows (u_j) and (F_j), saturated by (F_0,...,F_r).
inline GraphData graph_closure(const std::vector<MultiPoly>& forms,
                               const ProjectiveAmbient& ambient) {
    std::vector<const MultiPoly*> nz;
    for (const auto& f : forms)
        if (!f.is_zero()) nz.push_back(&f);
    if (nz.empty()) throw ZeroMapError("graph_closure: all forms are zero");
    Multidegree d = multidegree_of(*nz[0]);
    for (const auto* f : nz)
        if (multidegree_of(*f) != d)
            throw StructuralError("graph_closure: forms of unequal degree");
    int r = static_cast<int>(nz.size()) - 1;
    std::vector<std::string> uvars;
    for (int j = 0; j <= r; ++j) uvars.push_back("u" + std::to_string(j));
    auto nb = ambient.blocks->blocks;
    nb.push_back(uvars);
    VarBlocksPtr gb = make_blocks(std::move(nb));

    Scalar one = Scalar::one_like(nz[0]->any_coeff());
    std::vector<MultiPoly> F, U;
    for (int j = 0; j <= r; ++j) {
        F.push_back(transport(*nz[j], gb));
        U.push_back(MultiPoly::variable(gb, *gb->find(uvars[j]), one));
    }
    std::vector<MultiPoly> minors;
    for (int i = 0; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j)
            minors.push_back(U[i] * F[j] - U[j] * F[i]);

    GraphData out;
    out.common_degree = d;
    out.generator_count = r + 1;
    out.graph_blocks = gb;
    IdealHandle raw(gb, std::move(minors));
    if (raw.generators.empty()) {
        out.graph_ideal = IdealHandle(gb, {}); // r = 0: graph is Y x P^0
    } else {
        out.graph_ideal = saturate(raw, IdealHandle(gb, F));
    }
    return out;
}

namespace detail {

inline MultiPoly random_linear_in_block(const VarBlocksPtr& blocks, int block,
                                        std::mt19937_64& rng, std::uint64_t p) {
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    MultiPoly f(blocks);
    int off = blocks->block_offset(block);
    int n = static_cast<int>(blocks->blocks[block].size());
    for (int i = 0; i < n; ++i) {
        Exponents e(blocks->total_vars(), 0);
        e[off + i] = 1;
        f.add_term(e, Scalar::residue(static_cast<std::int64_t>(dist(rng)), p));
    }
    if (f.is_zero()) {
        Exponents e(blocks->total_vars(), 0);
        e[off] = 1;
        f.add_term(e, Scalar::residue(1, p));
    }
    return f;
}

/// Slice the graph by random hyperplanes, pass to a random affine chart per
/// block, and return the quotient length. nullopt marks a genericity miss.
inline std::optional<long long> slice_count(const IdealHandle& graph,
                                            const std::vector<int>& cuts,
                                            std::mt19937_64& rng,
                                            std::uint64_t p) {
    const VarBlocksPtr& blocks = graph.blocks;
    std::vector<MultiPoly> gens = graph.generators;
    for (int b = 0; b < blocks->block_count(); ++b)
        for (int k = 0; k < cuts[b]; ++k)
            gens.push_back(random_linear_in_block(blocks, b, rng, p));
    // Random affine chart per factor: a generic linear form set to 1. This
    // both dehomogenizes and removes the irrelevant loci.
    Scalar one = Scalar::residue(1, p);
    for (int b = 0; b < blocks->block_count(); ++b) {
        MultiPoly chart = random_linear_in_block(blocks, b, rng, p) -
                          MultiPoly::constant(blocks, one);
        gens.push_back(std::move(chart));
    }
    IdealHandle sliced(blocks, std::move(gens));
    if (!is_zero_dimensional(sliced)) return std::nullopt;
    return quotient_length(sliced);
}

struct GraphPipeline {
    std::uint64_t prime;
    GraphData graph;
};

/// Reduce generators mod p, equigenerate, and build the saturated graph.
inline GraphPipeline build_graph(
    const std::vector<std::pair<MultiPoly, Multidegree>>& gens,
    const ProjectiveAmbient& ambient, std::uint64_t p) {
    std::vector<std::pair<MultiPoly, Multidegree>> red;
    for (const auto& [g, d] : gens) {
        if (g.is_zero()) continue;
        MultiPoly gp = g.reduce_mod(p);
        if (gp.is_zero())
            throw GenericityExhaustedError(
                "prime " + std::to_string(p) + " kills a generator");
        red.push_back({std::move(gp), d});
    }
    auto [forms, d] = equigenerate(red, ambient.blocks);
    GraphPipeline out;
    out.prime = p;
    out.graph = graph_closure(forms, ambient);
    return out;
}

} // namespace detail

/// Full multidegree of the graph closure by slicing and point counting,
/// deterministic given the seed once genericity retries succeed.
inline MultidegreeVector multidegree_class(const GraphData& G,
                                           const ProjectiveAmbient& ambient,
                                           const SegreOptions& opts) {
    int r = G.generator_count - 1;
    int k = ambient.spec.factors();
    MultidegreeVector out;
    std::vector<std::vector<int>> splits;
    {
        std::vector<int> cur(k + 1, 0);
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == k) {
                if (left <= r) {
                    cur[k] = left;
                    splits.push_back(cur);
                }
                return;
            }
            int cap = std::min(left, ambient.spec.factor_dims[pos]);
            for (int v = 0; v <= cap; ++v) {
                cur[pos] = v;
                self(self, pos + 1, left - v);
            }
            cur[pos] = 0;
        };
        rec(rec, 0, r);
    }

    std::uint64_t tag = 0;
    for (const auto& split : splits) {
        std::vector<int> cuts(k + 1);
        for (int b = 0; b < k; ++b)
            cuts[b] = ambient.spec.factor_dims[b] - split[b];
        cuts[k] = r - split[k];
        long long value = -1;
        std::string log;
        for (int attempt = 0; attempt <= opts.retries; ++attempt) {
            std::mt19937_64 rng(
                derive_seed(opts.seed, tag * 131 + static_cast<std::uint64_t>(attempt)));
            auto c1 = detail::slice_count(G.graph_ideal, cuts, rng, opts.prime);
            if (!c1) {
                log += " attempt " + std::to_string(attempt) + ": not 0-dim;";
                continue;
            }
            value = *c1;
            break;
        }
        if (value < 0)
            throw GenericityExhaustedError(
                "multidegree_class: slicing failed for split after " +
                std::to_string(opts.retries + 1) + " attempts:" + log);
        if (value != 0) out.entries[split] = value;
        ++tag;
    }
    return out;
}

/// Projective degrees g_i from the multidegree of a single-factor graph.
inline std::vector<long long> projective_degrees(const MultidegreeVector& md,
                                                 int n, int r) {
    std::vector<long long> g(static_cast<size_t>(n) + 1, 0);
    for (int i = 0; i <= std::min(n, r); ++i) {
        auto it = md.entries.find({i, r - i});
        if (it != md.entries.end()) g[static_cast<size_t>(i)] = it->second;
    }
    return g;
}

namespace detail {

/// Exceptional-divisor series in the truncated ring of ambient x P^r:
/// pushforward along the u-factor of sum_{k>=1} (-1)^{k-1} eps^k [Gamma].
inline ChowClass eseries_pushforward(const MultidegreeVector& md,
                                     const Multidegree& d,
                                     const AmbientSpec& base, int r) {
    AmbientSpec big = base.with_factor(r, "u");
    ChowClass gamma(big);
    for (const auto& [split, v] : md.entries) gamma.add_term(split, v);
    ChowClass eps(big);
    for (int f = 0; f < base.factors(); ++f) {
        std::vector<int> e(big.factors(), 0);
        e[f] = 1;
        eps.add_term(e, d.degrees[f]);
    }
    {
        std::vector<int> e(big.factors(), 0);
        e[base.factors()] = 1;
        eps.add_term(e, -1);
    }
    ChowClass series = ChowClass::zero(big);
    ChowClass pw = ChowClass::one(big);
    for (int k = 1; k <= big.total_dim(); ++k) {
        pw = pw * eps;
        if (pw.is_zero()) break;
        series = (k % 2 == 1) ? series + pw : series - pw;
    }
    return coefficient_extract(series * gamma, base.factors(), r);
}

} // namespace detail

/// Pushforward of the Segre class of the subscheme defined by I, by the
/// graph-closure method with the two-prime genericity protocol.
inline ChowClass segre_class(
    const std::vector<std::pair<MultiPoly, Multidegree>>& gens,
    const ProjectiveAmbient& ambient, const SegreOptions& opts = {}) {
    bool any_nonzero = false;
    for (const auto& [g, d] : gens)
        if (!g.is_zero()) {
            any_nonzero = true;
            Multidegree actual = multidegree_of(g);
            if (actual != d)
                throw StructuralError("segre_class: generator degree " +
                                      actual.str() + " vs declared " + d.str());
        }
    if (!any_nonzero) {
        if (opts.allow_full_ambient) return ChowClass::one(ambient.spec);
        throw FullAmbientError(
            "segre_class: the zero ideal defines the full ambient; "
            "s(Y,Y) = [Y] is only returned under an explicit flag");
    }

    std::uint64_t p2 = prime_below(opts.prime);
    std::string mismatch_log;
    for (int attempt = 0; attempt <= opts.retries; ++attempt) {
        SegreOptions o1 = opts;
        o1.seed = derive_seed(opts.seed, 7001 + static_cast<std::uint64_t>(attempt));
        SegreOptions o2 = o1;
        o2.prime = p2;
        o2.seed = derive_seed(opts.seed, 9001 + static_cast<std::uint64_t>(attempt));

        auto run = [&](const SegreOptions& o) -> std::pair<bool, ChowClass> {
            // Emptiness: saturate by each factor's irrelevant ideal.
            std::vector<MultiPoly> red;
            for (const auto& [g, d] : gens)
                if (!g.is_zero()) red.push_back(g.reduce_mod(o.prime));
            IdealHandle I(ambient.blocks, red);
            Scalar one = Scalar::residue(1, o.prime);
            IdealHandle sat = I;
            for (int b = 0; b < ambient.blocks->block_count(); ++b) {
                std::vector<MultiPoly> irr;
                int off = ambient.blocks->block_offset(b);
                for (size_t i = 0; i < ambient.blocks->blocks[b].size(); ++i)
                    irr.push_back(MultiPoly::variable(
                        ambient.blocks, off + static_cast<int>(i), one));
                sat = saturate(sat, IdealHandle(ambient.blocks, irr));
            }
            if (sat.is_unit_ideal())
                return {true, ChowClass::zero(ambient.spec)};

            std::vector<std::pair<MultiPoly, Multidegree>> gpairs;
            for (const auto& [g, d] : gens)
                if (!g.is_zero()) gpairs.push_back({g, d});
            detail::GraphPipeline pipe =
                detail::build_graph(gpairs, ambient, o.prime);
            MultidegreeVector md =
                multidegree_class(pipe.graph, ambient, o);
            return {false,
                    detail::eseries_pushforward(md, pipe.graph.common_degree,
                                                ambient.spec,
                                                pipe.graph.generator_count - 1)};
        };

        auto [empty1, c1] = run(o1);
        auto [empty2, c2] = run(o2);
        if (empty1 == empty2 && c1 == c2) return c1;
        mismatch_log += " attempt " + std::to_string(attempt) +
                        ": cross-prime disagreement;";
    }
    throw GenericityExhaustedError(
        "segre_class: cross-prime confirmation failed after " +
        std::to_string(opts.retries + 1) + " attempts:" + mismatch_log);
}

/// Single-factor inversion formula:
/// i_* s(Z,P^n) = 1 - sum_i g_i H^i (1+dH)^{-(i+1)}.
/// Kept strictly as a cross-check of segre_class.
inline ChowClass segre_from_projective_degrees(const std::vector<long long>& g,
                                               int d, int n) {
    AmbientSpec a = AmbientSpec::proj(n);
    ChowClass acc = ChowClass::one(a);
    IntPoly denom_base(a.class_vars);
    denom_base.add_term({0}, 1);
    denom_base.add_term({1}, d);
    IntPoly q = IntPoly::constant(a.class_vars, 1);
    for (size_t i = 0; i < g.size() && static_cast<int>(i) <= n; ++i) {
        q = q * denom_base; // (1+dH)^{i+1}
        if (g[i] == 0) continue;
        IntPoly num(a.class_vars);
        num.add_term({static_cast<int>(i)}, g[i]);
        acc = acc - expand_rational(num, q, a);
    }
    return acc;
}

} // namespace segrezeta
