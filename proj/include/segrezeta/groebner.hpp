#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "segrezeta/errors.hpp"
#include "segrezeta/multipoly.hpp"

namespace segrezeta {

/// Monomial order: graded reverse lexicographic, or a block elimination
/// order (grevlex on the eliminated variables first, grevlex on the rest).
struct TermOrder {
    enum class Kind { Grevlex, BlockElim };

    Kind kind = Kind::Grevlex;
    std::vector<char> elim_mask; // per-variable flag, BlockElim only

    static TermOrder grevlex() { return TermOrder{}; }
    static TermOrder block_elim(std::vector<char> mask) {
        TermOrder o;
        o.kind = Kind::BlockElim;
        o.elim_mask = std::move(mask);
        return o;
    }

    // -1 if a < b, 0 if equal, 1 if a > b.
    int compare(const Exponents& a, const Exponents& b) const {
        if (kind == Kind::Grevlex) return cmp_grevlex(a, b, nullptr, true);
        int c = cmp_grevlex(a, b, &elim_mask, true);
        if (c != 0) return c;
        return cmp_grevlex(a, b, &elim_mask, false);
    }
    bool less(const Exponents& a, const Exponents& b) const {
        return compare(a, b) < 0;
    }
    bool greater(const Exponents& a, const Exponents& b) const {
        return compare(a, b) > 0;
    }

    bool operator==(const TermOrder& o) const {
        return kind == o.kind && elim_mask == o.elim_mask;
    }

private:
    static int cmp_grevlex(const Exponents& a, const Exponents& b,
                           const std::vector<char>* mask, bool in_mask) {
        int da = 0, db = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            bool use = !mask || (static_cast<bool>((*mask)[i]) == in_mask);
            if (use) {
                da += a[i];
                db += b[i];
            }
        }
        if (da != db) return da < db ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;) {
            bool use = !mask || (static_cast<bool>((*mask)[i]) == in_mask);
            if (use && a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
        }
        return 0;
    }
};

namespace detail {

struct TermGreater {
    const TermOrder* ord;
    bool operator()(const Exponents& a, const Exponents& b) const {
        return ord->greater(a, b);
    }
};

// Terms sorted leading-first under the active order.
using OrdMap = std::map<Exponents, Scalar, TermGreater>;

inline OrdMap to_ordmap(const MultiPoly& f, const TermOrder& ord) {
    OrdMap m{TermGreater{&ord}};
    for (const auto& [e, c] : f.terms()) m.emplace(e, c);
    return m;
}

inline MultiPoly from_ordmap(const OrdMap& m, const VarBlocksPtr& blocks) {
    MultiPoly f(blocks);
    for (const auto& [e, c] : m) f.add_term(e, c);
    return f;
}

inline bool divides(const Exponents& a, const Exponents& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Exponents exp_lcm(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline bool coprime(const Exponents& a, const Exponents& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

// dst += c * x^m * src
inline void add_scaled(OrdMap& dst, const OrdMap& src, const Scalar& c,
                       const Exponents& m) {
    for (const auto& [e, ce] : src) {
        Exponents ne = e;
        for (size_t i = 0; i < ne.size(); ++i) ne[i] += m[i];
        Scalar add = ce * c;
        auto it = dst.find(ne);
        if (it == dst.end()) {
            if (!add.is_zero()) dst.emplace(std::move(ne), add);
        } else {
            Scalar s = it->second + add;
            if (s.is_zero())
                dst.erase(it);
            else
                it->second = s;
        }
    }
}

struct BasisElem {
    OrdMap poly;
    Exponents lt;
    int sugar = 0;
};

// Full reduction; tracks the sugar degree of the remainder.
inline OrdMap reduce_full(OrdMap p, const std::vector<BasisElem>& basis,
                          int* sugar) {
    OrdMap rem = p; // reuse comparator
    rem.clear();
    while (!p.empty()) {
        const Exponents& lt = p.begin()->first;
        const BasisElem* red = nullptr;
        for (const auto& g : basis)
            if (divides(g.lt, lt)) { red = &g; break; }
        if (!red) {
            rem.emplace(p.begin()->first, p.begin()->second);
            p.erase(p.begin());
            continue;
        }
        Exponents m = lt;
        for (size_t i = 0; i < m.size(); ++i) m[i] -= red->lt[i];
        Scalar c = -(p.begin()->second / red->poly.begin()->second);
        if (sugar)
            *sugar = std::max(*sugar, red->sugar + total_degree(m));
        add_scaled(p, red->poly, c, m);
    }
    return rem;
}

struct Pair {
    int i, j;
    Exponents lcm;
    int sugar;
};

} // namespace detail

/// Reduced Groebner basis; unique per (ideal, order). Elements monic,
/// sorted ascending by leading term.
inline std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens,
                                             const TermOrder& ord) {
    using namespace detail;
    VarBlocksPtr blocks;
    for (const auto& g : gens)
        if (!g.is_zero()) {
            if (!blocks) blocks = g.blocks();
            else if (*blocks != *g.blocks())
                throw StructuralError("groebner_basis: mixed variable blocks");
        }
    if (!blocks) return {};

    std::vector<BasisElem> basis;
    std::vector<Pair> pairs;

    auto pair_sugar = [&](const BasisElem& a, const BasisElem& b,
                          const Exponents& lcm) {
        return std::max(a.sugar + total_degree(lcm) - total_degree(a.lt),
                        b.sugar + total_degree(lcm) - total_degree(b.lt));
    };

    // Gebauer-Moller update: prune new and old pairs when adding element h.
    auto update = [&](int hidx) {
        const BasisElem& h = basis[hidx];
        struct Cand { int g; Exponents lcm; bool coprime; };
        std::vector<Cand> cand;
        for (int g = 0; g < hidx; ++g)
            cand.push_back({g, exp_lcm(h.lt, basis[g].lt),
                            coprime(h.lt, basis[g].lt)});
        std::vector<Cand> keep;
        for (size_t a = 0; a < cand.size(); ++a) {
            bool dominated = false;
            if (!cand[a].coprime) {
                for (size_t b = 0; b < cand.size(); ++b) {
                    if (b != a && divides(cand[b].lcm, cand[a].lcm) &&
                        cand[b].lcm != cand[a].lcm) {
                        dominated = true;
                        break;
                    }
                }
            }
            if (!dominated) keep.push_back(cand[a]);
        }
        // Chain criterion against existing pairs.
        std::vector<Pair> old;
        for (const auto& pr : pairs) {
            bool drop = divides(h.lt, pr.lcm) &&
                        exp_lcm(basis[pr.i].lt, h.lt) != pr.lcm &&
                        exp_lcm(basis[pr.j].lt, h.lt) != pr.lcm;
            if (!drop) old.push_back(pr);
        }
        pairs = std::move(old);
        for (const auto& k : keep) {
            if (k.coprime) continue; // product criterion
            pairs.push_back(
                {k.g, hidx, k.lcm, pair_sugar(basis[k.g], h, k.lcm)});
        }
    };

    auto add_elem = [&](OrdMap p, int sugar) {
        BasisElem e;
        e.lt = p.begin()->first;
        Scalar inv = p.begin()->second.inverse();
        for (auto& [m, c] : p) c = c * inv;
        e.poly = std::move(p);
        e.sugar = sugar;
        basis.push_back(std::move(e));
        update(static_cast<int>(basis.size()) - 1);
    };

    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        OrdMap p = to_ordmap(g, ord);
        int sugar = total_degree(p.begin()->first);
        for (const auto& [e, c] : p)
            sugar = std::max(sugar, total_degree(e));
        p = reduce_full(std::move(p), basis, &sugar);
        if (!p.empty()) add_elem(std::move(p), sugar);
    }

    while (!pairs.empty()) {
        // Sugar selection: min sugar, then min lcm in the order.
        size_t best = 0;
        for (size_t k = 1; k < pairs.size(); ++k) {
            const Pair &a = pairs[k], &b = pairs[best];
            if (a.sugar != b.sugar) {
                if (a.sugar < b.sugar) best = k;
            } else if (ord.less(a.lcm, b.lcm)) {
                best = k;
            }
        }
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<long>(best));

        const BasisElem &f = basis[pr.i], &g = basis[pr.j];
        Exponents mf = pr.lcm, mg = pr.lcm;
        for (size_t i = 0; i < mf.size(); ++i) {
            mf[i] -= f.lt[i];
            mg[i] -= g.lt[i];
        }
        OrdMap sp{TermGreater{&ord}};
        add_scaled(sp, f.poly, Scalar::one_like(f.poly.begin()->second), mf);
        add_scaled(sp, g.poly, -Scalar::one_like(g.poly.begin()->second), mg);
        int sugar = pr.sugar;
        sp = reduce_full(std::move(sp), basis, &sugar);
        if (!sp.empty()) add_elem(std::move(sp), sugar);
    }

    // Minimalize: drop elements whose leading term is divisible by another's.
    std::vector<char> alive(basis.size(), 1);
    for (size_t a = 0; a < basis.size(); ++a)
        for (size_t b = 0; b < basis.size(); ++b)
            if (a != b && alive[a] && alive[b] &&
                divides(basis[b].lt, basis[a].lt) &&
                (basis[b].lt != basis[a].lt || b < a))
                alive[a] = 0;
    std::vector<BasisElem> minimal;
    for (size_t a = 0; a < basis.size(); ++a)
        if (alive[a]) minimal.push_back(basis[a]);

    // Tail-reduce each element against the others.
    std::vector<MultiPoly> out;
    for (size_t a = 0; a < minimal.size(); ++a) {
        std::vector<BasisElem> others;
        for (size_t b = 0; b < minimal.size(); ++b)
            if (b != a) others.push_back(minimal[b]);
        OrdMap r = reduce_full(minimal[a].poly, others, nullptr);
        if (r.empty()) continue;
        Scalar inv = r.begin()->second.inverse();
        for (auto& [m, c] : r) c = c * inv;
        out.push_back(from_ordmap(r, blocks));
    }
    std::sort(out.begin(), out.end(), [&](const MultiPoly& a, const MultiPoly& b) {
        return ord.less(to_ordmap(a, ord).begin()->first,
                        to_ordmap(b, ord).begin()->first);
    });
    return out;
}

/// Remainder of f on division by a Groebner basis: no term divisible by
/// any leading term; f - result lies in the ideal.
inline MultiPoly normal_form(const MultiPoly& f,
                             const std::vector<MultiPoly>& basis,
                             const TermOrder& ord) {
    using namespace detail;
    if (f.is_zero()) return f;
    std::vector<BasisElem> bs;
    for (const auto& g : basis) {
        if (g.is_zero()) continue;
        BasisElem e;
        e.poly = to_ordmap(g, ord);
        e.lt = e.poly.begin()->first;
        bs.push_back(std::move(e));
    }
    OrdMap r = reduce_full(to_ordmap(f, ord), bs, nullptr);
    return from_ordmap(r, f.blocks());
}

/// Generators plus a compute-once cache of Groebner bases per order.
struct IdealHandle {
    VarBlocksPtr blocks;
    std::vector<MultiPoly> generators;
    mutable std::vector<std::pair<TermOrder, std::vector<MultiPoly>>> cache;

    IdealHandle() = default;
    IdealHandle(VarBlocksPtr b, std::vector<MultiPoly> g)
        : blocks(std::move(b)), generators(std::move(g)) {}

    const std::vector<MultiPoly>& basis(const TermOrder& ord) const {
        for (const auto& [o, b] : cache)
            if (o == ord) return b;
        cache.emplace_back(ord, groebner_basis(generators, ord));
        return cache.back().second;
    }

    bool contains(const MultiPoly& f, const TermOrder& ord = TermOrder::grevlex()) const {
        return normal_form(f, basis(ord), ord).is_zero();
    }
    bool is_unit_ideal() const {
        const auto& b = basis(TermOrder::grevlex());
        return b.size() == 1 && !b[0].is_zero() &&
               total_degree(b[0].terms().begin()->first) == 0 &&
               b[0].term_count() == 1;
    }
    bool is_zero_ideal() const {
        return basis(TermOrder::grevlex()).empty();
    }
};

inline bool same_ideal(const IdealHandle& a, const IdealHandle& b) {
    TermOrder ord = TermOrder::grevlex();
    for (const auto& g : a.generators)
        if (!b.contains(g, ord)) return false;
    for (const auto& g : b.generators)
        if (!a.contains(g, ord)) return false;
    return true;
}

namespace detail {

/// Drop the named variables; every remaining polynomial must avoid them.
inline VarBlocksPtr blocks_without(const VarBlocks& src,
                                   const std::set<std::string>& drop) {
    std::vector<std::vector<std::string>> nb;
    for (const auto& blk : src.blocks) {
        std::vector<std::string> kept;
        for (const auto& v : blk)
            if (!drop.count(v)) kept.push_back(v);
        if (!kept.empty()) nb.push_back(std::move(kept));
    }
    return make_blocks(std::move(nb));
}

inline VarBlocksPtr blocks_plus_aux(const VarBlocks& src,
                                    const std::vector<std::string>& aux) {
    auto nb = src.blocks;
    nb.push_back(aux);
    return make_blocks(std::move(nb));
}

} // namespace detail

/// Generators of I intersected with the subring omitting `drop`, via a
/// block elimination order. `drop` holds variable names.
inline IdealHandle eliminate(const IdealHandle& I,
                             const std::set<std::string>& drop) {
    if (drop.empty()) return I;
    const VarBlocks& blocks = *I.blocks;
    std::vector<char> mask(blocks.total_vars(), 0);
    for (const auto& name : drop) {
        auto idx = blocks.find(name);
        if (!idx)
            throw StructuralError("eliminate: unknown variable " + name);
        mask[*idx] = 1;
    }
    TermOrder ord = TermOrder::block_elim(mask);
    const auto& gb = I.basis(ord);
    VarBlocksPtr target = detail::blocks_without(blocks, drop);
    std::vector<MultiPoly> kept;
    for (const auto& g : gb) {
        bool free = true;
        for (const auto& [e, c] : g.terms())
            for (size_t i = 0; i < e.size(); ++i)
                if (mask[i] && e[i] > 0) { free = false; break; }
        if (free) kept.push_back(transport(g, target));
    }
    return IdealHandle(target, std::move(kept));
}

/// I : f^inf by the auxiliary-variable method (adjoin 1 - w*f, eliminate w).
inline IdealHandle saturate_single(const IdealHandle& I, const MultiPoly& f) {
    if (f.is_zero())
        throw StructuralError("saturate_single: zero polynomial");
    VarBlocksPtr big = detail::blocks_plus_aux(*I.blocks, {"@w"});
    std::vector<MultiPoly> gens;
    for (const auto& g : I.generators)
        if (!g.is_zero()) gens.push_back(transport(g, big));
    Scalar one = Scalar::one_like(f.any_coeff());
    int w = *big->find("@w");
    MultiPoly wf = MultiPoly::variable(big, w, one) * transport(f, big);
    gens.push_back(MultiPoly::constant(big, one) - wf);
    IdealHandle J(big, std::move(gens));
    IdealHandle elim = eliminate(J, {"@w"});
    // Transport back to the original blocks (the aux block is gone but
    // block boundaries may have been preserved).
    std::vector<MultiPoly> out;
    for (const auto& g : elim.generators) out.push_back(transport(g, I.blocks));
    return IdealHandle(I.blocks, std::move(out));
}

/// I ∩ J via the one-auxiliary-variable trick: eliminate t from t*I + (1-t)*J.
inline IdealHandle intersect(const IdealHandle& I, const IdealHandle& J) {
    if (!I.blocks || !J.blocks || *I.blocks != *J.blocks)
        throw StructuralError("intersect: mismatched rings");
    VarBlocksPtr big = detail::blocks_plus_aux(*I.blocks, {"@t"});
    int t = *big->find("@t");
    Scalar one;
    bool have_one = false;
    for (const auto& g : I.generators)
        if (!g.is_zero()) { one = Scalar::one_like(g.any_coeff()); have_one = true; break; }
    if (!have_one)
        for (const auto& g : J.generators)
            if (!g.is_zero()) { one = Scalar::one_like(g.any_coeff()); have_one = true; break; }
    if (!have_one) return IdealHandle(I.blocks, {}); // both zero ideals
    MultiPoly tv = MultiPoly::variable(big, t, one);
    MultiPoly omt = MultiPoly::constant(big, one) - tv;
    std::vector<MultiPoly> gens;
    for (const auto& g : I.generators)
        if (!g.is_zero()) gens.push_back(tv * transport(g, big));
    for (const auto& g : J.generators)
        if (!g.is_zero()) gens.push_back(omt * transport(g, big));
    IdealHandle K(big, std::move(gens));
    IdealHandle elim = eliminate(K, {"@t"});
    std::vector<MultiPoly> out;
    for (const auto& g : elim.generators) out.push_back(transport(g, I.blocks));
    return IdealHandle(I.blocks, std::move(out));
}

/// I : J^inf as the intersection over generators f of I : f^inf.
inline IdealHandle saturate(const IdealHandle& I, const IdealHandle& J) {
    std::vector<const MultiPoly*> fs;
    for (const auto& f : J.generators)
        if (!f.is_zero()) fs.push_back(&f);
    if (fs.empty())
        throw StructuralError("saturate: J is the zero ideal");
    IdealHandle acc = saturate_single(I, *fs[0]);
    for (size_t k = 1; k < fs.size(); ++k)
        acc = intersect(acc, saturate_single(I, *fs[k]));
    return acc;
}

/// True iff the staircase of standard monomials is finite: every variable
/// must appear as a pure power among the leading terms.
inline bool is_zero_dimensional(const IdealHandle& I) {
    TermOrder ord = TermOrder::grevlex();
    const auto& gb = I.basis(ord);
    if (I.is_unit_ideal()) return true;
    if (gb.empty()) return I.blocks->total_vars() == 0;
    int n = I.blocks->total_vars();
    std::vector<char> covered(n, 0);
    for (const auto& g : gb) {
        Exponents lt = detail::to_ordmap(g, ord).begin()->first;
        int nz = -1, cnt = 0;
        for (int i = 0; i < n; ++i)
            if (lt[i] > 0) { nz = i; ++cnt; }
        if (cnt == 1) covered[nz] = 1;
    }
    return std::all_of(covered.begin(), covered.end(),
                       [](char c) { return c != 0; });
}

/// Vector-space dimension of the quotient ring = number of standard monomials.
inline long long quotient_length(const IdealHandle& I) {
    if (!is_zero_dimensional(I))
        throw DimensionError("quotient_length: ideal is not zero-dimensional");
    if (I.is_unit_ideal()) return 0;
    TermOrder ord = TermOrder::grevlex();
    const auto& gb = I.basis(ord);
    int n = I.blocks->total_vars();
    if (gb.empty()) {
        if (n == 0) return 1;
        throw DimensionError("quotient_length: zero ideal");
    }
    std::vector<Exponents> lts;
    std::vector<int> bound(n, -1);
    for (const auto& g : gb) {
        Exponents lt = detail::to_ordmap(g, ord).begin()->first;
        int nz = -1, cnt = 0;
        for (int i = 0; i < n; ++i)
            if (lt[i] > 0) { nz = i; ++cnt; }
        if (cnt == 1 && (bound[nz] < 0 || lt[nz] < bound[nz])) bound[nz] = lt[nz];
        lts.push_back(std::move(lt));
    }
    long long count = 0;
    Exponents cur(n, 0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            for (const auto& lt : lts)
                if (detail::divides(lt, cur)) return;
            ++count;
            return;
        }
        for (int k = 0; k < bound[pos]; ++k) {
            cur[pos] = k;
            self(self, pos + 1);
        }
        cur[pos] = 0;
    };
    rec(rec, 0);
    return count;
}

} // namespace segrezeta
