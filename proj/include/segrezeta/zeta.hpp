#pragma once

#include <random>
#include <string>
#include <vector>

#include "segrezeta/chowring.hpp"
#include "segrezeta/errors.hpp"
#include "segrezeta/segre.hpp"

namespace segrezeta {

/// An ideal with declared line-bundle degrees in its ambient product of
/// projective spaces. The bundle keeps the user's declaration order; the
/// zeta function depends on it, the Segre class does not.
struct ZetaProblem {
    ProjectiveAmbient ambient;
    std::vector<std::pair<MultiPoly, Multidegree>> generators;
    BundleSpec bundle;

    int rank_g() const { return bundle.rank(); }
    /// e = fiber dimension + 1 of the projective-bundle reading.
    int rank_e() const {
        int e = ambient.spec.factor_dims[0] + 1;
        for (int f = 1; f < ambient.spec.factors(); ++f)
            e = std::min(e, ambient.spec.factor_dims[f] + 1);
        return e;
    }

    void validate() const {
        if (static_cast<int>(generators.size()) != bundle.rank())
            throw StructuralError("ZetaProblem: one degree per generator required");
        for (size_t j = 0; j < generators.size(); ++j) {
            const auto& [g, d] = generators[j];
            if (d.degrees != bundle.degrees[j])
                throw StructuralError("ZetaProblem: declared degree mismatch");
            if (!g.is_zero() && multidegree_of(g) != d)
                throw StructuralError(
                    "ZetaProblem: generator " + std::to_string(j) +
                    " is not homogeneous of the declared degree");
        }
    }
};

struct VerificationReport {
    std::string instance;
    std::vector<int> target_dims;
    ChowClass predicted;
    ChowClass computed;
    bool match = false;
    std::vector<std::uint64_t> seeds;
    std::uint64_t prime = 0;
};

struct PropertyCheck {
    std::string name;
    bool pass = true;
    bool skipped = false;
    std::string detail;
};

struct PropertyReport {
    std::vector<PropertyCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline void enforce_construction_gate(const ZetaProblem& p) {
    int g = p.rank_g(), e = p.rank_e();
    if (!(g < e))
        throw RankConstraintError("rank constraint g < e violated: g = " +
                                  std::to_string(g) + ", e = " +
                                  std::to_string(e));
}

/// The stricter printed bounds used by the cone verification claims:
/// r + 1 < n absolutely, r < n,m for products.
inline void enforce_verification_gate(const ZetaProblem& p) {
    int r = p.rank_g() - 1;
    if (p.ambient.spec.factors() == 1) {
        int n = p.ambient.spec.factor_dims[0];
        if (!(r + 1 < n))
            throw RankConstraintError(
                "strict rank constraint r+1 < n violated: r+1 = " +
                std::to_string(r + 1) + ", n = " + std::to_string(n));
    } else {
        for (int f = 0; f < p.ambient.spec.factors(); ++f)
            if (!(r < p.ambient.spec.factor_dims[f]))
                throw RankConstraintError(
                    "strict rank constraint r < n,m violated: r = " +
                    std::to_string(r) + ", factor dim = " +
                    std::to_string(p.ambient.spec.factor_dims[f]));
    }
}

/// Q from the Chern product formula; P the reduced representative of
/// c(G) . i_*s(Z); total degree of P is at most g.
inline ZetaFunction zeta_from_ideal(const ZetaProblem& p,
                                    const SegreOptions& opts = {}) {
    p.validate();
    enforce_construction_gate(p);
    ChowClass s = segre_class(p.generators, p.ambient, opts);
    ChowClass cg = total_chern(p.bundle, p.ambient.spec);
    IntPoly P = reduced_representative(cg * s);
    IntPoly Q = chern_poly(p.bundle, p.ambient.spec.class_vars);
    if (P.total_degree() > p.rank_g())
        throw StructuralError("zeta_from_ideal: numerator degree " +
                              std::to_string(P.total_degree()) +
                              " exceeds the bound g = " +
                              std::to_string(p.rank_g()));
    ZetaFunction z{std::move(P), std::move(Q), p.bundle, p.ambient.spec};
    if (z.evaluate(p.ambient.spec) != s)
        throw StructuralError("zeta_from_ideal: base consistency failure");
    return z;
}

namespace detail {

/// Continue a block's naming pattern into a larger projective space; falls
/// back to suffixed fresh names when the block is not stem+index shaped.
inline std::vector<std::string> extend_block_names(
    const std::vector<std::string>& names, int new_size,
    const std::vector<std::string>& taken) {
    std::vector<std::string> out = names;
    std::string stem;
    bool patterned = true;
    for (size_t i = 0; i < names.size(); ++i) {
        std::string want_idx = std::to_string(i);
        if (names[i].size() <= want_idx.size() ||
            names[i].substr(names[i].size() - want_idx.size()) != want_idx) {
            patterned = false;
            break;
        }
        std::string s = names[i].substr(0, names[i].size() - want_idx.size());
        if (i == 0)
            stem = s;
        else if (s != stem) {
            patterned = false;
            break;
        }
    }
    auto used = [&](const std::string& v) {
        for (const auto& t : taken)
            if (t == v) return true;
        for (const auto& t : out)
            if (t == v) return true;
        return false;
    };
    for (int i = static_cast<int>(names.size()); i < new_size; ++i) {
        std::string cand =
            patterned ? stem + std::to_string(i)
                      : names[0] + "_e" + std::to_string(i);
        while (used(cand)) cand += "_";
        out.push_back(cand);
    }
    return out;
}

} // namespace detail

/// The same generator polynomials reinterpreted in a larger ambient — the
/// cone. Never the reduced closure: no saturation is applied.
inline ZetaProblem cone_ideal(const ZetaProblem& p,
                              const std::vector<int>& target_dims) {
    const AmbientSpec& base = p.ambient.spec;
    if (static_cast<int>(target_dims.size()) != base.factors())
        throw StructuralError("cone_ideal: factor count mismatch");
    for (int f = 0; f < base.factors(); ++f)
        if (target_dims[f] < base.factor_dims[f])
            throw StructuralError("cone_ideal: target must dominate the base");
    std::vector<std::string> taken;
    for (const auto& blk : p.ambient.blocks->blocks)
        for (const auto& v : blk) taken.push_back(v);
    std::vector<std::vector<std::string>> nb;
    for (int f = 0; f < base.factors(); ++f) {
        auto ext = detail::extend_block_names(p.ambient.blocks->blocks[f],
                                              target_dims[f] + 1, taken);
        for (size_t i = p.ambient.blocks->blocks[f].size(); i < ext.size(); ++i)
            taken.push_back(ext[i]);
        nb.push_back(std::move(ext));
    }
    VarBlocksPtr blocks = make_blocks(std::move(nb));
    ProjectiveAmbient amb(AmbientSpec(target_dims, base.class_vars), blocks);
    ZetaProblem out;
    out.ambient = amb;
    out.bundle = p.bundle;
    for (const auto& [g, d] : p.generators)
        out.generators.push_back({g.is_zero() ? MultiPoly(blocks)
                                              : transport(g, blocks),
                                  d});
    return out;
}

/// Theorem-style cone check: the zeta function evaluated in the target
/// ambient against the directly computed Segre class of the cone.
inline VerificationReport verify_cone(const ZetaProblem& p,
                                      const std::vector<int>& target_dims,
                                      const SegreOptions& opts = {}) {
    enforce_verification_gate(p);
    ZetaFunction z = zeta_from_ideal(p, opts);
    ZetaProblem cone = cone_ideal(p, target_dims);
    VerificationReport rep;
    rep.target_dims = target_dims;
    rep.prime = opts.prime;
    rep.seeds = {opts.seed};
    rep.predicted = z.evaluate(cone.ambient.spec);
    rep.computed = segre_class(cone.generators, cone.ambient, opts);
    rep.match = rep.predicted == rep.computed;
    return rep;
}

/// Structural checks on a computed zeta function: lowest/highest numerator
/// parts, the degree bound, nonnegativity, and the denominator product form.
inline PropertyReport check_properties(const ZetaFunction& z,
                                       const ZetaProblem& p,
                                       const ChowClass& segre) {
    PropertyReport rep;
    int g = p.rank_g();
    const IntPoly& P = z.numerator;

    {
        PropertyCheck c{"lowest-part = top part of [Z] in degree codim(Z)"};
        if (segre.is_zero() || P.is_zero()) {
            c.skipped = true;
            c.detail = "empty subscheme";
            c.pass = P.is_zero() == segre.is_zero();
        } else {
            IntPoly srep = reduced_representative(segre);
            int codim = srep.lowest_total_degree();
            int plow = P.lowest_total_degree();
            c.pass = plow == codim &&
                     P.homogeneous_part(plow) == srep.homogeneous_part(codim);
            c.detail = "codim " + std::to_string(codim) + ", lowest part " +
                       P.homogeneous_part(plow).str();
        }
        rep.checks.push_back(c);
    }
    {
        PropertyCheck c{"highest-part = degree-g part of c(G)"};
        IntPoly cg = chern_poly(p.bundle, z.base_ambient.class_vars);
        c.pass = !P.is_zero() && P.total_degree() == g &&
                 P.homogeneous_part(g) == cg.homogeneous_part(g) &&
                 P.homogeneous_part(g) == z.denominator.homogeneous_part(g);
        if (P.is_zero()) {
            c.skipped = true;
            c.pass = true;
            c.detail = "empty subscheme";
        } else {
            c.detail = "degree-g part " + P.homogeneous_part(g).str();
        }
        rep.checks.push_back(c);
    }
    {
        PropertyCheck c{"deg P <= g"};
        c.pass = P.total_degree() <= g;
        c.detail = "deg P = " + std::to_string(P.total_degree()) +
                   ", g = " + std::to_string(g);
        rep.checks.push_back(c);
    }
    {
        PropertyCheck c{"nonnegative numerator coefficients"};
        bool globally_generated = true;
        for (const auto& d : p.bundle.degrees)
            for (int x : d)
                if (x < 0) globally_generated = false;
        if (!globally_generated) {
            c.skipped = true;
            c.detail = "bundle not globally generated";
        } else {
            for (const auto& [e, v] : P.coeffs)
                if (v < 0) {
                    c.pass = false;
                    c.detail = "negative coefficient " + std::to_string(v);
                }
        }
        rep.checks.push_back(c);
    }
    {
        PropertyCheck c{"denominator matches the Chern product formula"};
        c.pass = z.denominator ==
                 chern_poly(p.bundle, z.base_ambient.class_vars);
        rep.checks.push_back(c);
    }
    return rep;
}

inline PropertyReport check_properties(const ZetaFunction& z,
                                       const ZetaProblem& p,
                                       const SegreOptions& opts = {}) {
    return check_properties(z, p, segre_class(p.generators, p.ambient, opts));
}

/// Restriction to a generic hyperplane in one factor: substitute a random
/// linear form for the factor's last variable. Bundle degrees are unchanged.
inline ZetaProblem restrict_hyperplane(const ZetaProblem& p, int factor,
                                       std::mt19937_64& rng,
                                       std::uint64_t prime = 2147483647ULL) {
    const AmbientSpec& base = p.ambient.spec;
    if (factor < 0 || factor >= base.factors())
        throw StructuralError("restrict_hyperplane: bad factor index");
    if (base.factor_dims[factor] < 1)
        throw RankConstraintError(
            "restrict_hyperplane: factor of dimension 0 cannot be restricted");
    std::vector<int> new_dims = base.factor_dims;
    new_dims[factor] -= 1;
    int eprime = new_dims[0] + 1;
    for (int f = 1; f < base.factors(); ++f)
        eprime = std::min(eprime, new_dims[f] + 1);
    if (!(p.rank_g() < eprime))
        throw RankConstraintError(
            "restrict_hyperplane: g < e' violated: g = " +
            std::to_string(p.rank_g()) + ", e' = " + std::to_string(eprime));

    const auto& old_blocks = p.ambient.blocks;
    const auto& fvars = old_blocks->blocks[factor];
    std::string last = fvars.back();
    // Random linear form in the remaining variables of the factor.
    std::uniform_int_distribution<std::uint64_t> dist(0, prime - 1);
    MultiPoly form(old_blocks);
    Scalar one = Scalar::rational(1);
    for (size_t i = 0; i + 1 < fvars.size(); ++i) {
        int idx = *old_blocks->find(fvars[i]);
        form = form + MultiPoly::variable(old_blocks, idx, one)
                          .scaled(Scalar::rational(
                              static_cast<long long>(dist(rng))));
    }
    std::map<std::string, MultiPoly> assign;
    assign.emplace(last, std::move(form));

    std::vector<std::vector<std::string>> nb = old_blocks->blocks;
    nb[factor].pop_back();
    VarBlocksPtr blocks = make_blocks(std::move(nb));
    ZetaProblem out;
    out.ambient = ProjectiveAmbient(AmbientSpec(new_dims, base.class_vars),
                                    blocks);
    out.bundle = p.bundle;
    for (const auto& [gp, d] : p.generators) {
        MultiPoly sub = substitute(gp, assign);
        out.generators.push_back(
            {sub.is_zero() ? MultiPoly(blocks) : transport(sub, blocks), d});
    }
    return out;
}

/// The two single-parameter presentations of a product zeta function, with
/// one factor's hyperplane class treated as a coefficient.
struct RelativeView {
    int coefficient_factor; // factor read as the coefficient ring A_*(X)
    IntPoly numerator;
    IntPoly denominator;
    int coefficient_truncation; // coefficients live in Z[v]/(v^{n+1})

    ChowClass re_expand(const AmbientSpec& target) const {
        return expand_rational(numerator, denominator, target);
    }
};

inline std::pair<RelativeView, RelativeView> relative_views(
    const ZetaFunction& z) {
    if (z.base_ambient.factors() != 2)
        throw StructuralError("relative_views: two-factor base required");
    auto make = [&](int coeff_factor) {
        RelativeView v;
        v.coefficient_factor = coeff_factor;
        v.coefficient_truncation = z.base_ambient.factor_dims[coeff_factor];
        v.numerator = IntPoly(z.base_ambient.class_vars);
        v.denominator = IntPoly(z.base_ambient.class_vars);
        int bound = v.coefficient_truncation;
        for (const auto& [e, c] : z.numerator.coeffs)
            if (e[coeff_factor] <= bound) v.numerator.add_term(e, c);
        for (const auto& [e, c] : z.denominator.coeffs)
            if (e[coeff_factor] <= bound) v.denominator.add_term(e, c);
        return v;
    };
    return {make(0), make(1)};
}

} // namespace segrezeta
