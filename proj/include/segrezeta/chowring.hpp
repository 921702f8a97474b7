#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "segrezeta/errors.hpp"

namespace segrezeta {

/// A product of projective spaces, with names for the hyperplane classes.
/// Owns the truncated presentation Z[t_1..t_k]/(t_i^{n_i+1}).
struct AmbientSpec {
    std::vector<int> factor_dims;
    std::vector<std::string> class_vars;

    AmbientSpec() = default;
    AmbientSpec(std::vector<int> dims, std::vector<std::string> vars)
        : factor_dims(std::move(dims)), class_vars(std::move(vars)) {
        if (factor_dims.empty() || factor_dims.size() != class_vars.size())
            throw StructuralError("AmbientSpec: bad factor/name lists");
        for (int d : factor_dims)
            if (d < 0) throw StructuralError("AmbientSpec: negative dimension");
    }

    static AmbientSpec proj(int n) { return AmbientSpec({n}, {"H"}); }
    static AmbientSpec product(int n, int m) {
        return AmbientSpec({n, m}, {"s", "t"});
    }

    int factors() const { return static_cast<int>(factor_dims.size()); }
    int total_dim() const {
        int d = 0;
        for (int n : factor_dims) d += n;
        return d;
    }
    AmbientSpec with_factor(int dim, const std::string& name) const {
        auto d = factor_dims;
        auto v = class_vars;
        d.push_back(dim);
        v.push_back(name);
        return AmbientSpec(std::move(d), std::move(v));
    }
    AmbientSpec without_factor(int idx) const {
        auto d = factor_dims;
        auto v = class_vars;
        d.erase(d.begin() + idx);
        v.erase(v.begin() + idx);
        return AmbientSpec(std::move(d), std::move(v));
    }

    bool operator==(const AmbientSpec& o) const {
        return factor_dims == o.factor_dims && class_vars == o.class_vars;
    }
    bool operator!=(const AmbientSpec& o) const { return !(*this == o); }
};

/// Untruncated integer polynomial in named class variables.
struct IntPoly {
    std::vector<std::string> vars;
    std::map<std::vector<int>, long long> coeffs;

    IntPoly() = default;
    explicit IntPoly(std::vector<std::string> v) : vars(std::move(v)) {}

    static IntPoly constant(std::vector<std::string> v, long long c) {
        IntPoly p(std::move(v));
        if (c != 0) p.coeffs.emplace(std::vector<int>(p.vars.size(), 0), c);
        return p;
    }

    bool is_zero() const { return coeffs.empty(); }

    void add_term(const std::vector<int>& e, long long c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }

    IntPoly operator+(const IntPoly& o) const {
        check(o);
        IntPoly r = *this;
        for (const auto& [e, c] : o.coeffs) r.add_term(e, c);
        return r;
    }
    IntPoly operator-(const IntPoly& o) const {
        check(o);
        IntPoly r = *this;
        for (const auto& [e, c] : o.coeffs) r.add_term(e, -c);
        return r;
    }
    IntPoly operator*(const IntPoly& o) const {
        check(o);
        IntPoly r(vars);
        for (const auto& [ea, ca] : coeffs)
            for (const auto& [eb, cb] : o.coeffs) {
                std::vector<int> e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    bool operator==(const IntPoly& o) const {
        return vars == o.vars && coeffs == o.coeffs;
    }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : coeffs) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    /// Terms of total degree exactly d.
    IntPoly homogeneous_part(int d) const {
        IntPoly r(vars);
        for (const auto& [e, c] : coeffs) {
            int s = 0;
            for (int x : e) s += x;
            if (s == d) r.add_term(e, c);
        }
        return r;
    }
    int lowest_total_degree() const {
        if (coeffs.empty()) throw StructuralError("lowest degree of zero");
        int d = -1;
        for (const auto& [e, c] : coeffs) {
            int s = 0;
            for (int x : e) s += x;
            if (d < 0 || s < d) d = s;
        }
        return d;
    }

    /// grammar=true emits the machine-parseable form with '*'.
    std::string str(bool grammar = false) const;

private:
    void check(const IntPoly& o) const {
        if (vars != o.vars)
            throw StructuralError("IntPoly: mismatched variables");
    }
};

/// Integer class in the truncated ring of an ambient; exponents stay within
/// the truncation bounds, zero coefficients are never stored.
struct ChowClass {
    AmbientSpec ambient;
    std::map<std::vector<int>, long long> coeffs;

    ChowClass() = default;
    explicit ChowClass(AmbientSpec a) : ambient(std::move(a)) {}

    static ChowClass one(const AmbientSpec& a) {
        ChowClass c(a);
        c.coeffs.emplace(std::vector<int>(a.factors(), 0), 1);
        return c;
    }
    static ChowClass zero(const AmbientSpec& a) { return ChowClass(a); }

    bool is_zero() const { return coeffs.empty(); }

    void add_term(const std::vector<int>& e, long long c) {
        if (c == 0) return;
        for (int i = 0; i < ambient.factors(); ++i)
            if (e[i] > ambient.factor_dims[i]) return; // truncated away
        auto [it, inserted] = coeffs.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }

    ChowClass operator+(const ChowClass& o) const {
        check(o);
        ChowClass r = *this;
        for (const auto& [e, c] : o.coeffs) r.add_term(e, c);
        return r;
    }
    ChowClass operator-(const ChowClass& o) const {
        check(o);
        ChowClass r = *this;
        for (const auto& [e, c] : o.coeffs) r.add_term(e, -c);
        return r;
    }
    ChowClass operator*(const ChowClass& o) const {
        check(o);
        ChowClass r(ambient);
        for (const auto& [ea, ca] : coeffs)
            for (const auto& [eb, cb] : o.coeffs) {
                std::vector<int> e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    ChowClass operator-() const {
        ChowClass r(ambient);
        for (const auto& [e, c] : coeffs) r.coeffs.emplace(e, -c);
        return r;
    }
    bool operator==(const ChowClass& o) const {
        return ambient == o.ambient && coeffs == o.coeffs;
    }
    bool operator!=(const ChowClass& o) const { return !(*this == o); }

    std::string str(bool grammar = false) const;

private:
    void check(const ChowClass& o) const {
        if (ambient != o.ambient)
            throw StructuralError("ChowClass: mismatched ambients");
    }
};

/// A direct sum of line bundles given by per-factor (multi)degrees.
struct BundleSpec {
    std::vector<std::vector<int>> degrees;

    BundleSpec() = default;
    explicit BundleSpec(std::vector<std::vector<int>> d) : degrees(std::move(d)) {
        if (degrees.empty()) throw StructuralError("BundleSpec: empty sum");
        for (const auto& v : degrees)
            if (v.size() != degrees[0].size())
                throw StructuralError("BundleSpec: ragged degree list");
    }

    int rank() const { return static_cast<int>(degrees.size()); }
};

inline ChowClass reduce_to_ambient(const IntPoly& p, const AmbientSpec& a) {
    if (p.vars != a.class_vars)
        throw StructuralError("reduce_to_ambient: variable name mismatch");
    ChowClass c(a);
    for (const auto& [e, v] : p.coeffs) c.add_term(e, v);
    return c;
}

/// The unique polynomial representative within the truncation bounds; since
/// all relations are pure powers this is the lowest-degree representative.
inline IntPoly reduced_representative(const ChowClass& c) {
    IntPoly p(c.ambient.class_vars);
    for (const auto& [e, v] : c.coeffs) p.coeffs.emplace(e, v);
    return p;
}

/// Drop monomials exceeding the (smaller) target truncation.
inline ChowClass truncate_to(const ChowClass& c, const AmbientSpec& target) {
    if (target.class_vars != c.ambient.class_vars)
        throw StructuralError("truncate_to: variable mismatch");
    ChowClass r(target);
    for (const auto& [e, v] : c.coeffs) r.add_term(e, v);
    return r;
}

/// prod_j (1 + sum_f d_{j,f} var_f) as an untruncated polynomial.
inline IntPoly chern_poly(const BundleSpec& bundle,
                          const std::vector<std::string>& vars) {
    IntPoly acc = IntPoly::constant(vars, 1);
    for (const auto& d : bundle.degrees) {
        if (d.size() != vars.size())
            throw StructuralError("chern_poly: degree vector length mismatch");
        IntPoly f = IntPoly::constant(vars, 1);
        for (size_t i = 0; i < d.size(); ++i) {
            std::vector<int> e(vars.size(), 0);
            e[i] = 1;
            f.add_term(e, d[i]);
        }
        acc = acc * f;
    }
    return acc;
}

/// Total Chern class of the line-bundle sum, reduced in the ambient.
inline ChowClass total_chern(const BundleSpec& bundle, const AmbientSpec& a) {
    return reduce_to_ambient(chern_poly(bundle, a.class_vars), a);
}

/// The unique X with X*Q = P in the truncated ring; equals the power-series
/// expansion of P/Q truncated at the ambient bounds. Q must be a unit.
inline ChowClass expand_rational(const IntPoly& P, const IntPoly& Q,
                                 const AmbientSpec& a) {
    ChowClass p = reduce_to_ambient(P, a);
    ChowClass q = reduce_to_ambient(Q, a);
    std::vector<int> zero(a.factors(), 0);
    auto it = q.coeffs.find(zero);
    long long c0 = it == q.coeffs.end() ? 0 : it->second;
    if (c0 != 1 && c0 != -1)
        throw NonUnitDenominatorError(
            "expand_rational: denominator constant term is " +
            std::to_string(c0) + ", not a unit");
    // q = c0*(1 + R); inverse by geometric series up to the ambient dimension.
    ChowClass r = q;
    r.coeffs.erase(zero);
    if (c0 == -1) r = -r;
    ChowClass inv = ChowClass::one(a);
    ChowClass pw = ChowClass::one(a);
    for (int k = 1; k <= a.total_dim(); ++k) {
        pw = pw * r;
        if (pw.is_zero()) break;
        inv = (k % 2 == 1) ? inv - pw : inv + pw;
    }
    ChowClass x = p * inv;
    if (c0 == -1) x = -x;
    if (x * q != p)
        throw StructuralError("expand_rational: internal inversion failure");
    return x;
}

/// Pushforward along one projective-space factor: the coefficient of the top
/// power of that factor's hyperplane class, as a class in the smaller ambient.
inline ChowClass coefficient_extract(const ChowClass& c, int factor, int power) {
    if (factor < 0 || factor >= c.ambient.factors())
        throw StructuralError("coefficient_extract: bad factor index");
    if (power != c.ambient.factor_dims[factor])
        throw StructuralError(
            "coefficient_extract: power must equal the factor dimension");
    ChowClass r(c.ambient.without_factor(factor));
    for (const auto& [e, v] : c.coeffs) {
        if (e[factor] != power) continue;
        std::vector<int> ne = e;
        ne.erase(ne.begin() + factor);
        r.add_term(ne, v);
    }
    return r;
}

/// Numerator/denominator pair of a Segre zeta function. P and Q are stored
/// untruncated so one object serves every target ambient.
struct ZetaFunction {
    IntPoly numerator;
    IntPoly denominator;
    BundleSpec bundle;
    AmbientSpec base_ambient;

    ChowClass evaluate(const AmbientSpec& target) const {
        return expand_rational(numerator, denominator, target);
    }
    std::string str() const {
        return "(" + numerator.str() + ")/(" + denominator.str() + ")";
    }
};

// ---------------------------------------------------------------------------

namespace detail {

inline std::string poly_string(
    const std::vector<std::string>& vars,
    const std::map<std::vector<int>, long long>& coeffs, bool grammar) {
    if (coeffs.empty()) return "0";
    // Ascending total degree, then map order.
    std::vector<std::pair<std::vector<int>, long long>> terms(coeffs.begin(),
                                                              coeffs.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int da = 0, db = 0;
        for (int x : a.first) da += x;
        for (int x : b.first) db += x;
        return da < db;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, v] : terms) {
        long long av = v < 0 ? -v : v;
        if (first) {
            if (v < 0) os << "-";
            first = false;
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) {
                if (!mono.empty() && grammar) mono += "*";
                mono += vars[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
        if (mono.empty()) {
            os << av;
        } else if (av == 1) {
            os << mono;
        } else {
            os << av << (grammar ? "*" : "") << mono;
        }
    }
    return os.str();
}

} // namespace detail

inline std::string IntPoly::str(bool grammar) const {
    return detail::poly_string(vars, coeffs, grammar);
}

inline std::string ChowClass::str(bool grammar) const {
    return detail::poly_string(ambient.class_vars, coeffs, grammar);
}

} // namespace segrezeta
