#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "segrezeta/errors.hpp"
#include "segrezeta/scalar.hpp"

namespace segrezeta {

using Exponents = std::vector<int>;

/// Ordered variable blocks, one block per projective factor plus optional
/// auxiliary blocks (graph coordinates, elimination helpers).
struct VarBlocks {
    std::vector<std::vector<std::string>> blocks;

    VarBlocks() = default;
    explicit VarBlocks(std::vector<std::vector<std::string>> b)
        : blocks(std::move(b)) {
        std::vector<std::string> all;
        for (const auto& blk : blocks) {
            if (blk.empty()) throw StructuralError("VarBlocks: empty block");
            for (const auto& v : blk) all.push_back(v);
        }
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end())
            throw StructuralError("VarBlocks: duplicate variable name");
    }

    int block_count() const { return static_cast<int>(blocks.size()); }
    int total_vars() const {
        int n = 0;
        for (const auto& b : blocks) n += static_cast<int>(b.size());
        return n;
    }
    int block_offset(int b) const {
        int off = 0;
        for (int i = 0; i < b; ++i) off += static_cast<int>(blocks[i].size());
        return off;
    }
    int block_of(int var) const {
        int off = 0;
        for (int b = 0; b < block_count(); ++b) {
            off += static_cast<int>(blocks[b].size());
            if (var < off) return b;
        }
        throw StructuralError("VarBlocks: variable index out of range");
    }
    std::optional<int> find(const std::string& name) const {
        int idx = 0;
        for (const auto& blk : blocks)
            for (const auto& v : blk) {
                if (v == name) return idx;
                ++idx;
            }
        return std::nullopt;
    }
    const std::string& name(int var) const {
        int idx = 0;
        for (const auto& blk : blocks)
            for (const auto& v : blk) {
                if (idx == var) return v;
                ++idx;
            }
        throw StructuralError("VarBlocks: variable index out of range");
    }

    bool operator==(const VarBlocks& o) const { return blocks == o.blocks; }
    bool operator!=(const VarBlocks& o) const { return !(*this == o); }
};

using VarBlocksPtr = std::shared_ptr<const VarBlocks>;

inline VarBlocksPtr make_blocks(std::vector<std::vector<std::string>> b) {
    return std::make_shared<const VarBlocks>(std::move(b));
}

/// One nonnegative degree per block.
struct Multidegree {
    std::vector<int> degrees;

    Multidegree() = default;
    explicit Multidegree(std::vector<int> d) : degrees(std::move(d)) {}

    bool operator==(const Multidegree& o) const { return degrees == o.degrees; }
    bool operator!=(const Multidegree& o) const { return !(*this == o); }
    bool operator<(const Multidegree& o) const { return degrees < o.degrees; }

    Multidegree operator+(const Multidegree& o) const {
        if (degrees.size() != o.degrees.size())
            throw StructuralError("Multidegree: size mismatch");
        Multidegree r = *this;
        for (size_t i = 0; i < degrees.size(); ++i) r.degrees[i] += o.degrees[i];
        return r;
    }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < degrees.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(degrees[i]);
        }
        return s + ")";
    }
};

inline Multidegree block_degrees(const VarBlocks& blocks, const Exponents& e) {
    Multidegree d;
    d.degrees.assign(blocks.block_count(), 0);
    int idx = 0;
    for (int b = 0; b < blocks.block_count(); ++b)
        for (size_t j = 0; j < blocks.blocks[b].size(); ++j)
            d.degrees[b] += e[idx++];
    return d;
}

inline int total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

/// Exact multivariate polynomial with a shared variable table.
/// Terms are kept in a map over dense exponent vectors; zero coefficients
/// are never stored.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, Scalar>;

    MultiPoly() = default;
    explicit MultiPoly(VarBlocksPtr blocks) : blocks_(std::move(blocks)) {}

    static MultiPoly constant(VarBlocksPtr blocks, const Scalar& c) {
        MultiPoly p(blocks);
        if (!c.is_zero())
            p.terms_.emplace(Exponents(blocks->total_vars(), 0), c);
        return p;
    }
    static MultiPoly variable(VarBlocksPtr blocks, int var, const Scalar& one) {
        MultiPoly p(blocks);
        Exponents e(blocks->total_vars(), 0);
        e[var] = 1;
        p.terms_.emplace(std::move(e), one);
        return p;
    }
    static MultiPoly monomial(VarBlocksPtr blocks, Exponents e, const Scalar& c) {
        MultiPoly p(blocks);
        if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
        return p;
    }

    const VarBlocksPtr& blocks() const { return blocks_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Exponents& e, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            Scalar s = it->second + c;
            if (s.is_zero())
                terms_.erase(it);
            else
                it->second = s;
        }
    }

    MultiPoly operator+(const MultiPoly& o) const {
        check(o);
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        check(o);
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        check(o);
        MultiPoly r(blocks_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                Exponents e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(blocks_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    MultiPoly scaled(const Scalar& s) const {
        MultiPoly r(blocks_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        if (blocks_ && o.blocks_ && *blocks_ != *o.blocks_) return false;
        return terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Some coefficient, for kind probing.
    const Scalar& any_coeff() const {
        if (terms_.empty()) throw ZeroPolynomialError("any_coeff of zero");
        return terms_.begin()->second;
    }

    /// Leading coefficient made 1; zero stays zero.
    MultiPoly monic() const {
        if (terms_.empty()) return *this;
        return scaled(terms_.rbegin()->second.inverse());
    }

    MultiPoly reduce_mod(std::uint64_t p) const {
        MultiPoly r(blocks_);
        for (const auto& [e, c] : terms_) r.add_term(e, c.reduce_mod(p));
        return r;
    }

    std::string str() const;

private:
    void check(const MultiPoly& o) const {
        if (!blocks_ || !o.blocks_ || *blocks_ != *o.blocks_)
            throw StructuralError("MultiPoly: mismatched variable blocks");
        if (!terms_.empty() && !o.terms_.empty() &&
            !terms_.begin()->second.same_kind(o.terms_.begin()->second))
            throw StructuralError("MultiPoly: mismatched scalar kinds");
    }

    VarBlocksPtr blocks_;
    TermMap terms_;
};

/// Common block-degree vector of f; rejects inhomogeneous input.
inline Multidegree multidegree_of(const MultiPoly& f) {
    if (f.is_zero())
        throw ZeroPolynomialError("multidegree_of: zero polynomial");
    const VarBlocks& blocks = *f.blocks();
    auto it = f.terms().begin();
    Multidegree d = block_degrees(blocks, it->first);
    const Exponents* first = &it->first;
    for (++it; it != f.terms().end(); ++it) {
        Multidegree d2 = block_degrees(blocks, it->first);
        if (d2 != d) {
            auto mono_str = [&](const Exponents& e) {
                std::string s;
                for (size_t i = 0; i < e.size(); ++i)
                    if (e[i] > 0) {
                        if (!s.empty()) s += "*";
                        s += blocks.name(static_cast<int>(i));
                        if (e[i] > 1) s += "^" + std::to_string(e[i]);
                    }
                return s.empty() ? std::string("1") : s;
            };
            throw InhomogeneousError("inhomogeneous polynomial: terms " +
                                     mono_str(*first) + " and " +
                                     mono_str(it->first) +
                                     " have different block degrees");
        }
    }
    return d;
}

namespace detail {

inline void enumerate_block_monomials(int nvars, int deg,
                                      std::vector<Exponents>& out) {
    // All exponent vectors of length nvars summing to deg.
    Exponents cur(nvars, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == nvars - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int k = left; k >= 0; --k) {
            cur[pos] = k;
            self(self, pos + 1, left - k);
        }
        cur[pos] = 0;
    };
    if (nvars == 0) {
        if (deg == 0) out.push_back({});
        return;
    }
    rec(rec, 0, deg);
}

} // namespace detail

/// All monomials of exact multidegree d, in a deterministic order.
inline std::vector<Exponents> monomials_of_multidegree(const VarBlocks& blocks,
                                                       const Multidegree& d) {
    if (static_cast<int>(d.degrees.size()) != blocks.block_count())
        throw StructuralError("monomials_of_multidegree: block count mismatch");
    std::vector<std::vector<Exponents>> per_block;
    for (int b = 0; b < blocks.block_count(); ++b) {
        std::vector<Exponents> ms;
        detail::enumerate_block_monomials(
            static_cast<int>(blocks.blocks[b].size()), d.degrees[b], ms);
        per_block.push_back(std::move(ms));
    }
    std::vector<Exponents> out;
    Exponents cur(blocks.total_vars(), 0);
    auto rec = [&](auto&& self, int b) -> void {
        if (b == blocks.block_count()) {
            out.push_back(cur);
            return;
        }
        int off = blocks.block_offset(b);
        for (const auto& m : per_block[b]) {
            for (size_t i = 0; i < m.size(); ++i) cur[off + static_cast<int>(i)] = m[i];
            self(self, b + 1);
        }
        for (size_t i = 0; i < blocks.blocks[b].size(); ++i)
            cur[off + static_cast<int>(i)] = 0;
    };
    rec(rec, 0);
    return out;
}

/// Dense random form of multidegree d over F_p; a pure function of
/// (blocks, d, rng state).
inline MultiPoly random_form(const VarBlocksPtr& blocks, const Multidegree& d,
                             std::mt19937_64& rng, std::uint64_t p) {
    MultiPoly f(blocks);
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    for (const auto& e : monomials_of_multidegree(*blocks, d))
        f.add_term(e, Scalar::residue(static_cast<std::int64_t>(dist(rng)), p));
    if (f.is_zero()) {
        // All coefficients drew zero; force a nonzero constant-free retry by
        // bumping the first monomial.
        auto ms = monomials_of_multidegree(*blocks, d);
        f.add_term(ms.front(), Scalar::residue(1, p));
    }
    return f;
}

/// Simultaneous substitution variable -> polynomial; unmapped variables stay.
inline MultiPoly substitute(const MultiPoly& f,
                            const std::map<std::string, MultiPoly>& assignments) {
    const VarBlocksPtr& blocks = f.blocks();
    std::vector<const MultiPoly*> repl(blocks->total_vars(), nullptr);
    for (const auto& [name, g] : assignments) {
        auto idx = blocks->find(name);
        if (!idx)
            throw StructuralError("substitute: unknown variable " + name);
        if (!g.blocks() || *g.blocks() != *blocks)
            throw StructuralError("substitute: replacement has foreign blocks");
        repl[*idx] = &g;
    }
    if (f.is_zero()) return f;
    Scalar one = Scalar::one_like(f.any_coeff());
    MultiPoly result(blocks);
    for (const auto& [e, c] : f.terms()) {
        MultiPoly term = MultiPoly::constant(blocks, c);
        Exponents kept(e.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (repl[i]) {
                for (int k = 0; k < e[i]; ++k) term = term * *repl[i];
            } else {
                kept[i] = e[i];
            }
        }
        term = term * MultiPoly::monomial(blocks, kept, one);
        result = result + term;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Text grammar: terms separated by +/-; term = coeff | coeff*mono | mono;
// mono = var | var^k | products joined by *.
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, VarBlocksPtr blocks, std::uint64_t p)
        : s_(text), blocks_(std::move(blocks)), p_(p) {}

    MultiPoly parse() {
        MultiPoly result(blocks_);
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        for (;;) {
            MultiPoly t = parse_term();
            result = neg ? result - t : result + t;
            skip_ws();
            if (pos_ >= s_.size()) break;
            char c = get();
            if (c == '+')
                neg = false;
            else if (c == '-')
                neg = true;
            else
                fail("expected '+' or '-'");
        }
        return result;
    }

private:
    MultiPoly parse_term() {
        skip_ws();
        Scalar coeff = one();
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_number();
            saw_coeff = true;
            skip_ws();
            if (peek() == '*') {
                get();
                skip_ws();
            } else if (!std::isalpha(static_cast<unsigned char>(peek())) &&
                       peek() != '_' && peek() != '@') {
                return MultiPoly::constant(blocks_, coeff);
            }
        }
        Exponents e(blocks_->total_vars(), 0);
        bool saw_var = false;
        for (;;) {
            skip_ws();
            if (!std::isalpha(static_cast<unsigned char>(peek())) &&
                peek() != '_' && peek() != '@') {
                break;
            }
            std::string name = parse_ident();
            auto idx = blocks_->find(name);
            if (!idx) fail("unknown variable '" + name + "'");
            int k = 1;
            skip_ws();
            if (peek() == '^') {
                get();
                skip_ws();
                k = parse_int();
            }
            e[*idx] += k;
            saw_var = true;
            skip_ws();
            if (peek() == '*') {
                get();
                continue;
            }
            break;
        }
        if (!saw_var && !saw_coeff) fail("expected term");
        return MultiPoly::monomial(blocks_, e, coeff);
    }

    Scalar parse_number() {
        long long v = parse_int();
        return p_ == 0 ? Scalar::rational(v) : Scalar::residue(v, p_);
    }
    int parse_int() {
        size_t start = pos_;
        while (pos_ < s_.size() &&
               std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stoi(s_.substr(start, pos_ - start));
    }
    std::string parse_ident() {
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                s_[pos_] == '_' || s_[pos_] == '@'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }
    Scalar one() {
        return p_ == 0 ? Scalar::rational(1) : Scalar::residue(1, p_);
    }
    void skip_ws() {
        while (pos_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("parse error at column " + std::to_string(pos_ + 1) +
                         ": " + msg + " in '" + s_ + "'");
    }

    const std::string& s_;
    VarBlocksPtr blocks_;
    std::uint64_t p_;
    size_t pos_ = 0;
};

} // namespace detail

/// Parse the polynomial text grammar; p == 0 yields rational coefficients.
inline MultiPoly parse_poly(const std::string& text, const VarBlocksPtr& blocks,
                            std::uint64_t p = 0) {
    return detail::PolyParser(text, blocks, p).parse();
}

inline std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    // Highest terms first for readability.
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string cs = c.str();
        bool negative = !cs.empty() && cs[0] == '-';
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        if (negative) cs = cs.substr(1);
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) {
                if (!mono.empty()) mono += "*";
                mono += blocks_->name(static_cast<int>(i));
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
        if (mono.empty()) {
            os << cs;
        } else if (cs == "1") {
            os << mono;
        } else {
            os << cs << "*" << mono;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Ring morphisms: extend a polynomial into a larger variable table, or
// contract it back when the extra variables do not occur.
// ---------------------------------------------------------------------------

/// Map f into target by variable name; only variables that actually occur
/// in f need to exist there.
inline MultiPoly transport(const MultiPoly& f, const VarBlocksPtr& target) {
    const VarBlocks& src = *f.blocks();
    std::vector<int> map(src.total_vars(), -1);
    MultiPoly r(target);
    for (const auto& [e, c] : f.terms()) {
        Exponents ne(target->total_vars(), 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (map[i] < 0) {
                auto idx = target->find(src.name(static_cast<int>(i)));
                if (!idx)
                    throw StructuralError("transport: variable " +
                                          src.name(static_cast<int>(i)) +
                                          " missing in target blocks");
                map[i] = *idx;
            }
            ne[map[i]] = e[i];
        }
        r.add_term(ne, c);
    }
    return r;
}

} // namespace segrezeta
