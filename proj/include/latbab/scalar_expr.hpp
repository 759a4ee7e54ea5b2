#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "latbab/errors.hpp"
#include "latbab/rational.hpp"

namespace latbab {

// Exact scalar of the form r (rational) or r*sqrt(s) with rational s > 0.
// This grammar covers every basis entry used by the lattice catalog; anything
// else is carried as a plain double with no exact form attached.
class ScalarExpr {
public:
    ScalarExpr() : coeff_(0) {}
    ScalarExpr(Rational r) : coeff_(std::move(r)) {}  // NOLINT: implicit by design
    ScalarExpr(long long n) : coeff_(Rational(n)) {}  // NOLINT

    ScalarExpr(Rational r, Rational radicand)
        : coeff_(std::move(r)), radicand_(std::move(radicand)) {
        if (*radicand_ <= Rational(0))
            throw Error("ScalarExpr: radicand must be positive");
        if (radicand_->is_integer() && radicand_->num() == 1) radicand_.reset();
        if (coeff_.is_zero()) radicand_.reset();
    }

    const Rational& coeff() const { return coeff_; }
    const std::optional<Rational>& radicand() const { return radicand_; }
    bool is_rational() const { return !radicand_.has_value(); }
    bool is_zero() const { return coeff_.is_zero(); }

    double value() const {
        double v = coeff_.to_double();
        if (radicand_) v *= std::sqrt(radicand_->to_double());
        return v;
    }

    ScalarExpr operator-() const {
        ScalarExpr e = *this;
        e.coeff_ = -e.coeff_;
        return e;
    }

    // Exact ratio a/b when both share the same radicand (or are plain
    // rationals); empty otherwise.
    static std::optional<Rational> exact_ratio(const ScalarExpr& a, const ScalarExpr& b) {
        if (b.is_zero()) return std::nullopt;
        if (a.is_zero()) return Rational(0);
        if (a.radicand_.has_value() != b.radicand_.has_value()) return std::nullopt;
        if (a.radicand_ && *a.radicand_ != *b.radicand_) return std::nullopt;
        return a.coeff_ / b.coeff_;
    }

    std::string str() const {
        if (!radicand_) return coeff_.str();
        std::string s;
        if (coeff_ == Rational(1)) {
        } else if (coeff_ == Rational(-1)) {
            s = "-";
        } else {
            s = coeff_.str() + "*";
        }
        return s + "sqrt(" + radicand_->str() + ")";
    }

private:
    Rational coeff_;
    std::optional<Rational> radicand_;
};

namespace detail {

// "123", "-4" -> BigInt; returns false on malformed input.
inline bool parse_bigint(const std::string& s, BigInt& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    out = BigInt(s);
    return true;
}

// integer | p/q | finite decimal -> exact rational.
inline bool parse_rational_token(const std::string& tok, Rational& out) {
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
        BigInt p, q;
        if (!parse_bigint(tok.substr(0, slash), p)) return false;
        if (!parse_bigint(tok.substr(slash + 1), q)) return false;
        if (q == 0) return false;
        out = Rational(p, q);
        return true;
    }
    auto dot = tok.find('.');
    if (dot != std::string::npos) {
        std::string ip = tok.substr(0, dot), fp = tok.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (neg || (!ip.empty() && ip[0] == '+')) ip = ip.substr(1);
        if (ip.empty()) ip = "0";
        BigInt ipart, fpart(0);
        if (!parse_bigint(ip, ipart)) return false;
        BigInt scale(1);
        if (!fp.empty()) {
            if (!parse_bigint(fp, fpart)) return false;
            for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
        }
        Rational r = Rational(ipart) + Rational(fpart, scale);
        out = neg ? -r : r;
        return true;
    }
    BigInt n;
    if (!parse_bigint(tok, n)) return false;
    out = Rational(n);
    return true;
}

}  // namespace detail

// Entry grammar: integer | "p/q" | decimal | "[r*]sqrt(s)" with r, s rational
// (r may carry a sign; "sqrt(s)" and "-sqrt(s)" are accepted).
inline ScalarExpr parse_scalar_expr(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty basis entry");

    auto sq = s.find("sqrt(");
    if (sq != std::string::npos) {
        if (s.back() != ')')
            throw ParseError("malformed entry '" + text + "': expected ')'");
        std::string inner = s.substr(sq + 5, s.size() - sq - 6);
        Rational rad;
        if (!detail::parse_rational_token(inner, rad) || rad <= Rational(0))
            throw ParseError("malformed entry '" + text + "': bad radicand");
        std::string head = s.substr(0, sq);
        Rational coeff(1);
        if (head == "-") {
            coeff = Rational(-1);
        } else if (!head.empty()) {
            if (head.back() != '*')
                throw ParseError("malformed entry '" + text + "': expected '*' before sqrt");
            head.pop_back();
            if (!detail::parse_rational_token(head, coeff))
                throw ParseError("malformed entry '" + text + "': bad coefficient");
        }
        return ScalarExpr(coeff, rad);
    }

    Rational r;
    if (!detail::parse_rational_token(s, r))
        throw ParseError("malformed entry '" + text + "'");
    return ScalarExpr(r);
}

}  // namespace latbab
