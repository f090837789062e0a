#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "genfield/fock.hpp"

namespace genfield {

// One ladder symbol: a(mode) or ad(mode).
struct LadderSymbol {
    std::uint32_t mode;
    bool dagger;

    friend bool operator==(const LadderSymbol&, const LadderSymbol&) = default;
    friend auto operator<=>(const LadderSymbol& a, const LadderSymbol& b) {
        if (auto c = a.mode <=> b.mode; c != 0) return c;
        return a.dagger <=> b.dagger;
    }
};

// coefficient * ordered product of symbols (empty product = identity)
struct LadderMonomial {
    cplx coeff{1.0, 0.0};
    std::vector<LadderSymbol> symbols;

    bool operator==(const LadderMonomial&) const = default;
};

// Finite sum of monomials over the canonical ladder algebra [a_i, a_j'] = delta_ij.
// Kept in canonical form: monomials sorted by symbol sequence, like sequences
// merged, exact-zero coefficients dropped.
class LadderExpression {
public:
    LadderExpression() = default;
    explicit LadderExpression(std::vector<LadderMonomial> monomials);

    static LadderExpression constant(cplx c);
    static LadderExpression symbol(std::uint32_t mode, bool dagger, cplx coeff = 1.0);

    const std::vector<LadderMonomial>& monomials() const { return monomials_; }
    bool empty() const { return monomials_.empty(); }
    int degree() const;  // longest symbol string, 0 for constants/empty
    std::uint32_t max_mode() const;

    LadderExpression operator+(const LadderExpression& rhs) const;
    LadderExpression operator-(const LadderExpression& rhs) const;
    LadderExpression operator*(const LadderExpression& rhs) const;
    LadderExpression operator*(cplx scale) const;
    LadderExpression pow(int n) const;

    friend bool operator==(const LadderExpression&, const LadderExpression&) = default;

private:
    std::vector<LadderMonomial> monomials_;  // canonical
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := coeff? ('*'? factor)*
//   factor := 'a(' idx ')' | 'ad(' idx ')' | factor '^' nat
//   coeff  := signed decimal | '(' re ',' im ')'
// Whitespace is insignificant. A leading sign on the first term is accepted.
LadderExpression parse_ladder(const std::string& text);

// Canonical text form; parse_ladder(print_ladder(e)) == e exactly.
std::string print_ladder(const LadderExpression& e);

// Rewrites to normal order (all ad's left of all a's) using
// a_i a_j' -> a_j' a_i + delta_ij on the leftmost misordered adjacent pair,
// to a fixed point. Equal to the input as an operator on the untruncated space.
LadderExpression normal_order(const LadderExpression& e);

// Wick (normal-product) ordering: reorders each monomial with daggers first
// and *discards* the commutator terms. Not equal to the input as an operator;
// this is the :X: used to build normal-ordered Hamiltonians.
LadderExpression wick_order(const LadderExpression& e);

bool is_normal_ordered(const LadderExpression& e);

// Matrix realization on the truncated occupation basis. Symbols act right to
// left; creation amplitudes leaving the truncation are dropped, so products of
// k symbols are trusted on columns with total occupation <= n_max - k.
OperatorMatrix to_matrix(const LadderExpression& e, const OccupationBasis& basis);

}  // namespace genfield
