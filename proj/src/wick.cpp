#include "genfield/wick.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <deque>

namespace genfield {

namespace {

bool symbol_seq_less(const LadderMonomial& a, const LadderMonomial& b) {
    if (a.symbols.size() != b.symbols.size()) return a.symbols.size() < b.symbols.size();
    return a.symbols < b.symbols;
}

std::vector<LadderMonomial> canonicalize(std::vector<LadderMonomial> ms) {
    std::sort(ms.begin(), ms.end(), symbol_seq_less);
    std::vector<LadderMonomial> out;
    for (auto& m : ms) {
        if (!out.empty() && out.back().symbols == m.symbols)
            out.back().coeff += m.coeff;
        else
            out.push_back(std::move(m));
    }
    std::erase_if(out, [](const LadderMonomial& m) { return m.coeff == cplx(0.0, 0.0); });
    return out;
}

}  // namespace

LadderExpression::LadderExpression(std::vector<LadderMonomial> monomials)
    : monomials_(canonicalize(std::move(monomials))) {}

LadderExpression LadderExpression::constant(cplx c) {
    return LadderExpression({LadderMonomial{c, {}}});
}

LadderExpression LadderExpression::symbol(std::uint32_t mode, bool dagger, cplx coeff) {
    return LadderExpression({LadderMonomial{coeff, {LadderSymbol{mode, dagger}}}});
}

int LadderExpression::degree() const {
    std::size_t deg = 0;
    for (const auto& m : monomials_) deg = std::max(deg, m.symbols.size());
    return static_cast<int>(deg);
}

std::uint32_t LadderExpression::max_mode() const {
    std::uint32_t mm = 0;
    for (const auto& m : monomials_)
        for (const auto& s : m.symbols) mm = std::max(mm, s.mode);
    return mm;
}

LadderExpression LadderExpression::operator+(const LadderExpression& rhs) const {
    std::vector<LadderMonomial> ms = monomials_;
    ms.insert(ms.end(), rhs.monomials_.begin(), rhs.monomials_.end());
    return LadderExpression(std::move(ms));
}

LadderExpression LadderExpression::operator-(const LadderExpression& rhs) const {
    return *this + rhs * cplx(-1.0, 0.0);
}

LadderExpression LadderExpression::operator*(const LadderExpression& rhs) const {
    std::vector<LadderMonomial> ms;
    ms.reserve(monomials_.size() * rhs.monomials_.size());
    for (const auto& a : monomials_)
        for (const auto& b : rhs.monomials_) {
            LadderMonomial m;
            m.coeff = a.coeff * b.coeff;
            m.symbols = a.symbols;
            m.symbols.insert(m.symbols.end(), b.symbols.begin(), b.symbols.end());
            ms.push_back(std::move(m));
        }
    return LadderExpression(std::move(ms));
}

LadderExpression LadderExpression::operator*(cplx scale) const {
    std::vector<LadderMonomial> ms = monomials_;
    for (auto& m : ms) m.coeff *= scale;
    return LadderExpression(std::move(ms));
}

LadderExpression LadderExpression::pow(int n) const {
    if (n < 0) throw std::invalid_argument("ladder expression: negative power");
    LadderExpression acc = constant(1.0);
    for (int k = 0; k < n; ++k) acc = acc * *this;
    return acc;
}

// ---------------- parsing ----------------

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    LadderExpression run() {
        LadderExpression e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError(pos_, "trailing characters");
        return e;
    }

private:
    LadderExpression expr() {
        skip_ws();
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') sign = (take() == '-') ? -1.0 : 1.0;
        LadderExpression acc = term() * cplx(sign, 0.0);
        while (true) {
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                const char op = take();
                LadderExpression t = term();
                acc = (op == '+') ? acc + t : acc - t;
            } else {
                return acc;
            }
        }
    }

    LadderExpression term() {
        skip_ws();
        LadderMonomial m;
        bool any = false;
        if (coeff_ahead()) {
            m.coeff = coeff();
            any = true;
        }
        while (true) {
            skip_ws();
            if (peek() == '*') {
                take();
                skip_ws();
            }
            if (!factor_ahead()) break;
            factor(m.symbols);
            any = true;
        }
        if (!any) throw ParseError(pos_, "expected term");
        return LadderExpression({m});
    }

    // a factor starts with 'a' ('a(' or 'ad(')
    bool factor_ahead() const { return peek() == 'a'; }

    // a coefficient starts with a digit, '.', or '(' not belonging to a symbol
    bool coeff_ahead() const {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(';
    }

    void factor(std::vector<LadderSymbol>& symbols) {
        skip_ws();
        const std::size_t at = pos_;
        expect('a');
        bool dagger = false;
        if (peek() == 'd') {
            take();
            dagger = true;
        }
        expect('(');
        skip_ws();
        const long idx = integer();
        if (idx < 0) throw ParseError(at, "mode index must be non-negative");
        skip_ws();
        expect(')');
        int repeat = 1;
        skip_ws();
        while (peek() == '^') {
            take();
            skip_ws();
            const long n = integer();
            if (n < 0) throw ParseError(pos_, "exponent must be a natural number");
            repeat *= static_cast<int>(n);
            skip_ws();
        }
        for (int k = 0; k < repeat; ++k)
            symbols.push_back(LadderSymbol{static_cast<std::uint32_t>(idx), dagger});
    }

    cplx coeff() {
        skip_ws();
        if (peek() == '(') {
            take();
            const double re = decimal();
            skip_ws();
            expect(',');
            const double im = decimal();
            skip_ws();
            expect(')');
            return {re, im};
        }
        return {decimal(), 0.0};
    }

    double decimal() {
        skip_ws();
        const std::size_t start = pos_;
        if (peek() == '+' || peek() == '-') take();
        bool digits = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) { take(); digits = true; }
        if (peek() == '.') {
            take();
            while (std::isdigit(static_cast<unsigned char>(peek()))) { take(); digits = true; }
        }
        if (!digits) throw ParseError(start, "expected number");
        if (peek() == 'e' || peek() == 'E') {
            take();
            if (peek() == '+' || peek() == '-') take();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError(pos_, "malformed exponent");
            while (std::isdigit(static_cast<unsigned char>(peek()))) take();
        }
        return std::strtod(s_.c_str() + start, nullptr);
    }

    long integer() {
        skip_ws();
        const std::size_t start = pos_;
        if (peek() == '+' || peek() == '-') take();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError(start, "expected integer");
        while (std::isdigit(static_cast<unsigned char>(peek()))) take();
        return std::strtol(s_.c_str() + start, nullptr, 10);
    }

    void expect(char c) {
        if (peek() != c)
            throw ParseError(pos_, std::string("expected '") + c + "'");
        take();
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char take() { return s_[pos_++]; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

LadderExpression parse_ladder(const std::string& text) { return Parser(text).run(); }

std::string print_ladder(const LadderExpression& e) {
    if (e.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& m : e.monomials()) {
        cplx c = m.coeff;
        if (first) {
            if (c.imag() == 0.0 && c.real() < 0.0) {
                out += "-";
                c = -c;
            }
        } else {
            if (c.imag() == 0.0 && c.real() < 0.0) {
                out += " - ";
                c = -c;
            } else {
                out += " + ";
            }
        }
        first = false;
        std::string coeff_txt;
        if (c.imag() != 0.0)
            coeff_txt = "(" + format_double(c.real()) + "," + format_double(c.imag()) + ")";
        else if (c.real() != 1.0 || m.symbols.empty())
            coeff_txt = format_double(c.real());
        out += coeff_txt;
        for (std::size_t k = 0; k < m.symbols.size(); ++k) {
            if (k > 0 || !coeff_txt.empty()) out += "*";
            const auto& s = m.symbols[k];
            out += s.dagger ? "ad(" : "a(";
            out += std::to_string(s.mode) + ")";
        }
    }
    return out;
}

// ---------------- rewriting ----------------

bool is_normal_ordered(const LadderExpression& e) {
    for (const auto& m : e.monomials())
        for (std::size_t k = 0; k + 1 < m.symbols.size(); ++k)
            if (!m.symbols[k].dagger && m.symbols[k + 1].dagger) return false;
    return true;
}

namespace {

// sort the dagger block and the plain block by mode; same-type symbols commute
// exactly, so this is a pure relabeling that fixes a canonical representative
LadderMonomial sort_within_blocks(LadderMonomial m) {
    auto mid = std::stable_partition(m.symbols.begin(), m.symbols.end(),
                                     [](const LadderSymbol& s) { return s.dagger; });
    std::sort(m.symbols.begin(), mid,
              [](const LadderSymbol& a, const LadderSymbol& b) { return a.mode < b.mode; });
    std::sort(mid, m.symbols.end(),
              [](const LadderSymbol& a, const LadderSymbol& b) { return a.mode < b.mode; });
    return m;
}

}  // namespace

LadderExpression normal_order(const LadderExpression& e) {
    std::vector<LadderMonomial> done;
    std::deque<LadderMonomial> work(e.monomials().begin(), e.monomials().end());
    while (!work.empty()) {
        LadderMonomial m = std::move(work.front());
        work.pop_front();
        std::size_t hit = m.symbols.size();
        for (std::size_t k = 0; k + 1 < m.symbols.size(); ++k) {
            if (!m.symbols[k].dagger && m.symbols[k + 1].dagger) {
                hit = k;
                break;
            }
        }
        if (hit == m.symbols.size()) {
            done.push_back(sort_within_blocks(std::move(m)));
            continue;
        }
        // a_i ad_j -> ad_j a_i (+ delta_ij with the pair removed)
        LadderMonomial swapped = m;
        std::swap(swapped.symbols[hit], swapped.symbols[hit + 1]);
        if (m.symbols[hit].mode == m.symbols[hit + 1].mode) {
            LadderMonomial contracted = m;
            contracted.symbols.erase(contracted.symbols.begin() + hit,
                                     contracted.symbols.begin() + hit + 2);
            work.push_back(std::move(contracted));
        }
        work.push_back(std::move(swapped));
    }
    return LadderExpression(std::move(done));
}

LadderExpression wick_order(const LadderExpression& e) {
    std::vector<LadderMonomial> out;
    out.reserve(e.monomials().size());
    for (const auto& m : e.monomials()) out.push_back(sort_within_blocks(m));
    return LadderExpression(std::move(out));
}

OperatorMatrix to_matrix(const LadderExpression& e, const OccupationBasis& basis) {
    if (!e.empty() && e.max_mode() >= static_cast<std::uint32_t>(basis.n_modes()))
        throw std::invalid_argument("to_matrix: expression references mode outside the basis");
    OperatorMatrix M = OperatorMatrix::Zero(basis.dim(), basis.dim());
    for (const auto& m : e.monomials()) {
        for (int v = 0; v < basis.dim(); ++v) {
            // each monomial maps a basis state to a scalar multiple of one state
            std::vector<std::uint8_t> occ = basis.occupations(v);
            int total = basis.total(v);
            double factor = 1.0;
            bool dead = false;
            for (auto it = m.symbols.rbegin(); it != m.symbols.rend(); ++it) {
                if (it->dagger) {
                    if (total + 1 > basis.n_max()) { dead = true; break; }  // truncation
                    occ[it->mode] += 1;
                    ++total;
                    factor *= std::sqrt(static_cast<double>(occ[it->mode]));
                } else {
                    if (occ[it->mode] == 0) { dead = true; break; }
                    factor *= std::sqrt(static_cast<double>(occ[it->mode]));
                    occ[it->mode] -= 1;
                    --total;
                }
            }
            if (dead) continue;
            M(basis.index_of(occ), v) += m.coeff * factor;
        }
    }
    return M;
}

}  // namespace genfield
