#include "sosv/polynomial.hpp"

#include <cctype>
#include <sstream>

#include "sosv/linalg.hpp"

namespace sosv {

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree) {
    std::vector<Monomial> out;
    std::vector<int> exps(nvars, 0);
    // enumerate compositions of `degree` into nvars parts
    const auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i + 1 == nvars) {
            exps[i] = remaining;
            out.push_back(Monomial(exps));
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            exps[i] = e;
            self(self, i + 1, remaining - e);
        }
    };
    if (nvars == 0) return out;
    rec(rec, 0, degree);
    std::sort(out.begin(), out.end(), GrevlexGreater{});
    return out;
}

RingPtr make_ring_xn(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    return make_ring(std::move(names));
}

Polynomial::Polynomial(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
    if (sgn(c) != 0) terms_.emplace(Monomial::one(ring_->nvars()), c);
}

Polynomial Polynomial::variable(const RingPtr& ring, std::size_t i) {
    return monomial_term(ring, Monomial::var(i, ring->nvars()), Rational(1));
}

Polynomial Polynomial::monomial_term(const RingPtr& ring, Monomial m, Rational c) {
    Polynomial p(ring);
    if (m.nvars() != ring->nvars()) throw std::invalid_argument("monomial arity mismatch");
    if (sgn(c) != 0) p.terms_.emplace(std::move(m), std::move(c));
    return p;
}

std::optional<int> Polynomial::degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.deg);
    return d;
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.begin()->first.deg;
    for (const auto& [m, c] : terms_)
        if (m.deg != d) return false;
    return true;
}

std::optional<int> Polynomial::homogeneous_degree() const {
    if (terms_.empty() || !is_homogeneous()) return std::nullopt;
    return terms_.begin()->first.deg;
}

const Monomial& Polynomial::leading_monomial() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.begin()->first;
}

const Rational& Polynomial::leading_coeff() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.begin()->second;
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::check_ring(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("ring mismatch");
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_ring(o);
    Polynomial r = *this;
    if (!r.ring_) r.ring_ = o.ring_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_ring(o);
    Polynomial r = *this;
    if (!r.ring_) r.ring_ = o.ring_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_ring(o);
    Polynomial r(ring_ ? ring_ : o.ring_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(ring_);
    if (sgn(c) == 0) return r;
    for (const auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!same_ring(ring_, o.ring_) && !terms_.empty() && !o.terms_.empty())
        return false;
    return terms_ == o.terms_;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r(ring_, Rational(1));
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    if (ring_ && point.size() != ring_->nvars())
        throw std::invalid_argument("evaluation point dimension mismatch");
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i] > 0) t *= pow_rat(point[i], static_cast<unsigned long>(m.exps[i]));
        total += t;
    }
    return total;
}

Int Polynomial::evaluate_int(const std::vector<Int>& point) const {
    if (ring_ && point.size() != ring_->nvars())
        throw std::invalid_argument("evaluation point dimension mismatch");
    Int total(0);
    for (const auto& [m, c] : terms_) {
        if (c.get_den() != 1) throw std::logic_error("evaluate_int on non-integer coefficients");
        Int t = c.get_num();
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            for (int e = 0; e < m.exps[i]; ++e) t *= point[i];
        total += t;
    }
    return total;
}

Polynomial Polynomial::homogenize(std::size_t new_var, int target_degree) const {
    auto d = degree();
    if (d && *d > target_degree)
        throw std::invalid_argument("homogenize: target degree below polynomial degree");
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_) {
        if (m.exps[new_var] != 0)
            throw std::invalid_argument("homogenize: polynomial already uses the new variable");
        Monomial mm = m;
        mm.exps[new_var] = target_degree - m.deg;
        mm.deg = target_degree;
        r.terms_.emplace(std::move(mm), c);
    }
    return r;
}

Polynomial Polynomial::primitive_part() const {
    if (terms_.empty()) return *this;
    Int den_lcm(1), num_gcd(0);
    for (const auto& [m, c] : terms_) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    }
    Rational scale = make_rational(den_lcm, num_gcd);
    if (sgn(leading_coeff()) < 0) scale = -scale;
    return *this * scale;
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) return *this;
    return *this * make_rational(leading_coeff().get_den(), leading_coeff().get_num());
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (sgn(a) < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        first = false;
        bool coeff_shown = (a != 1) || m.is_one();
        if (coeff_shown) os << rat_to_string(a);
        bool need_star = coeff_shown;
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            if (need_star) os << "*";
            os << ring_->vars[i];
            if (m.exps[i] > 1) os << "^" << m.exps[i];
            need_star = true;
        }
    }
    return os.str();
}

// ---- expression parser ----

namespace {

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

struct ExprParser {
    Lexer lex;
    const RingPtr& ring;
    const std::function<std::optional<Polynomial>(const std::string&)>& lookup;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(lex.pos, msg); }

    Int parse_uint() {
        lex.skip_ws();
        std::size_t start = lex.pos;
        while (lex.pos < lex.text.size() && std::isdigit(static_cast<unsigned char>(lex.text[lex.pos])))
            ++lex.pos;
        if (lex.pos == start) fail("expected integer");
        return Int(lex.text.substr(start, lex.pos - start));
    }

    std::string parse_ident() {
        lex.skip_ws();
        std::size_t start = lex.pos;
        while (lex.pos < lex.text.size() &&
               (std::isalnum(static_cast<unsigned char>(lex.text[lex.pos])) || lex.text[lex.pos] == '_'))
            ++lex.pos;
        if (lex.pos == start) fail("expected identifier");
        return lex.text.substr(start, lex.pos - start);
    }

    Polynomial parse_base() {
        char c = lex.peek();
        if (c == '(') {
            lex.eat('(');
            Polynomial e = parse_expr();
            if (!lex.eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int num = parse_uint();
            if (lex.peek() == '/') {
                lex.eat('/');
                Int den = parse_uint();
                if (den == 0) fail("zero denominator");
                return Polynomial(ring, make_rational(num, den));
            }
            return Polynomial(ring, Rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = parse_ident();
            int vi = ring->var_index(name);
            if (vi >= 0) return Polynomial::variable(ring, static_cast<std::size_t>(vi));
            if (lookup) {
                if (auto p = lookup(name)) return *p;
            }
            fail("unknown name '" + name + "'");
        }
        fail("expected term");
    }

    Polynomial parse_power() {
        Polynomial base = parse_base();
        if (lex.eat('^')) {
            Int e = parse_uint();
            if (e < 0 || e > 512) fail("exponent out of range");
            return base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    Polynomial parse_factor() {
        if (lex.eat('-')) return -parse_factor();
        if (lex.eat('+')) return parse_factor();
        return parse_power();
    }

    Polynomial parse_term() {
        Polynomial p = parse_factor();
        while (lex.eat('*')) p = p * parse_factor();
        return p;
    }

    Polynomial parse_expr() {
        Polynomial p = parse_term();
        for (;;) {
            if (lex.eat('+'))
                p = p + parse_term();
            else if (lex.eat('-'))
                p = p - parse_term();
            else
                break;
        }
        return p;
    }
};

}  // namespace

Polynomial parse_polynomial(
    const RingPtr& ring, const std::string& text,
    const std::function<std::optional<Polynomial>(const std::string&)>& lookup) {
    ExprParser parser{Lexer{text}, ring, lookup};
    Polynomial p = parser.parse_expr();
    parser.lex.skip_ws();
    if (parser.lex.pos != text.size())
        throw ParseError(parser.lex.pos, "unexpected trailing input");
    return p;
}

// ---- Newton polytopes ----

bool in_convex_hull(const std::vector<std::vector<Rational>>& points,
                    const std::vector<Rational>& query) {
    if (points.empty()) return false;
    const std::size_t dim = query.size();
    // Feasibility of { lambda >= 0 : sum lambda_i = 1, sum lambda_i p_i = q }.
    QMat a(dim + 1, QVec(points.size(), Rational(0)));
    QVec b(dim + 1, Rational(0));
    for (std::size_t j = 0; j < points.size(); ++j) {
        a[0][j] = 1;
        for (std::size_t i = 0; i < dim; ++i) a[i + 1][j] = points[j][i];
    }
    b[0] = 1;
    for (std::size_t i = 0; i < dim; ++i) b[i + 1] = query[i];
    return lp_feasible_point(a, b).has_value();
}

NewtonPolytope newton_polytope(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("newton polytope of zero polynomial");
    std::vector<Monomial> pts;
    for (const auto& [m, c] : p.terms()) pts.push_back(m);
    NewtonPolytope np;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<std::vector<Rational>> others;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            QVec v;
            for (int e : pts[j].exps) v.push_back(Rational(e));
            others.push_back(std::move(v));
        }
        QVec q;
        for (int e : pts[i].exps) q.push_back(Rational(e));
        if (others.empty() || !in_convex_hull(others, q)) np.vertices.push_back(pts[i]);
    }
    std::sort(np.vertices.begin(), np.vertices.end(), GrevlexGreater{});
    return np;
}

}  // namespace sosv
