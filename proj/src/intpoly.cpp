#include "ideoarith/intpoly.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace ideoarith {

IntPoly::IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    trim();
}

IntPoly IntPoly::monomial(unsigned k, const Int& coeff) {
    IntPoly p;
    if (coeff != 0) {
        p.c.assign(k + 1, Int(0));
        p.c[k] = coeff;
    }
    return p;
}

IntPoly IntPoly::constant(const Int& v) { return monomial(0, v); }

void IntPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool operator==(const IntPoly& a, const IntPoly& b) { return a.c == b.c; }

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return IntPoly(std::move(r));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator-(const IntPoly& a) {
    std::vector<Int> r = a.c;
    for (auto& v : r) v = -v;
    return IntPoly(std::move(r));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(r));
}

IntPoly operator*(const Int& k, const IntPoly& a) {
    if (k == 0) return IntPoly();
    std::vector<Int> r = a.c;
    for (auto& v : r) v *= k;
    return IntPoly(std::move(r));
}

IntPoly poly_pow(const IntPoly& a, unsigned e) {
    IntPoly r = IntPoly::constant(Int(1));
    IntPoly base = a;
    while (e) {
        if (e & 1u) r = r * base;
        base = base * base;
        e >>= 1u;
    }
    return r;
}

IntPoly derivative(const IntPoly& a) {
    if (a.degree() <= 0) return IntPoly();
    std::vector<Int> r(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r[i - 1] = Int(i) * a.c[i];
    return IntPoly(std::move(r));
}

Int eval_int(const IntPoly& a, const Int& x) {
    Int r = 0;
    for (size_t i = a.c.size(); i-- > 0;) r = r * x + a.c[i];
    return r;
}

Rat eval_rat(const IntPoly& a, const Rat& x) {
    Rat r = 0;
    for (size_t i = a.c.size(); i-- > 0;) r = r * x + Rat(a.c[i]);
    return r;
}

Interval eval_interval(const IntPoly& a, const Interval& x) {
    Interval r{Rat(0)};
    for (size_t i = a.c.size(); i-- > 0;) r = r * x + Interval(Rat(a.c[i]));
    return r;
}

Int content(const IntPoly& a) {
    Int g = 0;
    for (const auto& v : a.c) g = boost::multiprecision::gcd(g, v);
    return g < 0 ? Int(-g) : g;
}

IntPoly primitive_part(const IntPoly& a) {
    if (a.is_zero()) return a;
    Int g = content(a);
    std::vector<Int> r = a.c;
    for (auto& v : r) v /= g;
    return IntPoly(std::move(r));
}

std::optional<IntPoly> try_divide_exact(const IntPoly& f, const IntPoly& g) {
    if (g.is_zero()) return std::nullopt;
    if (f.is_zero()) return IntPoly();
    if (f.degree() < g.degree()) return std::nullopt;
    std::vector<Int> rem = f.c;
    std::vector<Int> quo(f.degree() - g.degree() + 1, Int(0));
    for (int k = f.degree() - g.degree(); k >= 0; --k) {
        Int top = rem[k + g.degree()];
        if (top % g.lead() != 0) return std::nullopt;
        Int q = top / g.lead();
        quo[k] = q;
        for (int j = 0; j <= g.degree(); ++j) rem[k + j] -= q * g.c[j];
    }
    for (const auto& v : rem)
        if (v != 0) return std::nullopt;
    return IntPoly(std::move(quo));
}

namespace {

// lead(g)^(deg f - deg g + 1) * f = q*g + r with deg r < deg g.
IntPoly pseudo_rem(const IntPoly& f, const IntPoly& g) {
    IntPoly r = f;
    int dg = g.degree();
    while (!r.is_zero() && r.degree() >= dg) {
        int shift = r.degree() - dg;
        Int cr = r.lead();
        // r <- lead(g)*r - lead(r)*X^shift*g
        std::vector<Int> next(r.c.size(), Int(0));
        for (size_t i = 0; i < r.c.size(); ++i) next[i] = g.lead() * r.c[i];
        for (int j = 0; j <= dg; ++j) next[shift + j] -= cr * g.c[j];
        r = IntPoly(std::move(next));
    }
    return r;
}

IntPoly with_positive_lead(IntPoly p) {
    if (!p.is_zero() && p.lead() < 0) p = -p;
    return p;
}

// Degree of gcd(f, g) mod p, or -1 if a leading coefficient degenerates.
int gcd_degree_mod_p(const IntPoly& f, const IntPoly& g, long long p) {
    auto reduce = [&](const IntPoly& a) {
        std::vector<long long> r(a.c.size());
        for (size_t i = 0; i < a.c.size(); ++i) {
            Int m = a.c[i] % p;
            if (m < 0) m += p;
            r[i] = m.convert_to<long long>();
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    };
    auto fa = reduce(f), fb = reduce(g);
    if (fa.size() != f.c.size() || fb.size() != g.c.size()) return -1;
    while (!fb.empty()) {
        // fa mod fb over Z/p
        long long inv_lead = 1;
        {  // Fermat inverse
            long long base = fb.back() % p, e = p - 2, acc = 1;
            while (e) {
                if (e & 1) acc = static_cast<long long>(static_cast<__int128>(acc) * base % p);
                base = static_cast<long long>(static_cast<__int128>(base) * base % p);
                e >>= 1;
            }
            inv_lead = acc;
        }
        while (fa.size() >= fb.size() && !fa.empty()) {
            long long q = static_cast<long long>(static_cast<__int128>(fa.back()) * inv_lead % p);
            size_t shift = fa.size() - fb.size();
            for (size_t j = 0; j < fb.size(); ++j) {
                long long t = static_cast<long long>(static_cast<__int128>(q) * fb[j] % p);
                fa[shift + j] = (fa[shift + j] - t % p + p) % p;
            }
            while (!fa.empty() && fa.back() == 0) fa.pop_back();
        }
        std::swap(fa, fb);
    }
    return static_cast<int>(fa.size()) - 1;
}

}  // namespace

IntPoly gcd_poly(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return with_positive_lead(primitive_part(b));
    if (b.is_zero()) return with_positive_lead(primitive_part(a));
    IntPoly f = primitive_part(a);
    IntPoly g = primitive_part(b);
    if (f.degree() < g.degree()) std::swap(f, g);
    while (!g.is_zero()) {
        IntPoly r = primitive_part(pseudo_rem(f, g));
        f = g;
        g = r;
    }
    return with_positive_lead(f);
}

std::vector<std::pair<IntPoly, int>> squarefree_decompose(const IntPoly& fin) {
    std::vector<std::pair<IntPoly, int>> out;
    if (fin.degree() <= 0) return out;
    IntPoly f = with_positive_lead(primitive_part(fin));
    // fast certified squarefree test: gcd(f, f') constant mod a good prime
    // bounds deg gcd over Q from above
    for (long long p : {1000000007LL, 998244353LL, 754974721LL}) {
        int d = gcd_degree_mod_p(f, derivative(f), p);
        if (d == 0) {
            out.emplace_back(f, 1);
            return out;
        }
        if (d > 0) break;  // genuine common factor is possible; do exact work
    }
    IntPoly g = gcd_poly(f, derivative(f));
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    IntPoly c = *try_divide_exact(f, g);
    IntPoly d = *try_divide_exact(derivative(f), g) - derivative(c);
    int mult = 1;
    while (c.degree() > 0) {
        IntPoly a = gcd_poly(c, d);
        if (a.degree() > 0) out.emplace_back(a, mult);
        c = *try_divide_exact(c, a);
        d = *try_divide_exact(d, a) - derivative(c);
        ++mult;
    }
    return out;
}

Int bareiss_det(std::vector<std::vector<Int>> m) {
    size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    Int prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

Int resultant_int(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) raise("ZeroPolynomial", "resultant of the zero polynomial");
    int m = f.degree(), n = g.degree();
    if (m == 0 && n == 0) return 1;
    if (m == 0) return pow_int(f.lead(), n);
    if (n == 0) return pow_int(g.lead(), m);
    size_t size = static_cast<size_t>(m + n);
    std::vector<std::vector<Int>> s(size, std::vector<Int>(size, Int(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = f.c[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = g.c[n - j];
    return bareiss_det(std::move(s));
}

Rat cauchy_root_bound(const IntPoly& f) {
    if (f.degree() < 1) raise("BadArgument", "root bound of a constant");
    Int top = 0;
    for (int i = 0; i < f.degree(); ++i) {
        Int a = f.c[i] < 0 ? Int(-f.c[i]) : f.c[i];
        top = std::max(top, a);
    }
    Int lead = f.lead() < 0 ? Int(-f.lead()) : f.lead();
    return Rat(1) + Rat(top, lead);
}

namespace {

struct RatPoly {
    std::vector<Rat> c;
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Rat eval(const Rat& x) const {
        Rat r = 0;
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }
};

RatPoly to_rp(const IntPoly& p) {
    RatPoly r;
    r.c.reserve(p.c.size());
    for (const auto& v : p.c) r.c.emplace_back(v);
    return r;
}

RatPoly rp_rem(RatPoly a, const RatPoly& b) {
    while (a.degree() >= b.degree() && !a.c.empty()) {
        Rat q = a.c.back() / b.c.back();
        size_t shift = a.c.size() - b.c.size();
        for (size_t j = 0; j < b.c.size(); ++j) a.c[shift + j] -= q * b.c[j];
        a.c.pop_back();
        a.trim();
    }
    return a;
}

int sign_of(const Rat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

struct SturmChain {
    std::vector<RatPoly> seq;

    explicit SturmChain(const IntPoly& f) {
        seq.push_back(to_rp(f));
        seq.push_back(to_rp(derivative(f)));
        while (seq.back().degree() >= 0) {
            RatPoly r = rp_rem(seq[seq.size() - 2], seq.back());
            if (r.c.empty()) break;
            for (auto& v : r.c) v = -v;
            seq.push_back(std::move(r));
        }
    }

    int variations_at(const Rat& x) const {
        int var = 0, last = 0;
        for (const auto& p : seq) {
            int s = sign_of(p.eval(x));
            if (s != 0) {
                if (last != 0 && s != last) ++var;
                last = s;
            }
        }
        return var;
    }

    // sign pattern at +inf (dir=+1) or -inf (dir=-1)
    int variations_at_inf(int dir) const {
        int var = 0, last = 0;
        for (const auto& p : seq) {
            if (p.degree() < 0) continue;
            int s = sign_of(p.c.back());
            if (dir < 0 && p.degree() % 2 == 1) s = -s;
            if (s != 0) {
                if (last != 0 && s != last) ++var;
                last = s;
            }
        }
        return var;
    }
};

}  // namespace

int count_real_roots(const IntPoly& f, const Rat& a, const Rat& b) {
    if (f.degree() < 0) raise("ZeroPolynomial", "root count of the zero polynomial");
    if (f.degree() == 0) return 0;
    if (a >= b) raise("BadArgument", "root count over an empty interval");
    if (eval_rat(f, a) == 0 || eval_rat(f, b) == 0)
        raise("BadArgument", "Sturm endpoints must not be roots");
    SturmChain chain(f);
    return chain.variations_at(a) - chain.variations_at(b);
}

int count_real_roots(const IntPoly& f) {
    if (f.degree() < 0) raise("ZeroPolynomial", "root count of the zero polynomial");
    if (f.degree() == 0) return 0;
    SturmChain chain(f);
    return chain.variations_at_inf(-1) - chain.variations_at_inf(+1);
}

IntPoly interpolate_int(const std::vector<std::pair<Int, Int>>& points) {
    size_t k = points.size();
    if (k == 0) return IntPoly();
    // Newton divided differences, then expansion to the monomial basis
    std::vector<Rat> dd(k);
    for (size_t i = 0; i < k; ++i) dd[i] = Rat(points[i].second);
    for (size_t level = 1; level < k; ++level)
        for (size_t i = k - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / Rat(points[i].first - points[i - level].first);
            if (i == level) break;
        }
    std::vector<Rat> result(k, Rat(0));
    std::vector<Rat> basis(k, Rat(0));
    basis[0] = 1;
    size_t basis_deg = 0;
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j <= basis_deg; ++j) result[j] += dd[i] * basis[j];
        if (i + 1 < k) {  // basis *= (X - x_i)
            Rat xi(points[i].first);
            for (size_t j = basis_deg + 1; j >= 1; --j) basis[j] = basis[j - 1] - xi * basis[j];
            basis[0] = -xi * basis[0];
            ++basis_deg;
        }
    }
    std::vector<Int> coeffs;
    coeffs.reserve(k);
    for (const auto& v : result) {
        if (den(v) != 1) raise("NonIntegralInterpolation", "interpolant is not integral");
        coeffs.push_back(num(v));
    }
    return IntPoly(std::move(coeffs));
}

std::string poly_text(const IntPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int e = f.degree(); e >= 0; --e) {
        const Int& a = f.c[static_cast<size_t>(e)];
        if (a == 0) continue;
        if (!out.empty())
            out += a > 0 ? "+" : "-";
        else if (a < 0)
            out += "-";
        Int mag = abs(a);
        if (e == 0) {
            out += mag.str();
        } else {
            if (mag != 1) out += mag.str();
            out += "x";
            if (e > 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

IntPoly parse_poly_text(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch == 'X' ? 'x' : ch;
    if (t.empty()) raise("MalformedSpec", "empty polynomial text");

    std::vector<Int> coeffs;
    auto add_term = [&](const Int& coef, size_t exp) {
        if (coeffs.size() <= exp) coeffs.resize(exp + 1, Int(0));
        coeffs[exp] += coef;
    };

    size_t i = 0;
    while (i < t.size()) {
        int sign = 1;
        if (t[i] == '+' || t[i] == '-') {
            sign = t[i] == '-' ? -1 : 1;
            ++i;
        }
        if (i >= t.size()) raise("MalformedSpec", "dangling sign in polynomial text");

        std::string digits;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) digits += t[i++];
        if (i < t.size() && t[i] == '*') {
            if (digits.empty() || i + 1 >= t.size() || t[i + 1] != 'x')
                raise("MalformedSpec", "misplaced '*' in polynomial text");
            ++i;
        }

        if (i < t.size() && t[i] == 'x') {
            ++i;
            size_t exp = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                std::string ed;
                while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ed += t[i++];
                if (ed.empty() || ed.size() > 6)
                    raise("MalformedSpec", "missing or oversized exponent in polynomial text");
                exp = std::stoul(ed);
            }
            Int coef = digits.empty() ? Int(1) : Int(digits);
            add_term(sign * coef, exp);
        } else {
            if (digits.empty()) raise("MalformedSpec", "unreadable term in polynomial text");
            add_term(sign * Int(digits), 0);
        }
    }
    return IntPoly(std::move(coeffs));
}

}  // namespace ideoarith
