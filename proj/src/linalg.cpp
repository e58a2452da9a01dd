#include "sosv/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace sosv {

QMat qmat_zero(std::size_t rows, std::size_t cols) {
    return QMat(rows, QVec(cols, Rational(0)));
}

QMat qmat_identity(std::size_t n) {
    QMat m = qmat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
    if (a.empty() || b.empty()) return {};
    QMat r = qmat_zero(a.size(), b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (sgn(a[i][k]) == 0) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

QVec qmat_apply(const QMat& a, const QVec& x) {
    QVec r(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (sgn(a[i][j]) != 0) r[i] += a[i][j] * x[j];
    return r;
}

QMat qmat_transpose(const QMat& a) {
    if (a.empty()) return {};
    QMat r = qmat_zero(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
    return r;
}

std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        Rational inv_p = Rational(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv_p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(QMat m) { return rref(m).size(); }

std::vector<QVec> kernel_basis(const QMat& m_in) {
    if (m_in.empty()) return {};
    QMat m = m_in;
    const std::size_t cols = m[0].size();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        QVec v(cols, Rational(0));
        v[free_c] = 1;
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            v[pivots[pi]] = -m[pi][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVec> solve(const QMat& m_in, const QVec& b) {
    if (m_in.empty()) return QVec{};
    const std::size_t rows = m_in.size(), cols = m_in[0].size();
    QMat aug = m_in;
    for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    auto pivots = rref(aug);
    QVec x(cols, Rational(0));
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
        if (pivots[pi] == cols) return std::nullopt;  // pivot in rhs: inconsistent
        x[pivots[pi]] = aug[pi][cols];
    }
    return x;
}

std::optional<QMat> inverse(const QMat& m_in) {
    const std::size_t n = m_in.size();
    QMat aug = m_in;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rational(1) : Rational(0));
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    QMat inv = qmat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

std::optional<QVec> lp_feasible_point(const QMat& a_in, const QVec& b_in) {
    // Phase-one simplex on: min sum(artificials) s.t. A x + s = b, x,s >= 0.
    if (a_in.empty()) return QVec{};
    const std::size_t m = a_in.size();
    const std::size_t n = a_in[0].size();
    QMat a = a_in;
    QVec b = b_in;
    for (std::size_t i = 0; i < m; ++i) {
        if (sgn(b[i]) < 0) {
            b[i] = -b[i];
            for (auto& v : a[i]) v = -v;
        }
    }
    // tableau: rows 0..m-1 constraints, row m objective (sum of artificial rows)
    const std::size_t total = n + m;
    QMat t = qmat_zero(m + 1, total + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][total] = b[i];
    }
    for (std::size_t j = 0; j <= total; ++j) {
        Rational s(0);
        for (std::size_t i = 0; i < m; ++i) s += t[i][j];
        t[m][j] = -s;  // reduced costs for minimizing artificial sum
    }
    for (std::size_t j = n; j < total; ++j) t[m][j] = 0;
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        // Bland: entering = smallest index with negative reduced cost
        std::size_t enter = total;
        for (std::size_t j = 0; j < total; ++j) {
            if (sgn(t[m][j]) < 0) {
                enter = j;
                break;
            }
        }
        if (enter == total) break;
        // ratio test, ties by smallest basis index (Bland)
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (sgn(t[i][enter]) <= 0) continue;
            Rational ratio = t[i][total] / t[i][enter];
            if (leave == m || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == m) break;  // unbounded; cannot happen in phase one
        Rational piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || sgn(t[i][enter]) == 0) continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    if (sgn(t[m][total]) != 0) return std::nullopt;  // artificials not driven to zero
    QVec x(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][total];
    return x;
}

std::vector<Int> primitive_integer_vector(const QVec& v) {
    Int den_lcm(1), num_gcd(0);
    for (const auto& c : v) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    }
    std::vector<Int> out(v.size(), Int(0));
    if (num_gcd == 0) return out;
    int lead_sign = 0;
    for (const auto& c : v) {
        if (sgn(c) != 0) {
            lead_sign = sgn(c);
            break;
        }
    }
    Rational scale = make_rational(lead_sign < 0 ? -den_lcm : den_lcm, num_gcd);
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational s = v[i] * scale;
        out[i] = s.get_num();
    }
    return out;
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do {
        r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
}

std::uint64_t ModPrime::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e > 0) {
        if (e & 1u) r = mul(r, a);
        a = mul(a, a);
        e >>= 1u;
    }
    return r;
}

std::uint64_t ModPrime::reduce_int(const Int& z) const {
    Int m = z % Int(static_cast<unsigned long>(p));
    if (m < 0) m += Int(static_cast<unsigned long>(p));
    return m.get_ui();
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    ModPrime mod{n};
    // deterministic witness set for 64-bit integers
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = mod.pow(a, d);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mod.mul(x, x);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

ModPrime pick_prime(std::uint64_t seed, unsigned which) {
    SplitMix64 rng(seed * 0x5851f42d4c957f2dULL + which + 1);
    for (;;) {
        std::uint64_t candidate = (rng.next() | (1ULL << 61)) & ((1ULL << 62) - 1);
        candidate |= 1ULL;
        if (is_prime_u64(candidate)) return ModPrime{candidate};
    }
}

std::size_t rank_mod(std::vector<std::vector<std::uint64_t>>& m, const ModPrime& mod) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        std::uint64_t inv_p = mod.inv(m[r][c]);
        for (std::size_t j = c; j < cols; ++j) m[r][j] = mod.mul(m[r][j], inv_p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            std::uint64_t f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] = mod.sub(m[i][j], mod.mul(f, m[r][j]));
        }
        ++r;
    }
    return r;
}

}  // namespace sosv
