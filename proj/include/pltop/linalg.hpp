/**
 * Dense linear algebra over prime fields and a cyclic Jacobi eigensolver
 * for symmetric matrices. Sized for desk-scale inputs.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace pltop {

struct LinalgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrime : LinalgError {
    explicit NotPrime(int p)
        : LinalgError("modulus " + std::to_string(p) + " is not prime") {}
};

struct NonConvergence : LinalgError {
    NonConvergence() : LinalgError("Jacobi sweeps did not converge") {}
};

inline bool is_prime(int p)
{
    if (p < 2)
        return false;
    for (int q = 2; static_cast<long long>(q) * q <= p; ++q)
        if (p % q == 0)
            return false;
    return true;
}

/// Row-major matrix over GF(p); entries are residues in [0, p).
struct GFMatrix {
    int p = 2;
    int rows = 0, cols = 0;
    std::vector<uint32_t> entries;

    GFMatrix() = default;
    GFMatrix(int p_, int rows_, int cols_)
        : p(p_), rows(rows_), cols(cols_),
          entries(static_cast<size_t>(rows_) * cols_, 0)
    {
    }

    uint32_t& at(int r, int c) { return entries[static_cast<size_t>(r) * cols + c]; }
    uint32_t at(int r, int c) const { return entries[static_cast<size_t>(r) * cols + c]; }

    void set(int r, int c, long long value)
    {
        long long v = value % p;
        if (v < 0)
            v += p;
        at(r, c) = static_cast<uint32_t>(v);
    }

    GFMatrix transpose() const
    {
        GFMatrix t(p, cols, rows);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                t.at(c, r) = at(r, c);
        return t;
    }
};

namespace detail {

inline uint32_t gf_inverse(uint32_t a, int p)
{
    // extended Euclid
    long long t = 0, newt = 1, r = p, newr = a;
    while (newr != 0) {
        long long q = r / newr;
        std::tie(t, newt) = std::make_tuple(newt, t - q * newt);
        std::tie(r, newr) = std::make_tuple(newr, r - q * newr);
    }
    if (t < 0)
        t += p;
    return static_cast<uint32_t>(t);
}

}  // namespace detail

/// Rank over GF(p) by row-echelon Gaussian elimination.
inline long gf_rank(GFMatrix m)
{
    if (!is_prime(m.p))
        throw NotPrime(m.p);
    const int p = m.p;
    long rank = 0;
    int pivot_row = 0;
    for (int c = 0; c < m.cols && pivot_row < m.rows; ++c) {
        int pr = -1;
        for (int r = pivot_row; r < m.rows; ++r)
            if (m.at(r, c) != 0) {
                pr = r;
                break;
            }
        if (pr < 0)
            continue;
        if (pr != pivot_row)
            for (int cc = c; cc < m.cols; ++cc)
                std::swap(m.at(pr, cc), m.at(pivot_row, cc));
        uint32_t inv = detail::gf_inverse(m.at(pivot_row, c), p);
        for (int cc = c; cc < m.cols; ++cc)
            m.at(pivot_row, cc) =
                static_cast<uint32_t>((static_cast<uint64_t>(m.at(pivot_row, cc)) * inv) % p);
        for (int r = pivot_row + 1; r < m.rows; ++r) {
            uint32_t f = m.at(r, c);
            if (f == 0)
                continue;
            for (int cc = c; cc < m.cols; ++cc) {
                uint64_t sub = static_cast<uint64_t>(f) * m.at(pivot_row, cc) % p;
                uint32_t cur = m.at(r, cc);
                m.at(r, cc) = static_cast<uint32_t>((cur + p - sub) % p);
            }
        }
        ++rank;
        ++pivot_row;
    }
    return rank;
}

/**
 * Rank of a matrix given as (row, col, value) triplets. Rows containing a
 * single surviving entry are used as pivots first (exact, no fill); the
 * remaining core is eliminated densely. Duplicate (row, col) positions
 * accumulate.
 */
inline long gf_rank_sparse(int rows, int cols,
                           const std::vector<std::tuple<int, int, int>>& triplets,
                           int p)
{
    if (!is_prime(p))
        throw NotPrime(p);
    // accumulate duplicates mod p
    std::vector<std::vector<std::pair<int, uint32_t>>> row_entries(rows);
    {
        std::vector<std::vector<std::pair<int, long long>>> acc(rows);
        for (auto [r, c, v] : triplets)
            acc[r].push_back({c, v});
        for (int r = 0; r < rows; ++r) {
            auto& a = acc[r];
            std::sort(a.begin(), a.end());
            for (size_t i = 0; i < a.size();) {
                long long s = 0;
                size_t j = i;
                while (j < a.size() && a[j].first == a[i].first)
                    s += a[j++].second;
                s %= p;
                if (s < 0)
                    s += p;
                if (s != 0)
                    row_entries[r].push_back({a[i].first, static_cast<uint32_t>(s)});
                i = j;
            }
        }
    }
    std::vector<std::vector<int>> col_rows(cols);
    std::vector<int> row_count(rows, 0);
    for (int r = 0; r < rows; ++r) {
        row_count[r] = static_cast<int>(row_entries[r].size());
        for (auto& [c, v] : row_entries[r])
            col_rows[c].push_back(r);
    }
    std::vector<char> row_alive(rows, 1), col_alive(cols, 1);
    std::vector<int> queue;
    for (int r = 0; r < rows; ++r)
        if (row_count[r] == 1)
            queue.push_back(r);
    long rank = 0;
    while (!queue.empty()) {
        int r = queue.back();
        queue.pop_back();
        if (!row_alive[r] || row_count[r] != 1)
            continue;
        int pc = -1;
        for (auto& [c, v] : row_entries[r])
            if (col_alive[c]) {
                pc = c;
                break;
            }
        if (pc < 0)
            continue;
        ++rank;
        row_alive[r] = 0;
        col_alive[pc] = 0;
        for (int rr : col_rows[pc]) {
            if (!row_alive[rr])
                continue;
            if (--row_count[rr] == 1)
                queue.push_back(rr);
        }
    }
    // dense core
    std::vector<int> live_cols;
    std::vector<int> col_index(cols, -1);
    for (int c = 0; c < cols; ++c)
        if (col_alive[c]) {
            col_index[c] = static_cast<int>(live_cols.size());
            live_cols.push_back(c);
        }
    std::vector<int> live_rows;
    for (int r = 0; r < rows; ++r)
        if (row_alive[r] && row_count[r] > 0)
            live_rows.push_back(r);
    if (!live_rows.empty() && !live_cols.empty()) {
        GFMatrix core(p, static_cast<int>(live_rows.size()),
                      static_cast<int>(live_cols.size()));
        for (size_t i = 0; i < live_rows.size(); ++i)
            for (auto& [c, v] : row_entries[live_rows[i]])
                if (col_alive[c])
                    core.at(static_cast<int>(i), col_index[c]) = v;
        rank += gf_rank(std::move(core));
    }
    return rank;
}

/// Real symmetric matrix; only the upper triangle is stored.
struct SymMatrix {
    int n = 0;
    std::vector<double> upper;  // (i, j) with i <= j at i*n - i*(i-1)/2 + (j-i)

    SymMatrix() = default;
    explicit SymMatrix(int n_)
        : n(n_), upper(static_cast<size_t>(n_) * (n_ + 1) / 2, 0.0)
    {
    }

    size_t idx(int i, int j) const
    {
        if (i > j)
            std::swap(i, j);
        return static_cast<size_t>(i) * n - static_cast<size_t>(i) * (i - 1) / 2 +
               (j - i);
    }

    double at(int i, int j) const { return upper[idx(i, j)]; }
    void set(int i, int j, double v) { upper[idx(i, j)] = v; }
    void add(int i, int j, double v) { upper[idx(i, j)] += v; }
};

/**
 * Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
 * ascending. Sweeps stop once the off-diagonal Frobenius norm drops
 * below tol; more than 100 sweeps raises NonConvergence.
 */
inline std::vector<double> sym_eigs(const SymMatrix& m, double tol = 1e-10)
{
    if (tol <= 0)
        throw LinalgError("tolerance must be positive");
    const int n = m.n;
    if (n == 0)
        return {};
    std::vector<double> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<size_t>(i) * n + j] = m.at(i, j);
    auto off = [&]() {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double v = a[static_cast<size_t>(i) * n + j];
                s += 2 * v * v;
            }
        return std::sqrt(s);
    };
    const int max_sweeps = 100;
    int sweep = 0;
    while (off() >= tol) {
        if (++sweep > max_sweeps)
            throw NonConvergence();
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a[static_cast<size_t>(p) * n + q];
                if (apq == 0.0)
                    continue;
                double app = a[static_cast<size_t>(p) * n + p];
                double aqq = a[static_cast<size_t>(q) * n + q];
                double theta = (aqq - app) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[static_cast<size_t>(k) * n + p];
                    double akq = a[static_cast<size_t>(k) * n + q];
                    a[static_cast<size_t>(k) * n + p] = c * akp - s * akq;
                    a[static_cast<size_t>(k) * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[static_cast<size_t>(p) * n + k];
                    double aqk = a[static_cast<size_t>(q) * n + k];
                    a[static_cast<size_t>(p) * n + k] = c * apk - s * aqk;
                    a[static_cast<size_t>(q) * n + k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i)
        eig[i] = a[static_cast<size_t>(i) * n + i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace pltop
