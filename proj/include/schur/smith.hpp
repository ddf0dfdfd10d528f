#pragma once

// Integer Smith normal form in two flavors.
//
// smith_normal_form: dense, returns the full factorization U*A*V = D with
// U, V unimodular and D a nonnegative divisibility chain. Intended for small
// matrices and for cross-checking.
//
// SparseRowSnf: a sparse engine for very wide matrices whose cokernel we
// care about. Row operations are logged (they change the presentation basis,
// i.e. the matrix U); column operations are applied silently since they do
// not affect the cokernel. From the log we can recover single rows of U
// reduced mod m, and single columns of U^-1, without ever materializing U.
//
// Both run over a template integer type: long long with overflow checks
// (throwing snf_overflow), or boost cpp_int as the escalation path.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "schur/util.hpp"

namespace schur {

using bigint = boost::multiprecision::cpp_int;

namespace detail {

template <class I>
I add_i(const I& a, const I& b) {
    if constexpr (std::is_same_v<I, long long>)
        return checked_add(a, b);
    else
        return a + b;
}
template <class I>
I sub_i(const I& a, const I& b) {
    if constexpr (std::is_same_v<I, long long>)
        return checked_sub(a, b);
    else
        return a - b;
}
template <class I>
I mul_i(const I& a, const I& b) {
    if constexpr (std::is_same_v<I, long long>)
        return checked_mul(a, b);
    else
        return a * b;
}
template <class I>
I abs_i(const I& a) {
    return a < 0 ? I(-a) : a;
}
template <class I>
long long to_ll(const I& a) {
    if constexpr (std::is_same_v<I, long long>) {
        return a;
    } else {
        if (a > (std::numeric_limits<long long>::max)() || a < (std::numeric_limits<long long>::min)())
            throw property_error("certificate entry exceeds 64-bit range");
        return a.template convert_to<long long>();
    }
}

}  // namespace detail

// Row operations, in application order. Axpy means R_i += c * R_j;
// Neg means R_i = -R_i.
enum class RowOpKind : std::uint8_t { Axpy, Neg };

template <class I>
struct RowOp {
    RowOpKind kind;
    int i = 0;
    int j = 0;
    I c{};
};

// Applies the logged operations to a dense integer vector, i.e. computes U*v.
template <class I>
void apply_ops_forward(const std::vector<RowOp<I>>& ops, std::vector<I>& v) {
    for (const auto& op : ops) {
        if (op.kind == RowOpKind::Axpy)
            v[static_cast<size_t>(op.i)] =
                detail::add_i(v[static_cast<size_t>(op.i)], detail::mul_i(op.c, v[static_cast<size_t>(op.j)]));
        else
            v[static_cast<size_t>(op.i)] = -v[static_cast<size_t>(op.i)];
    }
}

// Row `row` of U, reduced mod m (m >= 2): computes e_row^T * U by applying
// transposed operations in reverse. Entries land in [0, m).
template <class I>
std::vector<long long> u_row_mod(const std::vector<RowOp<I>>& ops, int n_rows, int row, long long m) {
    if (m < 2 || m > (1LL << 31)) throw precondition_error("modulus out of supported range");
    std::vector<long long> v(static_cast<size_t>(n_rows), 0);
    v[static_cast<size_t>(row)] = 1 % m;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        if (it->kind == RowOpKind::Axpy) {
            long long c = mod_floor(detail::to_ll<I>(I(it->c % I(m))), m);
            long long vi = v[static_cast<size_t>(it->i)];
            if (vi != 0 && c != 0)
                v[static_cast<size_t>(it->j)] = mod_floor(v[static_cast<size_t>(it->j)] + c * vi, m);
        } else {
            v[static_cast<size_t>(it->i)] = mod_floor(-v[static_cast<size_t>(it->i)], m);
        }
    }
    return v;
}

// Column `row` of U^-1: solves U*w = e_row by applying inverse operations in
// reverse. Exact integers.
template <class I>
std::vector<I> u_inverse_column(const std::vector<RowOp<I>>& ops, int n_rows, int row) {
    std::vector<I> v(static_cast<size_t>(n_rows), I(0));
    v[static_cast<size_t>(row)] = 1;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        if (it->kind == RowOpKind::Axpy)
            v[static_cast<size_t>(it->i)] =
                detail::sub_i(v[static_cast<size_t>(it->i)], detail::mul_i(it->c, v[static_cast<size_t>(it->j)]));
        else
            v[static_cast<size_t>(it->i)] = -v[static_cast<size_t>(it->i)];
    }
    return v;
}

// ---------------------------------------------------------------------------
// Sparse engine
// ---------------------------------------------------------------------------

// Column operation C_tgt += c * C_src, recorded only on request (the
// cokernel view never needs them, the full factorization does).
template <class I>
struct ColOp {
    int tgt = 0;
    int src = 0;
    I c{};
};

template <class I>
class SparseRowSnf {
  public:
    using Entry = std::pair<int, I>;  // (column, value), rows kept sorted by column

    SparseRowSnf(int n_rows, int n_cols, std::vector<std::vector<Entry>> rows, bool log_col_ops = false)
        : n_rows_(n_rows), n_cols_(n_cols), log_col_ops_(log_col_ops), rows_(std::move(rows)) {
        if (static_cast<int>(rows_.size()) != n_rows) throw precondition_error("row count mismatch");
        cnt_.assign(static_cast<size_t>(n_cols_), 0);
        col_rows_.assign(static_cast<size_t>(n_cols_), {});
        row_pivoted_.assign(static_cast<size_t>(n_rows_), 0);
        col_pivoted_.assign(static_cast<size_t>(n_cols_), 0);
        for (int r = 0; r < n_rows_; ++r) {
            auto& row = rows_[static_cast<size_t>(r)];
            std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
            for (size_t k = 0; k < row.size(); ++k) {
                if (row[k].second == 0) throw precondition_error("explicit zero entry in sparse input");
                if (k && row[k].first == row[k - 1].first) throw precondition_error("duplicate column in sparse row");
                if (row[k].first < 0 || row[k].first >= n_cols_) throw precondition_error("column out of range");
                ++cnt_[static_cast<size_t>(row[k].first)];
                col_rows_[static_cast<size_t>(row[k].first)].push_back(r);
            }
        }
        for (int c = 0; c < n_cols_; ++c)
            if (cnt_[static_cast<size_t>(c)] > 0) heap_.push({cnt_[static_cast<size_t>(c)], c});
    }

    void run() {
        while (!heap_.empty()) {
            auto [k, c] = heap_.top();
            heap_.pop();
            if (col_pivoted_[static_cast<size_t>(c)]) continue;
            if (cnt_[static_cast<size_t>(c)] == 0 || cnt_[static_cast<size_t>(c)] != k) continue;
            pivot_at_column(c);
            // The pivot can wander to another column through remainder
            // movement; if this column still holds entries it needs to be
            // offered again, since its matching heap entry was just consumed.
            if (!col_pivoted_[static_cast<size_t>(c)] && cnt_[static_cast<size_t>(c)] > 0)
                heap_.push({cnt_[static_cast<size_t>(c)], c});
        }
        normalize_signs();
        enforce_divisibility();
        cleared_ = true;
        for (int r = 0; r < n_rows_; ++r)
            if (!row_pivoted_[static_cast<size_t>(r)] && !rows_[static_cast<size_t>(r)].empty()) cleared_ = false;
    }

    int rank() const { return static_cast<int>(diag_.size()); }
    bool cleared() const { return cleared_; }
    const std::vector<I>& diag() const { return diag_; }
    const std::vector<int>& pivot_rows() const { return pivot_rows_; }
    const std::vector<int>& pivot_cols() const { return pivot_cols_; }
    const std::vector<RowOp<I>>& ops() const { return ops_; }
    const std::vector<ColOp<I>>& col_ops() const { return col_ops_; }
    const std::vector<std::vector<Entry>>& rows() const { return rows_; }

  private:
    I get(int r, int c) const {
        const auto& row = rows_[static_cast<size_t>(r)];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, int col) { return e.first < col; });
        return (it != row.end() && it->first == c) ? it->second : I(0);
    }

    // Column-operation style single entry write; never logged.
    void set_entry(int r, int c, const I& v) {
        auto& row = rows_[static_cast<size_t>(r)];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const Entry& e, int col) { return e.first < col; });
        bool present = it != row.end() && it->first == c;
        if (v == 0) {
            if (present) {
                row.erase(it);
                bump(c, -1, r);
            }
        } else if (present) {
            it->second = v;
        } else {
            row.insert(it, {c, v});
            bump(c, +1, r);
        }
    }

    void bump(int c, int delta, int r) {
        cnt_[static_cast<size_t>(c)] += delta;
        if (delta > 0) col_rows_[static_cast<size_t>(c)].push_back(r);
        if (!col_pivoted_[static_cast<size_t>(c)] && cnt_[static_cast<size_t>(c)] > 0)
            heap_.push({cnt_[static_cast<size_t>(c)], c});
    }

    // R_i += c * R_j, logged.
    void axpy(int i, int j, const I& c) {
        ops_.push_back({RowOpKind::Axpy, i, j, c});
        const auto& src = rows_[static_cast<size_t>(j)];
        const auto& dst = rows_[static_cast<size_t>(i)];
        std::vector<Entry> out;
        out.reserve(dst.size() + src.size());
        size_t a = 0, b = 0;
        while (a < dst.size() || b < src.size()) {
            if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
                out.push_back(dst[a++]);
            } else if (a == dst.size() || src[b].first < dst[a].first) {
                I v = detail::mul_i(c, src[b].second);
                if (v != 0) {
                    out.push_back({src[b].first, v});
                    bump(src[b].first, +1, i);
                }
                ++b;
            } else {
                I v = detail::add_i(dst[a].second, detail::mul_i(c, src[b].second));
                if (v != 0)
                    out.push_back({dst[a].first, v});
                else
                    bump(dst[a].first, -1, i);
                ++a;
                ++b;
            }
        }
        rows_[static_cast<size_t>(i)] = std::move(out);
    }

    void negate_row(int r) {
        ops_.push_back({RowOpKind::Neg, r, 0, I(0)});
        for (auto& e : rows_[static_cast<size_t>(r)]) e.second = -e.second;
    }

    // Valid, deduplicated, ascending rows currently holding column c; also
    // compacts the lazy index.
    std::vector<int> rows_at(int c) {
        auto& lst = col_rows_[static_cast<size_t>(c)];
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
        std::vector<int> valid;
        for (int r : lst)
            if (get(r, c) != 0) valid.push_back(r);
        lst = valid;
        return valid;
    }

    void pivot_at_column(int c_start) {
        int c = c_start;
        auto cand = rows_at(c);
        if (cand.empty()) return;
        int r = cand[0];
        {
            auto better = [&](int x, int y) {
                bool ux = detail::abs_i(get(x, c)) == 1, uy = detail::abs_i(get(y, c)) == 1;
                if (ux != uy) return ux;
                size_t nx = rows_[static_cast<size_t>(x)].size(), ny = rows_[static_cast<size_t>(y)].size();
                if (nx != ny) return nx < ny;
                return x < y;
            };
            for (int x : cand)
                if (better(x, r)) r = x;
        }
        I d = get(r, c);

        while (true) {
            // Row phase: clear the pivot column, moving the pivot whenever a
            // remainder beats it.
            bool column_clean = false;
            while (!column_clean) {
                column_clean = true;
                for (int i : rows_at(c)) {
                    if (i == r) continue;
                    I v = get(i, c);
                    if (v == 0) continue;
                    I q = v / d;
                    if (q != 0) axpy(i, r, -q);
                    I rem = get(i, c);
                    if (rem != 0) {
                        r = i;
                        d = rem;
                    }
                    column_clean = false;
                    break;
                }
            }
            // Column phase: clear the pivot row with silent column
            // operations; single-entry writes because the column is clean.
            bool moved = false;
            while (true) {
                const auto& row = rows_[static_cast<size_t>(r)];
                int j = -1;
                for (const auto& e : row)
                    if (e.first != c) {
                        j = e.first;
                        break;
                    }
                if (j < 0) break;
                I v = get(r, j);
                I q = v / d;
                I rem = detail::sub_i(v, detail::mul_i(q, d));
                if (log_col_ops_ && q != 0) col_ops_.push_back({j, c, -q});
                set_entry(r, j, rem);
                if (rem != 0) {
                    c = j;
                    d = rem;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }

        row_pivoted_[static_cast<size_t>(r)] = 1;
        col_pivoted_[static_cast<size_t>(c)] = 1;
        pivot_rows_.push_back(r);
        pivot_cols_.push_back(c);
        diag_.push_back(d);
    }

    void normalize_signs() {
        for (size_t t = 0; t < diag_.size(); ++t)
            if (diag_[t] < 0) {
                negate_row(pivot_rows_[t]);
                diag_[t] = -diag_[t];
            }
    }

    // Make the diagonal a divisibility chain in slot order. Each fix turns a
    // violating pair into (gcd, lcm) with logged row operations only.
    void enforce_divisibility() {
        int guard = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < diag_.size() && !changed; ++i) {
                if (diag_[i] == 1) continue;
                for (size_t j = i + 1; j < diag_.size() && !changed; ++j) {
                    if (diag_[j] % diag_[i] == 0) continue;
                    pair_fix(i, j);
                    changed = true;
                }
            }
            if (++guard > 100000) throw property_error("divisibility fix did not stabilize");
        }
    }

    void pair_fix(size_t si, size_t sj) {
        int ri = pivot_rows_[si], rj = pivot_rows_[sj];
        int ci = pivot_cols_[si], cj = pivot_cols_[sj];
        // A column operation folds the second pivot into column ci, then a
        // row gcd computation runs at that column.
        if (log_col_ops_) col_ops_.push_back({ci, cj, I(1)});
        set_entry(rj, ci, get(rj, cj));
        while (true) {
            I a = get(ri, ci), b = get(rj, ci);
            if (a == 0 || b == 0) break;
            if (detail::abs_i(a) >= detail::abs_i(b))
                axpy(ri, rj, -(a / b));
            else
                axpy(rj, ri, -(b / a));
        }
        I a = get(ri, ci), b = get(rj, ci);
        if (b == 0) {
            I g = a, y = get(ri, cj), z = get(rj, cj);
            if (y % g != 0) throw property_error("pair fix residue not divisible by gcd");
            if (log_col_ops_ && y != 0) col_ops_.push_back({cj, ci, -(y / g)});
            set_entry(ri, cj, I(0));
            pivot_rows_[si] = ri;
            pivot_cols_[si] = ci;
            diag_[si] = g;
            pivot_rows_[sj] = rj;
            pivot_cols_[sj] = cj;
            diag_[sj] = z;
        } else {
            I g = b, z = get(rj, cj), y = get(ri, cj);
            if (z % g != 0) throw property_error("pair fix residue not divisible by gcd");
            if (log_col_ops_ && z != 0) col_ops_.push_back({cj, ci, -(z / g)});
            set_entry(rj, cj, I(0));
            pivot_rows_[si] = rj;
            pivot_cols_[si] = ci;
            diag_[si] = g;
            pivot_rows_[sj] = ri;
            pivot_cols_[sj] = cj;
            diag_[sj] = y;
        }
        for (size_t t : {si, sj})
            if (diag_[t] < 0) {
                negate_row(pivot_rows_[t]);
                diag_[t] = -diag_[t];
            }
    }

    int n_rows_, n_cols_;
    bool log_col_ops_ = false;
    std::vector<std::vector<Entry>> rows_;
    std::vector<RowOp<I>> ops_;
    std::vector<ColOp<I>> col_ops_;
    std::vector<int> pivot_rows_, pivot_cols_;
    std::vector<I> diag_;
    bool cleared_ = false;

    std::vector<int> cnt_;
    std::vector<std::vector<int>> col_rows_;
    std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>> heap_;
    std::vector<char> row_pivoted_, col_pivoted_;
};

// ---------------------------------------------------------------------------
// Escalating wrapper used by the homology code
// ---------------------------------------------------------------------------

// Diagonal, pivot rows, and for every slot with diag > 1 the corresponding
// row of U (mod diag, for projecting vectors onto cokernel coordinates) and
// column of U^-1 (an exact preimage witness).
struct RowSnfCertificates {
    int rank = 0;
    bool cleared = false;
    bool used_bignum = false;
    std::vector<long long> diag;
    std::vector<int> pivot_rows;
    std::vector<size_t> torsion_slots;
    std::vector<std::vector<long long>> projector;
    std::vector<std::vector<std::pair<int, long long>>> witness;
};

namespace detail {

template <class I>
RowSnfCertificates row_snf_certificates_impl(int n_rows, int n_cols,
                                             const std::vector<std::vector<std::pair<int, long long>>>& rows) {
    std::vector<std::vector<typename SparseRowSnf<I>::Entry>> conv(rows.size());
    for (size_t r = 0; r < rows.size(); ++r)
        for (const auto& e : rows[r]) conv[r].push_back({e.first, I(e.second)});
    SparseRowSnf<I> snf(n_rows, n_cols, std::move(conv));
    snf.run();
    RowSnfCertificates out;
    out.rank = snf.rank();
    out.cleared = snf.cleared();
    out.used_bignum = !std::is_same_v<I, long long>;
    for (const I& d : snf.diag()) out.diag.push_back(to_ll<I>(d));
    out.pivot_rows = snf.pivot_rows();
    for (size_t t = 0; t < out.diag.size(); ++t) {
        if (out.diag[t] <= 1) continue;
        out.torsion_slots.push_back(t);
        out.projector.push_back(u_row_mod<I>(snf.ops(), n_rows, out.pivot_rows[t], out.diag[t]));
        auto w = u_inverse_column<I>(snf.ops(), n_rows, out.pivot_rows[t]);
        std::vector<std::pair<int, long long>> sp;
        for (int r = 0; r < n_rows; ++r)
            if (w[static_cast<size_t>(r)] != 0) sp.push_back({r, to_ll<I>(w[static_cast<size_t>(r)])});
        out.witness.push_back(std::move(sp));
    }
    return out;
}

}  // namespace detail

inline RowSnfCertificates row_snf_with_certificates(int n_rows, int n_cols,
                                                    const std::vector<std::vector<std::pair<int, long long>>>& rows) {
    try {
        return detail::row_snf_certificates_impl<long long>(n_rows, n_cols, rows);
    } catch (const snf_overflow&) {
        return detail::row_snf_certificates_impl<bigint>(n_rows, n_cols, rows);
    }
}

// ---------------------------------------------------------------------------
// Dense public factorization
// ---------------------------------------------------------------------------

// Unimodular factors can blow up far past 64 bits even for small inputs,
// so the factorization is kept in arbitrary precision.
struct SmithResult {
    std::vector<std::vector<bigint>> U, D, V;
};

// Runs the sparse engine with both operation logs in arbitrary precision,
// then assembles U and V from the logs plus the pivot permutation. Intended
// for small matrices.
inline SmithResult smith_normal_form(const std::vector<std::vector<long long>>& A) {
    int n = static_cast<int>(A.size());
    int m = n ? static_cast<int>(A[0].size()) : 0;
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != m) throw precondition_error("ragged matrix");

    std::vector<std::vector<SparseRowSnf<bigint>::Entry>> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (A[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0)
                rows[static_cast<size_t>(i)].push_back({j, bigint(A[static_cast<size_t>(i)][static_cast<size_t>(j)])});
    SparseRowSnf<bigint> snf(n, m, std::move(rows), /*log_col_ops=*/true);
    snf.run();
    if (!snf.cleared()) throw property_error("reduction left uncleared rows");
    int r = snf.rank();

    std::vector<std::vector<bigint>> Uw(static_cast<size_t>(n), std::vector<bigint>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) Uw[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (const auto& op : snf.ops()) {
        if (op.kind == RowOpKind::Axpy) {
            for (int k = 0; k < n; ++k)
                Uw[static_cast<size_t>(op.i)][static_cast<size_t>(k)] +=
                    op.c * Uw[static_cast<size_t>(op.j)][static_cast<size_t>(k)];
        } else {
            for (int k = 0; k < n; ++k) Uw[static_cast<size_t>(op.i)][static_cast<size_t>(k)] *= -1;
        }
    }
    std::vector<std::vector<bigint>> Vw(static_cast<size_t>(m), std::vector<bigint>(static_cast<size_t>(m), 0));
    for (int i = 0; i < m; ++i) Vw[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (const auto& op : snf.col_ops())
        for (int i = 0; i < m; ++i)
            Vw[static_cast<size_t>(i)][static_cast<size_t>(op.tgt)] +=
                op.c * Vw[static_cast<size_t>(i)][static_cast<size_t>(op.src)];

    // Permute pivots onto the leading diagonal, remaining rows and columns
    // in ascending order behind them.
    std::vector<int> perm_row, perm_col;
    {
        std::vector<char> used_r(static_cast<size_t>(n), 0), used_c(static_cast<size_t>(m), 0);
        for (int t = 0; t < r; ++t) {
            perm_row.push_back(snf.pivot_rows()[static_cast<size_t>(t)]);
            perm_col.push_back(snf.pivot_cols()[static_cast<size_t>(t)]);
            used_r[static_cast<size_t>(perm_row.back())] = 1;
            used_c[static_cast<size_t>(perm_col.back())] = 1;
        }
        for (int i = 0; i < n; ++i)
            if (!used_r[static_cast<size_t>(i)]) perm_row.push_back(i);
        for (int j = 0; j < m; ++j)
            if (!used_c[static_cast<size_t>(j)]) perm_col.push_back(j);
    }

    SmithResult R;
    R.U.assign(static_cast<size_t>(n), std::vector<bigint>(static_cast<size_t>(n), 0));
    R.V.assign(static_cast<size_t>(m), std::vector<bigint>(static_cast<size_t>(m), 0));
    R.D.assign(static_cast<size_t>(n), std::vector<bigint>(static_cast<size_t>(m), 0));
    for (int t = 0; t < n; ++t)
        for (int k = 0; k < n; ++k)
            R.U[static_cast<size_t>(t)][static_cast<size_t>(k)] =
                Uw[static_cast<size_t>(perm_row[static_cast<size_t>(t)])][static_cast<size_t>(k)];
    for (int i = 0; i < m; ++i)
        for (int t = 0; t < m; ++t)
            R.V[static_cast<size_t>(i)][static_cast<size_t>(t)] =
                Vw[static_cast<size_t>(i)][static_cast<size_t>(perm_col[static_cast<size_t>(t)])];
    for (int t = 0; t < r; ++t)
        R.D[static_cast<size_t>(t)][static_cast<size_t>(t)] = snf.diag()[static_cast<size_t>(t)];
    return R;
}

namespace detail {

// Fraction-free elimination; exact over the integers.
inline bigint det_bigint(std::vector<std::vector<bigint>> M) {
    int n = static_cast<int>(M.size());
    if (n == 0) return 1;
    bigint prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (M[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            int s = -1;
            for (int i = k + 1; i < n; ++i)
                if (M[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0) {
                    s = i;
                    break;
                }
            if (s < 0) return 0;
            std::swap(M[static_cast<size_t>(k)], M[static_cast<size_t>(s)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                M[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    (M[static_cast<size_t>(i)][static_cast<size_t>(j)] * M[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                     M[static_cast<size_t>(i)][static_cast<size_t>(k)] * M[static_cast<size_t>(k)][static_cast<size_t>(j)]) /
                    prev;
        prev = M[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    return sign > 0 ? M[static_cast<size_t>(n) - 1][static_cast<size_t>(n) - 1]
                    : -M[static_cast<size_t>(n) - 1][static_cast<size_t>(n) - 1];
}

}  // namespace detail

// Exact check that U*A*V = D, D diagonal, the diagonal is a chain, and both
// factors have determinant +-1. Products run in arbitrary precision since
// unimodular factors can carry large coefficients.
inline bool verify_smith(const std::vector<std::vector<long long>>& A, const SmithResult& R) {
    bigint du = detail::det_bigint(R.U);
    bigint dv = detail::det_bigint(R.V);
    if ((du != 1 && du != -1) || (dv != 1 && dv != -1)) return false;
    int n = static_cast<int>(A.size());
    int m = n ? static_cast<int>(A[0].size()) : 0;
    std::vector<std::vector<bigint>> UA(static_cast<size_t>(n), std::vector<bigint>(static_cast<size_t>(m), 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            bigint u = R.U[static_cast<size_t>(i)][static_cast<size_t>(k)];
            if (u == 0) continue;
            for (int j = 0; j < m; ++j)
                UA[static_cast<size_t>(i)][static_cast<size_t>(j)] += u * A[static_cast<size_t>(k)][static_cast<size_t>(j)];
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            bigint s = 0;
            for (int k = 0; k < m; ++k)
                s += UA[static_cast<size_t>(i)][static_cast<size_t>(k)] * R.V[static_cast<size_t>(k)][static_cast<size_t>(j)];
            if (s != R.D[static_cast<size_t>(i)][static_cast<size_t>(j)]) return false;
            if (i != j && s != 0) return false;
        }
    for (int k = 0; k + 1 < std::min(n, m); ++k) {
        const bigint& a = R.D[static_cast<size_t>(k)][static_cast<size_t>(k)];
        const bigint& b = R.D[static_cast<size_t>(k + 1)][static_cast<size_t>(k + 1)];
        if (a == 0 && b != 0) return false;
        if (a != 0 && b % a != 0) return false;
    }
    return true;
}

}  // namespace schur
