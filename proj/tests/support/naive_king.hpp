#pragma once

// Second, independently coded King oracle: subspaces are explicit vector
// sets over F_p, closed-set enumeration by bitmask, no shared linear-algebra
// machinery with the library under test. Feasible for p <= 3, dims <= 2.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace naive {

using Vec = std::vector<int>;

struct Rep {
    int p = 2;
    std::vector<int> dims; // per vertex
    // maps[k] = {tail, head, matrix[row][col]} for every arrow copy
    struct Map {
        std::size_t tail, head;
        std::vector<std::vector<int>> m;
    };
    std::vector<Map> maps;
};

inline std::vector<Vec> all_vectors(int p, int n) {
    std::vector<Vec> out;
    Vec v(n, 0);
    while (true) {
        out.push_back(v);
        int i = 0;
        for (; i < n; ++i) {
            if (++v[i] < p) break;
            v[i] = 0;
        }
        if (i == n) break;
        if (n == 0) break;
    }
    if (n == 0) out.assign(1, Vec{});
    return out;
}

/// All subspaces of F_p^n, each as the sorted set of its member vectors.
inline std::vector<std::set<Vec>> all_subspaces(int p, int n) {
    const auto vectors = all_vectors(p, n);
    const std::size_t count = vectors.size();
    std::set<std::set<Vec>> found;
    for (std::uint64_t mask = 0; mask < (1ull << count); ++mask) {
        if (!(mask & 1)) continue; // must contain zero
        std::set<Vec> s;
        for (std::size_t i = 0; i < count; ++i)
            if (mask & (1ull << i)) s.insert(vectors[i]);
        bool closed = true;
        for (const auto& a : s) {
            for (const auto& b : s) {
                Vec sum(n);
                for (int i = 0; i < n; ++i) sum[i] = (a[i] + b[i]) % p;
                if (!s.count(sum)) {
                    closed = false;
                    break;
                }
            }
            if (!closed) break;
            for (int c = 2; c < p; ++c) {
                Vec sc(n);
                for (int i = 0; i < n; ++i) sc[i] = (a[i] * c) % p;
                if (!s.count(sc)) {
                    closed = false;
                    break;
                }
            }
            if (!closed) break;
        }
        if (closed) found.insert(std::move(s));
    }
    return {found.begin(), found.end()};
}

inline int dim_of(const std::set<Vec>& s, int p) {
    int d = 0;
    std::size_t power = 1;
    while (power < s.size()) {
        power *= static_cast<std::size_t>(p);
        ++d;
    }
    return d;
}

inline Vec apply(const std::vector<std::vector<int>>& m, const Vec& x, int p) {
    Vec out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) out[i] = (out[i] + m[i][j] * x[j]) % p;
    return out;
}

struct Verdict {
    // 1 = stable, 0 = semistable only, -1 = unstable
    int status = 1;
    std::vector<int> witness_dims;
};

/// eta given as (num, den) pairs to keep this oracle free of the library's
/// rational type.
inline Verdict king(const Rep& rep, const std::vector<std::pair<long long, long long>>& eta) {
    std::vector<std::vector<std::set<Vec>>> per_vertex;
    for (auto d : rep.dims) per_vertex.push_back(all_subspaces(rep.p, d));

    Verdict out;
    // worst pairing found, as an exact fraction num/den (den > 0)
    long long worst_num = 0, worst_den = 1;
    bool tie = false, violated = false;

    std::vector<std::size_t> idx(rep.dims.size(), 0);
    while (true) {
        bool zero = true, full = true;
        for (std::size_t v = 0; v < idx.size(); ++v) {
            const auto& s = per_vertex[v][idx[v]];
            if (s.size() != 1) zero = false;
            if (dim_of(s, rep.p) != rep.dims[v]) full = false;
        }
        if (!zero && !full) {
            bool invariant = true;
            for (const auto& map : rep.maps) {
                for (const auto& x : per_vertex[map.tail][idx[map.tail]]) {
                    if (!per_vertex[map.head][idx[map.head]].count(apply(map.m, x, rep.p))) {
                        invariant = false;
                        break;
                    }
                }
                if (!invariant) break;
            }
            if (invariant) {
                // pairing = -sum eta_v dim_v
                long long num = 0, den = 1;
                for (std::size_t v = 0; v < idx.size(); ++v) den *= eta[v].second;
                for (std::size_t v = 0; v < idx.size(); ++v) {
                    const int d = dim_of(per_vertex[v][idx[v]], rep.p);
                    num -= eta[v].first * (den / eta[v].second) * d;
                }
                if (num * worst_den > worst_num * den || !violated) {
                    if (num > 0 && (!violated || num * worst_den > worst_num * den)) {
                        worst_num = num;
                        worst_den = den;
                        out.witness_dims.clear();
                        for (std::size_t v = 0; v < idx.size(); ++v)
                            out.witness_dims.push_back(dim_of(per_vertex[v][idx[v]], rep.p));
                        violated = true;
                    }
                }
                if (num == 0) tie = true;
            }
        }
        std::size_t v = 0;
        for (; v < idx.size(); ++v) {
            if (++idx[v] < per_vertex[v].size()) break;
            idx[v] = 0;
        }
        if (v == idx.size()) break;
    }

    out.status = violated ? -1 : (tie ? 0 : 1);
    return out;
}

} // namespace naive
