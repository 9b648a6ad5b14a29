#include "hhh/tracealg.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace hhh {

std::string alg_name(AlgTag tag) {
    switch (tag) {
        case AlgTag::A: return "A";
        case AlgTag::Abar: return "Abar";
        case AlgTag::B: return "B";
        case AlgTag::Btilde: return "Btilde";
    }
    return "?";
}

static AlgTag alg_from_name(const std::string& s) {
    for (AlgTag t : {AlgTag::A, AlgTag::Abar, AlgTag::B, AlgTag::Btilde})
        if (alg_name(t) == s) return t;
    throw std::invalid_argument("unknown algebra: " + s);
}

SkewAlgebra skew_algebra(AlgTag tag, int n) {
    SkewAlgebra a;
    a.tag = tag;
    a.n = n;
    switch (tag) {
        case AlgTag::A:
            a.scheme = GradingScheme({"X", "C"}, "C");
            a.degrees = {{"x", {2, 2}}, {"theta", {2, 1}}};
            break;
        case AlgTag::Abar:
            a.scheme = GradingScheme({"X", "C"}, "C");
            a.degrees = {{"x", {2, 2}}};
            break;
        case AlgTag::B:
            a.scheme = GradingScheme({"X", "C"}, "C");
            a.degrees = {{"x", {2, 2}}, {"y", {-2, 0}}};
            break;
        case AlgTag::Btilde:
            a.scheme = GradingScheme({"X", "Y", "C"}, "C");
            a.degrees = {{"x", {2, 1, 0}}, {"y", {-2, 0, 0}}};
            break;
    }
    return a;
}

static RingPtr make_ring(int n, bool with_y) {
    std::vector<std::string> v;
    std::vector<MultiDegree> d;
    for (int i = 1; i <= n; ++i) {
        v.push_back("x" + std::to_string(i));
        d.push_back({2, 2});
    }
    if (with_y)
        for (int i = 1; i <= n; ++i) {
            v.push_back("y" + std::to_string(i));
            d.push_back({-2, 0});
        }
    return std::make_shared<const PolyRing>(v, std::vector<std::string>{"X", "C"}, d);
}

static RingPtr cached_ring(int n, bool with_y) {
    static std::mutex mu;
    static std::map<std::pair<int, bool>, RingPtr> rings;
    std::lock_guard<std::mutex> g(mu);
    auto& r = rings[{n, with_y}];
    if (!r) r = make_ring(n, with_y);
    return r;
}

RingPtr x_ring(int n) { return cached_ring(n, false); }
RingPtr xy_ring(int n) { return cached_ring(n, true); }

namespace {

const MultiDegree kD{0, 1}, kTheta{2, 1}, kY{-2, 0}, kZero{0, 0};

std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> r;
    do r.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return r;
}

int perm_index(const std::vector<std::vector<int>>& perms, const std::vector<int>& p) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
}

// s_j ∘ w, j from 1
std::vector<int> left_mult(int j, std::vector<int> w) {
    for (int& v : w) {
        if (v == j - 1) v = j;
        else if (v == j) v = j - 1;
    }
    return w;
}

unsigned swap_bits(unsigned m, int j) {
    unsigned lo = (m >> (j - 1)) & 1u, hi = (m >> j) & 1u;
    m &= ~((1u << (j - 1)) | (1u << j));
    return m | (lo << j) | (hi << (j - 1));
}

// Sign of s_j applied to θ_I: reordering flips only when both swapped indices occur.
int swap_sign(unsigned m, int j) { return ((m >> (j - 1)) & 1u) && ((m >> j) & 1u) ? -1 : 1; }

PolyMatrix permute_entries(const PolyMatrix& m, const std::vector<int>& vp) {
    PolyMatrix r = m;
    for (std::size_t a = 0; a < m.rows(); ++a)
        for (std::size_t b = 0; b < m.cols(); ++b)
            if (!m.at(a, b).is_zero()) r.at(a, b) = m.at(a, b).permuted(vp);
    return r;
}

PolyMatrix rebase(const PolyMatrix& m, const GradedFreeModule& s, const GradedFreeModule& t) {
    return m.relabeled(s, t, m.degree());
}

int sign_of(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

}  // namespace

std::vector<int> transposition_on_vars(const SkewModule& m, int j) {
    int nv = m.under.ring->nvars();
    std::vector<int> p(nv);
    std::iota(p.begin(), p.end(), 0);
    std::swap(p[j - 1], p[j]);
    if (m.y_in_base()) std::swap(p[m.n + j - 1], p[m.n + j]);
    return p;
}

PolyMatrix semilinear_compose(const PolyMatrix& s, const std::vector<int>& var_perm, const PolyMatrix& t) {
    return s * permute_entries(t, var_perm);
}

ModuleReport check_module(const SkewModule& m) {
    ModuleReport rep;
    auto fail = [&](const std::string& w) {
        rep.ok = false;
        rep.witness = w;
        return rep;
    };
    auto mat_ok = [&](const PolyMatrix& p, const MultiDegree& deg, const std::string& what) -> bool {
        if (p.degree() != deg || !(p.source() == m.under) || !(p.target() == m.under)) {
            fail(what + " has the wrong shape or degree");
            return false;
        }
        try {
            p.validate();
        } catch (const std::invalid_argument& e) {
            fail(what + ": " + e.what());
            return false;
        }
        return true;
    };
    if (!mat_ok(m.d, kD, "differential")) return rep;
    if (!(m.d * m.d).is_zero()) return fail("d∘d is nonzero");
    if (m.alg == AlgTag::A && m.theta.size() != static_cast<std::size_t>(m.n)) return fail("A-module needs n θ-operators");
    for (std::size_t i = 0; i < m.theta.size(); ++i) {
        std::string nm = "theta" + std::to_string(i + 1);
        if (!mat_ok(m.theta[i], kTheta, nm)) return rep;
        if (!(m.theta[i] * m.theta[i]).is_zero()) return fail(nm + " does not square to zero");
        if (!(m.d * m.theta[i] + m.theta[i] * m.d).is_zero()) return fail(nm + " does not anticommute with d");
        for (std::size_t k = i + 1; k < m.theta.size(); ++k)
            if (!(m.theta[i] * m.theta[k] + m.theta[k] * m.theta[i]).is_zero()) return fail(nm + " does not anticommute with theta" + std::to_string(k + 1));
    }
    if (!m.y.empty() && m.y_in_base()) return fail("y both in the base and as operators");
    for (std::size_t i = 0; i < m.y.size(); ++i) {
        std::string nm = "y" + std::to_string(i + 1);
        if (!mat_ok(m.y[i], kY, nm)) return rep;
        if (m.d * m.y[i] != m.y[i] * m.d) return fail(nm + " does not commute with d");
        for (std::size_t k = i + 1; k < m.y.size(); ++k)
            if (m.y[i] * m.y[k] != m.y[k] * m.y[i]) return fail(nm + " does not commute with y" + std::to_string(k + 1));
    }
    if (m.perm.size() != static_cast<std::size_t>(std::max(m.n - 1, 0))) return fail("need one matrix per simple transposition");
    PolyMatrix id = PolyMatrix::identity(m.under);
    id = id.relabeled(m.under, m.under, kZero);
    for (int j = 1; j < m.n; ++j) {
        std::string nm = "s" + std::to_string(j);
        const PolyMatrix& s = m.perm[j - 1];
        if (!mat_ok(s, kZero, nm)) return rep;
        auto vp = transposition_on_vars(m, j);
        if (semilinear_compose(s, vp, s) != id) return fail(nm + " is not an involution");
        if (semilinear_compose(s, vp, m.d) != m.d * s) return fail(nm + " does not commute with d");
        for (std::size_t i = 0; i < m.theta.size(); ++i) {
            int si = static_cast<int>(i) == j - 1 ? j : static_cast<int>(i) == j ? j - 1 : static_cast<int>(i);
            if (semilinear_compose(s, vp, m.theta[i]) != m.theta[si] * s) return fail(nm + " does not intertwine theta" + std::to_string(i + 1));
        }
        for (std::size_t i = 0; i < m.y.size(); ++i) {
            int si = static_cast<int>(i) == j - 1 ? j : static_cast<int>(i) == j ? j - 1 : static_cast<int>(i);
            if (semilinear_compose(s, vp, m.y[i]) != m.y[si] * s) return fail(nm + " does not intertwine y" + std::to_string(i + 1));
        }
        if (j + 1 < m.n) {
            const PolyMatrix& t = m.perm[j];
            auto vt = transposition_on_vars(m, j + 1);
            // s t s = t s t, composed semilinearly
            PolyMatrix lhs = semilinear_compose(s, vp, semilinear_compose(t, vt, s));
            PolyMatrix rhs = semilinear_compose(t, vt, semilinear_compose(s, vp, t));
            if (lhs != rhs) return fail("braid relation fails at s" + std::to_string(j));
        }
        for (int k = j + 2; k < m.n; ++k) {
            const PolyMatrix& t = m.perm[k - 1];
            auto vt = transposition_on_vars(m, k);
            if (semilinear_compose(s, vp, t) != semilinear_compose(t, vt, s)) return fail("far commutation fails at s" + std::to_string(j));
        }
    }
    return rep;
}

// ---------------------------------------------------------------- named modules

static SkewModule group_ring_module(AlgTag tag, int n, RingPtr ring, bool with_theta_basis) {
    SkewModule m;
    m.alg = tag;
    m.n = n;
    auto perms = all_perms(n);
    int nw = static_cast<int>(perms.size());
    int nsub = with_theta_basis ? (1 << n) : 1;
    m.under = GradedFreeModule{ring, {}};
    // generator I*|S_n| + w is θ_I·w
    for (int I = 0; I < nsub; ++I)
        for (int w = 0; w < nw; ++w) {
            int k = __builtin_popcount(static_cast<unsigned>(I));
            m.under.gens.push_back({2 * k, k});
        }
    m.d = PolyMatrix(m.under, m.under, kD);
    for (int j = 1; j < n; ++j) {
        PolyMatrix s(m.under, m.under, kZero);
        for (int I = 0; I < nsub; ++I)
            for (int w = 0; w < nw; ++w) {
                unsigned sI = swap_bits(static_cast<unsigned>(I), j);
                int sw = perm_index(perms, left_mult(j, perms[w]));
                s.at(sI * nw + sw, I * nw + w) = Poly(static_cast<long>(swap_sign(static_cast<unsigned>(I), j)));
            }
        m.perm.push_back(s);
    }
    return m;
}

SkewModule free_module(AlgTag tag, int n) {
    switch (tag) {
        case AlgTag::A: {
            SkewModule m = group_ring_module(tag, n, x_ring(n), true);
            int nw = static_cast<int>(all_perms(n).size());
            for (int i = 0; i < n; ++i) {
                PolyMatrix t(m.under, m.under, kTheta);
                for (unsigned I = 0; I < (1u << n); ++I) {
                    if (I & (1u << i)) continue;
                    int sign = __builtin_popcount(I & ((1u << i) - 1)) % 2 ? -1 : 1;
                    for (int w = 0; w < nw; ++w) t.at((I | (1u << i)) * nw + w, I * nw + w) = Poly(static_cast<long>(sign));
                }
                m.theta.push_back(t);
            }
            return m;
        }
        case AlgTag::Abar: return group_ring_module(tag, n, x_ring(n), false);
        case AlgTag::B:
        case AlgTag::Btilde: return group_ring_module(tag, n, xy_ring(n), false);
    }
    throw std::invalid_argument("free_module: unknown algebra");
}

SkewModule triv_theta(int n) {
    SkewModule m = group_ring_module(AlgTag::A, n, x_ring(n), false);
    for (int i = 0; i < n; ++i) m.theta.push_back(PolyMatrix(m.under, m.under, kTheta));
    return m;
}

SkewModule triv_y(int n) {
    SkewModule m = group_ring_module(AlgTag::B, n, x_ring(n), false);
    for (int i = 0; i < n; ++i) m.y.push_back(PolyMatrix(m.under, m.under, kY));
    return m;
}

SkewModule zero_module(AlgTag tag, int n) {
    SkewModule m;
    m.alg = tag;
    m.n = n;
    m.under = GradedFreeModule{tag == AlgTag::B || tag == AlgTag::Btilde ? xy_ring(n) : x_ring(n), {}};
    m.d = PolyMatrix(m.under, m.under, kD);
    if (tag == AlgTag::A)
        for (int i = 0; i < n; ++i) m.theta.push_back(PolyMatrix(m.under, m.under, kTheta));
    for (int j = 1; j < n; ++j) m.perm.push_back(PolyMatrix(m.under, m.under, kZero));
    return m;
}

static SkewModule with_module(const SkewModule& m, const GradedFreeModule& u) {
    SkewModule r = m;
    r.under = u;
    r.d = rebase(m.d, u, u);
    for (auto& t : r.theta) t = rebase(t, u, u);
    for (auto& t : r.y) t = rebase(t, u, u);
    for (auto& t : r.perm) t = rebase(t, u, u);
    return r;
}

SkewModule shift_module(const SkewModule& m, int dx, int dc) {
    GradedFreeModule u = m.under;
    for (auto& g : u.gens) {
        g[0] += dx;
        g[1] += dc;
    }
    return with_module(m, u);
}

SkewModule sign_twist(const SkewModule& m) {
    SkewModule r = m;
    for (auto& s : r.perm) s = s.scaled(-1);
    return r;
}

// ---------------------------------------------------------------- Koszul transforms

SkewModule inv_theta(const SkewModule& m) {
    if (m.alg != AlgTag::A && m.alg != AlgTag::Abar) throw std::invalid_argument("inv_theta: input must be an A-module");
    if (m.y_in_base()) throw std::invalid_argument("inv_theta: input is not free over Q[x]");
    GradedFreeModule u{xy_ring(m.n), m.under.gens};
    SkewModule r = with_module(m, u);
    r.alg = AlgTag::B;
    r.theta.clear();
    r.y.clear();
    for (std::size_t i = 0; i < m.theta.size(); ++i) {
        Poly yi = Poly::var(m.n + static_cast<int>(i));
        for (std::size_t a = 0; a < m.rank(); ++a)
            for (std::size_t b = 0; b < m.rank(); ++b)
                if (!m.theta[i].at(a, b).is_zero()) r.d.at(a, b) += m.theta[i].at(a, b) * yi;
    }
    r.d.validate();
    return r;
}

SkewModule inv_theta_twisted(const SkewModule& m) { return shift_module(sign_twist(inv_theta(m)), -2 * m.n, -m.n); }

SkewModule coinv_y(const SkewModule& m) {
    if (m.alg != AlgTag::B) throw std::invalid_argument("coinv_y: input must be a B-module");
    int n = m.n;
    SkewModule r;
    r.alg = AlgTag::A;
    r.n = n;
    if (m.y_in_base()) {
        // reduce mod y; the part of d linear in y_i becomes θ_i
        r.under = GradedFreeModule{x_ring(n), m.under.gens};
        r.d = PolyMatrix(r.under, r.under, kD);
        for (int i = 0; i < n; ++i) r.theta.push_back(PolyMatrix(r.under, r.under, kTheta));
        for (std::size_t a = 0; a < m.rank(); ++a)
            for (std::size_t b = 0; b < m.rank(); ++b)
                for (auto& [mono, c] : m.d.at(a, b).terms()) {
                    int ydeg = 0, which = -1;
                    for (int i = 0; i < n; ++i)
                        if (mono.e[n + i]) {
                            ydeg += mono.e[n + i];
                            which = i;
                        }
                    if (ydeg == 0) {
                        r.d.at(a, b).add_term(mono, c);
                    } else if (ydeg == 1) {
                        Mono xm = mono;
                        xm.e[n + which] = 0;
                        r.theta[which].at(a, b).add_term(xm, c);
                    }
                }
        for (auto& s : m.perm) {
            PolyMatrix t(r.under, r.under, kZero);
            for (std::size_t a = 0; a < m.rank(); ++a)
                for (std::size_t b = 0; b < m.rank(); ++b)
                    for (auto& [mono, c] : s.at(a, b).terms()) {
                        bool has_y = false;
                        for (int i = 0; i < n; ++i) has_y |= mono.e[n + i] != 0;
                        if (!has_y) t.at(a, b).add_term(mono, c);
                    }
            r.perm.push_back(t);
        }
        return r;
    }
    // N ⊗ ∧(η_1..η_n), η at (-2, -1): d(η_I ⊗ g) = (-1)^|I| η_I ⊗ dg + Σ_j ι_j η_I ⊗ y_j g, θ_i = ι_i
    std::size_t rk = m.rank();
    r.under = GradedFreeModule{x_ring(n), {}};
    for (unsigned I = 0; I < (1u << n); ++I)
        for (auto& g : m.under.gens) {
            int k = __builtin_popcount(I);
            r.under.gens.push_back({g[0] - 2 * k, g[1] - k});
        }
    r.d = PolyMatrix(r.under, r.under, kD);
    for (int i = 0; i < n; ++i) r.theta.push_back(PolyMatrix(r.under, r.under, kTheta));
    for (unsigned I = 0; I < (1u << n); ++I) {
        Q sg = __builtin_popcount(I) % 2 ? -1 : 1;
        for (std::size_t a = 0; a < rk; ++a)
            for (std::size_t b = 0; b < rk; ++b)
                if (!m.d.at(a, b).is_zero()) r.d.at(I * rk + a, I * rk + b) += m.d.at(a, b) * sg;
        for (int j = 0; j < n; ++j) {
            if (!(I & (1u << j))) continue;
            unsigned J = I & ~(1u << j);
            Q sj = __builtin_popcount(I & ((1u << j) - 1)) % 2 ? -1 : 1;
            for (std::size_t b = 0; b < rk; ++b) {
                r.theta[j].at(J * rk + b, I * rk + b) = Poly(sj);
                for (std::size_t a = 0; a < rk; ++a)
                    if (!m.y[j].at(a, b).is_zero()) r.d.at(J * rk + a, I * rk + b) += m.y[j].at(a, b) * sj;
            }
        }
    }
    for (int j = 1; j < n; ++j) {
        const PolyMatrix& s = m.perm[j - 1];
        PolyMatrix t(r.under, r.under, kZero);
        for (unsigned I = 0; I < (1u << n); ++I) {
            unsigned sI = swap_bits(I, j);
            Q sg = swap_sign(I, j);
            for (std::size_t a = 0; a < rk; ++a)
                for (std::size_t b = 0; b < rk; ++b)
                    if (!s.at(a, b).is_zero()) t.at(sI * rk + a, I * rk + b) = s.at(a, b) * sg;
        }
        r.perm.push_back(t);
    }
    r.d.validate();
    return r;
}

SkewModule coinv_y_twisted(const SkewModule& m) { return shift_module(sign_twist(coinv_y(m)), 2 * m.n, m.n); }

// ---------------------------------------------------------------- dims

DimTable graded_dims(const SkewModule& m, int xlo, int xhi, int clo, int chi, int jobs) {
    std::vector<int> xs;
    for (int x = xlo; x <= xhi; ++x) xs.push_back(x);
    std::vector<std::map<int, long long>> res(xs.size());
    parallel_for(xs.size(), jobs, [&](std::size_t i) {
        int x = xs[i];
        std::map<int, SliceBasis> b;
        for (int c = clo - 1; c <= chi + 1; ++c) b.emplace(c, slice_basis(m.under, {x, c}));
        std::map<int, long long> rk;
        for (int c = clo - 1; c <= chi; ++c) rk[c] = rank(slice_matrix(m.d, b.at(c), b.at(c + 1)));
        for (int c = clo; c <= chi; ++c) {
            long long h = b.at(c).size() - rk[c] - rk[c - 1];
            if (h) res[i][c] = h;
        }
    });
    DimTable t(GradingScheme({"X", "C"}, "C"));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (auto& [c, h] : res[i]) t.add({xs[i], c}, h);
    t.set_lower("X", xlo);
    t.set_upper("X", xhi);
    t.set_lower("C", clo);
    t.set_upper("C", chi);
    return t;
}

// ---------------------------------------------------------------- representations

std::vector<int> cycle_type(const std::vector<int>& perm) {
    std::vector<int> parts;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            ++len;
        }
        parts.push_back(len);
    }
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

std::vector<std::vector<int>> cycle_types(int n) {
    std::vector<std::vector<int>> r;
    for (auto& p : all_perms(n)) r.push_back(cycle_type(p));
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

namespace {

using Dense = std::vector<std::vector<Q>>;

Dense dense_identity(int d) {
    Dense m(d, std::vector<Q>(d, 0));
    for (int i = 0; i < d; ++i) m[i][i] = 1;
    return m;
}

Dense dense_mul(const Dense& a, const Dense& b) {
    int n = static_cast<int>(a.size()), k = static_cast<int>(b.size()), m = k ? static_cast<int>(b[0].size()) : 0;
    Dense r(n, std::vector<Q>(m, 0));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (int j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

std::vector<unsigned> a_subsets(int n, int a) {
    std::vector<unsigned> r;
    for (unsigned m = 0; m < (1u << n); ++m)
        if (__builtin_popcount(m) == a) r.push_back(m);
    return r;
}

// Matrices of every group element, reached from the identity by left multiplication.
template <class M, class Mul>
std::map<std::vector<int>, M> close_group(int n, const std::vector<M>& gens, const M& id, Mul mul) {
    std::vector<int> e(n);
    std::iota(e.begin(), e.end(), 0);
    std::map<std::vector<int>, M> out{{e, id}};
    std::vector<std::vector<int>> frontier{e};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (auto& w : frontier)
            for (int j = 1; j < n; ++j) {
                auto sw = left_mult(j, w);
                if (out.count(sw)) continue;
                out.emplace(sw, mul(gens[j - 1], out.at(w)));
                next.push_back(sw);
            }
        frontier = std::move(next);
    }
    return out;
}

void fill_character(PermRep& r) {
    auto elems = close_group<Dense>(r.n, r.s, dense_identity(r.dim), dense_mul);
    for (auto& [w, m] : elems) {
        Q tr = 0;
        for (int i = 0; i < r.dim; ++i) tr += m[i][i];
        r.character.emplace(cycle_type(w), tr);
    }
}

}  // namespace

bool PermRep::relations_hold() const {
    Dense id = dense_identity(dim);
    for (int j = 0; j + 1 < n; ++j) {
        if (dense_mul(s[j], s[j]) != id) return false;
        if (j + 2 < n && dense_mul(s[j], dense_mul(s[j + 1], s[j])) != dense_mul(s[j + 1], dense_mul(s[j], s[j + 1]))) return false;
        for (int k = j + 2; k + 1 < n; ++k)
            if (dense_mul(s[j], s[k]) != dense_mul(s[k], s[j])) return false;
    }
    // the character is a class function
    auto elems = close_group<Dense>(n, s, id, dense_mul);
    for (auto& [w, m] : elems) {
        Q tr = 0;
        for (int i = 0; i < dim; ++i) tr += m[i][i];
        auto it = character.find(cycle_type(w));
        if (it == character.end() || it->second != tr) return false;
    }
    return true;
}

PermRep wedge_perm_rep(int a, int n) {
    if (a < 0 || a > n || n < 1) throw std::invalid_argument("wedge_perm_rep: degree out of range");
    PermRep r;
    r.n = n;
    auto basis = a_subsets(n, a);
    r.dim = static_cast<int>(basis.size());
    for (int j = 1; j < n; ++j) {
        Dense m(r.dim, std::vector<Q>(r.dim, 0));
        for (int c = 0; c < r.dim; ++c) {
            unsigned t = swap_bits(basis[c], j);
            int row = static_cast<int>(std::lower_bound(basis.begin(), basis.end(), t) - basis.begin());
            m[row][c] = swap_sign(basis[c], j);
        }
        r.s.push_back(m);
    }
    fill_character(r);
    return r;
}

PermRep induced_rep(int a, int n) {
    if (a < 0 || a > n || n < 1) throw std::invalid_argument("induced_rep: degree out of range");
    PermRep r;
    r.n = n;
    // coset g(S_a × S_{n-a}) <-> the a-set g({0..a-1}); g_J sends 0..a-1 and a..n-1 onto J and its
    // complement in increasing order
    auto cosets = a_subsets(n, a);
    r.dim = static_cast<int>(cosets.size());
    auto rep = [&](unsigned J) {
        std::vector<int> g;
        for (int k = 0; k < n; ++k)
            if (J & (1u << k)) g.push_back(k);
        for (int k = 0; k < n; ++k)
            if (!(J & (1u << k))) g.push_back(k);
        return g;
    };
    for (int j = 1; j < n; ++j) {
        Dense m(r.dim, std::vector<Q>(r.dim, 0));
        for (int c = 0; c < r.dim; ++c) {
            std::vector<int> g = rep(cosets[c]), sg = left_mult(j, g);
            unsigned J2 = 0;
            for (int k = 0; k < a; ++k) J2 |= 1u << sg[k];
            std::vector<int> g2 = rep(J2), g2inv(n);
            for (int k = 0; k < n; ++k) g2inv[g2[k]] = k;
            // h = g2^{-1} s g lies in S_a × S_{n-a}; the inducing character is sign on S_a
            std::vector<int> h(a);
            for (int k = 0; k < a; ++k) h[k] = g2inv[sg[k]];
            int row = static_cast<int>(std::lower_bound(cosets.begin(), cosets.end(), J2) - cosets.begin());
            m[row][c] = sign_of(h);
        }
        r.s.push_back(m);
    }
    fill_character(r);
    return r;
}

// ---------------------------------------------------------------- Γ_a

namespace {

// Matrix of the semilinear S on one degree slice.
SparseMat slice_semilinear(const PolyMatrix& s, const std::vector<int>& vp, const SliceBasis& b) {
    SparseMat m(b.size(), b.size());
    for (int c = 0; c < b.size(); ++c) {
        auto& [g, mono] = b.elems[c];
        Poly sm = Poly::monomial(mono).permuted(vp);
        const Mono& smono = sm.terms().begin()->first;
        for (std::size_t r = 0; r < s.rows(); ++r)
            for (auto& [t, v] : s.at(r, g).terms()) {
                auto it = b.index.find({static_cast<int>(r), t * smono});
                if (it == b.index.end()) throw std::logic_error("slice_semilinear: image outside the slice");
                m.add(it->second, c, v);
            }
    }
    return m;
}

SparseMat kron(const SparseMat& a, const SparseMat& b) {
    SparseMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (auto& [j, v] : a.row(i))
            for (int k = 0; k < b.rows(); ++k)
                for (auto& [l, w] : b.row(k)) r.add(i * b.rows() + k, j * b.cols() + l, v * w);
    return r;
}

SparseMat sparse_identity(int d) {
    SparseMat m(d, d);
    for (int i = 0; i < d; ++i) m.add(i, i, 1);
    return m;
}

SparseMat sparse_from_dense(const std::vector<std::vector<Q>>& d) {
    int r = static_cast<int>(d.size()), c = r ? static_cast<int>(d[0].size()) : 0;
    SparseMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (d[i][j] != 0) m.add(i, j, d[i][j]);
    return m;
}

SparseMat sparse_sum(const SparseMat& a, const SparseMat& b) {
    SparseMat r = a;
    for (int i = 0; i < b.rows(); ++i)
        for (auto& [j, v] : b.row(i)) r.add(i, j, v);
    return r;
}

}  // namespace

DimTable gamma_a(const SkewModule& m, int a, int xlo, int xhi, int clo, int chi, int jobs) {
    if (a < 0 || a > m.n) throw std::invalid_argument("gamma_a: degree out of range");
    SkewModule nmod;
    if (m.alg == AlgTag::A) nmod = inv_theta_twisted(m);
    else if (m.alg == AlgTag::Abar) nmod = m;
    else throw std::invalid_argument("gamma_a: input must be an A- or Abar-module");
    PermRep wedge = wedge_perm_rep(a, m.n);
    SparseMat d_wedge = sparse_identity(wedge.dim);
    std::vector<int> xs;
    for (int x = xlo; x <= xhi; ++x) xs.push_back(x);
    std::vector<std::map<int, long long>> res(xs.size());
    parallel_for(xs.size(), jobs, [&](std::size_t i) {
        int x = xs[i];
        std::map<int, SliceBasis> b;
        std::map<int, SparseMat> proj;
        for (int c = clo - 1; c <= chi + 1; ++c) {
            b.emplace(c, slice_basis(nmod.under, {x, c}));
            std::vector<SparseMat> gens;
            for (int j = 1; j < m.n; ++j)
                gens.push_back(kron(sparse_from_dense(wedge.s[j - 1]), slice_semilinear(nmod.perm[j - 1], transposition_on_vars(nmod, j), b.at(c))));
            int dim = wedge.dim * b.at(c).size();
            auto elems = close_group<SparseMat>(m.n, gens, sparse_identity(dim), [](const SparseMat& p, const SparseMat& q) { return p * q; });
            SparseMat p(dim, dim);
            for (auto& [w, g] : elems) p = sparse_sum(p, g);
            proj.emplace(c, p);
        }
        std::map<int, long long> rp, rdp;
        for (int c = clo - 1; c <= chi + 1; ++c) rp[c] = rank(proj.at(c));
        for (int c = clo - 1; c <= chi; ++c) {
            SparseMat dn = kron(d_wedge, slice_matrix(nmod.d, b.at(c), b.at(c + 1)));
            rdp[c] = rank(dn * proj.at(c));
        }
        for (int c = clo; c <= chi; ++c) {
            long long h = rp[c] - rdp[c] - rdp[c - 1];
            if (h) res[i][c] = h;
        }
    });
    DimTable t(GradingScheme({"X", "C"}, "C"));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (auto& [c, h] : res[i]) t.add({xs[i], c}, h);
    t.set_lower("X", xlo);
    t.set_upper("X", xhi);
    t.set_lower("C", clo);
    t.set_upper("C", chi);
    return t;
}

DimTable tau_tilde(const DimTable& gamma, int a) {
    DimTable out(GradingScheme({"Q'", "A'", "T'"}, "T'"));
    for (auto& [d, v] : gamma.entries()) out.add({d[0] + 2 * a, d[0] + a, d[1] - d[0]}, v);
    // X = A' - a and C = T' + A' - a; the slice sits at Q' - A' = a
    for (auto& h : gamma.window().constraints()) {
        long long ax = h.a[0], ac = h.a[1];
        out.window().add(Halfspace{{0, ax + ac, ac}, h.b + (ax + ac) * a});
    }
    out.window().add(Halfspace{{1, -1, 0}, a});
    out.window().add(Halfspace{{-1, 1, 0}, -a});
    return out;
}

bool weight_heart_check(const SkewModule& m) {
    if (!m.d.is_zero()) return false;
    for (auto& g : m.under.gens)
        if (g[0] != g[1]) return false;
    return true;
}

NilpReport nilp_y_check(const SkewModule& m, int bound, int xlo, int xhi, int clo, int chi) {
    NilpReport rep;
    if (m.alg != AlgTag::B) throw std::invalid_argument("nilp_y_check: input must be a B-module");
    int n = m.n;
    if (!m.y_in_base()) {
        std::vector<PolyMatrix> pw = m.y;
        for (int p = 1; p <= bound; ++p) {
            bool all = true;
            for (auto& q : pw) all &= q.is_zero();
            if (all) {
                rep.nilpotent = true;
                rep.power = p;
                return rep;
            }
            for (int i = 0; i < n; ++i) pw[i] = m.y[i] * pw[i];
        }
        rep.witness = "some y_i^" + std::to_string(bound) + " is nonzero at chain level";
        return rep;
    }
    // y in the base: test y_i^p on cohomology classes of the box whose image stays in the box
    for (int p = 1; p <= bound; ++p) {
        bool killed = true;
        std::string w;
        for (int x = xlo; x <= xhi && killed; ++x) {
            int xt = x - 2 * p;
            if (xt < xlo) continue;
            for (int c = clo; c <= chi && killed; ++c) {
                SliceBasis s = slice_basis(m.under, {x, c}), sprev = slice_basis(m.under, {xt, c - 1}),
                           st = slice_basis(m.under, {xt, c}), snext = slice_basis(m.under, {x, c + 1});
                if (s.size() == 0) continue;
                SparseMat z = kernel(slice_matrix(m.d, s, snext));
                if (z.cols() == 0) continue;
                Echelon e(st.size());
                SparseMat bnd = slice_matrix(m.d, sprev, st).transposed();
                for (int r = 0; r < bnd.rows(); ++r) e.insert(bnd.row(r));
                int base = e.rank();
                for (int i = 0; i < n && killed; ++i) {
                    Poly yp = Poly::var(n + i).pow(p);
                    SparseMat img = (slice_multiply(yp, s, st) * z).transposed();
                    Echelon e2 = e;
                    for (int r = 0; r < img.rows(); ++r) e2.insert(img.row(r));
                    if (e2.rank() > base) {
                        killed = false;
                        w = "y" + std::to_string(i + 1) + "^" + std::to_string(p) + " is nonzero on a class at (X, C) = (" +
                            std::to_string(x) + ", " + std::to_string(c) + ")";
                    }
                }
            }
        }
        if (killed) {
            rep.nilpotent = true;
            rep.power = p;
            return rep;
        }
        rep.witness = w;
    }
    return rep;
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const SkewModule& m) {
    nlohmann::json j;
    j["alg"] = alg_name(m.alg);
    j["n"] = m.n;
    j["y_in_base"] = m.y_in_base();
    j["gens"] = m.under.gens;
    j["d"] = to_json(m.d);
    for (const char* key : {"theta", "y", "perm"}) j[key] = nlohmann::json::array();
    for (auto& t : m.theta) j["theta"].push_back(to_json(t));
    for (auto& t : m.y) j["y"].push_back(to_json(t));
    for (auto& t : m.perm) j["perm"].push_back(to_json(t));
    return j;
}

SkewModule skew_module_from_json(const nlohmann::json& j) {
    SkewModule m;
    m.alg = alg_from_name(j.at("alg").get<std::string>());
    m.n = j.at("n").get<int>();
    RingPtr ring = j.at("y_in_base").get<bool>() ? xy_ring(m.n) : x_ring(m.n);
    m.under = GradedFreeModule{ring, j.at("gens").get<std::vector<MultiDegree>>()};
    m.d = polymatrix_from_json(j.at("d"), ring);
    for (auto& t : j.at("theta")) m.theta.push_back(polymatrix_from_json(t, ring));
    for (auto& t : j.at("y")) m.y.push_back(polymatrix_from_json(t, ring));
    for (auto& t : j.at("perm")) m.perm.push_back(polymatrix_from_json(t, ring));
    ModuleReport rep = check_module(m);
    if (!rep.ok) throw std::invalid_argument("skew module json: " + rep.witness);
    return m;
}

}  // namespace hhh
