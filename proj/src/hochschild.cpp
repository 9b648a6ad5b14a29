#include "hhh/hochschild.hpp"

#include <algorithm>
#include <tuple>
#include <stdexcept>

namespace hhh {

GradingScheme hhh_scheme() { return GradingScheme({"a", "X", "C"}, "C"); }

namespace {

// Subsets of {0..n-1} of size a, as bitmasks in increasing order.
std::vector<unsigned> subsets(int n, int a) {
    std::vector<unsigned> r;
    for (unsigned m = 0; m < (1u << n); ++m)
        if (__builtin_popcount(m) == a) r.push_back(m);
    return r;
}

GradedFreeModule koszul_term(const Bimodule& m, int a) {
    GradedFreeModule k{m.under.ring, {}};
    if (a < 0 || a > m.n) return k;
    for (std::size_t s = 0; s < subsets(m.n, a).size(); ++s)
        for (auto& g : m.under.gens) k.gens.push_back({g[0] + 2 * a});
    return k;
}

// Σ_i ±(x_i - ρ_i) ⊗ (contract θ_i) : M ⊗ ∧^a -> M ⊗ ∧^(a-1)
PolyMatrix koszul_map(const Bimodule& m, int a) {
    GradedFreeModule src = koszul_term(m, a), tgt = koszul_term(m, a - 1);
    PolyMatrix d(src, tgt, {0});
    if (a < 1 || a > m.n) return d;
    auto from = subsets(m.n, a), to = subsets(m.n, a - 1);
    std::size_t r = m.rank();
    for (std::size_t si = 0; si < from.size(); ++si) {
        unsigned I = from[si];
        int pos = 0;
        for (int i = 0; i < m.n; ++i) {
            if (!(I & (1u << i))) continue;
            std::size_t ti = std::lower_bound(to.begin(), to.end(), I & ~(1u << i)) - to.begin();
            Q sign = (pos++ % 2) ? -1 : 1;
            const PolyMatrix& rho = m.rho[i];
            for (std::size_t x = 0; x < r; ++x)
                for (std::size_t y = 0; y < r; ++y) {
                    Poly e = rho.at(x, y) * Q(-1);
                    if (x == y) e += Poly::var(i);
                    if (!e.is_zero()) d.at(ti * r + x, si * r + y) = e * sign;
                }
        }
    }
    return d;
}

PolyMatrix block_diagonal(const PolyMatrix& f, std::size_t copies, const GradedFreeModule& src, const GradedFreeModule& tgt) {
    PolyMatrix r(src, tgt, f.degree());
    for (std::size_t c = 0; c < copies; ++c)
        for (std::size_t x = 0; x < f.rows(); ++x)
            for (std::size_t y = 0; y < f.cols(); ++y)
                if (!f.at(x, y).is_zero()) r.at(c * f.rows() + x, c * f.cols() + y) = f.at(x, y);
    return r;
}

SparseMat columns_as_rows(const SparseMat& m) { return m.transposed(); }

}  // namespace

FreeComplex koszul_hh(const Bimodule& m) {
    FreeComplex c(m.under.ring);
    for (int a = 0; a <= m.n; ++a) c.set_object(-a, koszul_term(m, a));
    for (int a = 1; a <= m.n; ++a) c.set_differential(-a, koszul_map(m, a));
    return c;
}

DimTable hh_dims(const Bimodule& m, int xmax, int jobs) {
    int lo = 0;
    bool first = true;
    for (auto& g : m.under.gens) {
        lo = first ? g[0] : std::min(lo, g[0]);
        first = false;
    }
    DimTable raw = homology_dims(koszul_hh(m), {{lo, xmax}}, jobs);
    DimTable t(GradingScheme({"a", "X"}, "a"));
    for (auto& [d, v] : raw.entries()) t.add({-d[1], d[0]}, v);
    t.set_upper("X", xmax);
    return t;
}

// ---------------------------------------------------------------- HHHEngine

HHHEngine::HHHEngine(const BimoduleComplex& c) : n_(c.n()), a_off_(c.a_offset()), ring_(ring_for(c.n())) {
    empty_ = GradedFreeModule{ring_, {}};
    auto deg = c.degrees();
    if (deg.empty()) return;
    hmin_ = deg.front();
    hmax_ = deg.back();
    bool first = true;
    std::map<int, Bimodule> flat;
    for (int h = hmin_; h <= hmax_; ++h) {
        flat.emplace(h, c.flat(h));
        for (auto& g : flat.at(h).under.gens) {
            xmin_ = first ? g[0] : std::min(xmin_, g[0]);
            first = false;
        }
    }
    for (int h = hmin_; h <= hmax_; ++h)
        for (int a = 0; a <= n_; ++a) {
            k_[{a, h}] = koszul_term(flat.at(h), a);
            if (a >= 1) dk_[{a, h}] = koszul_map(flat.at(h), a);
        }
    for (int h = hmin_; h < hmax_; ++h) {
        PolyMatrix d = c.flat_differential(h);
        for (int a = 0; a <= n_; ++a) {
            std::size_t copies = subsets(n_, a).size();
            dr_[{a, h}] = block_diagonal(d, copies, k_.at({a, h}), k_.at({a, h + 1}));
        }
    }
}

const GradedFreeModule& HHHEngine::term(int a, int h) const {
    auto it = k_.find({a, h});
    return it == k_.end() ? empty_ : it->second;
}

PolyMatrix HHHEngine::koszul_d(int a, int h) const {
    auto it = dk_.find({a, h});
    if (it != dk_.end()) return it->second;
    return PolyMatrix::zero(term(a, h), term(a - 1, h), {0});
}

PolyMatrix HHHEngine::rouquier_d(int a, int h) const {
    auto it = dr_.find({a, h});
    if (it != dr_.end()) return it->second;
    return PolyMatrix::zero(term(a, h), term(a, h + 1), {0});
}

namespace {

// Slice bases and matrices of the Koszul bicomplex at one internal degree.
struct SliceCache {
    const HHHEngine& e;
    int xn;
    std::map<std::pair<int, int>, SliceBasis> bases;

    const SliceBasis& basis(int a, int h) {
        auto it = bases.find({a, h});
        if (it == bases.end()) it = bases.emplace(std::make_pair(a, h), slice_basis(e.term(a, h), {xn})).first;
        return it->second;
    }
    int dim(int a, int h) { return basis(a, h).size(); }
    SparseMat kd(int a, int h) { return slice_matrix(e.koszul_d(a, h), basis(a, h), basis(a - 1, h)); }
    SparseMat rd(int a, int h) { return slice_matrix(e.rouquier_d(a, h), basis(a, h), basis(a, h + 1)); }
};

// [[A, 0], [B, C]]
SparseMat block2(const SparseMat& a, const SparseMat& b, const SparseMat& c) {
    SparseMat z(a.rows(), c.cols());
    return SparseMat::vstack(SparseMat::hstack(a, z), SparseMat::hstack(b, c));
}

}  // namespace

std::map<int, long long> HHHEngine::e2_column(int a, int xn) const {
    std::map<int, long long> out;
    if (hmax_ < hmin_ || a < 0 || a > n_) return out;
    SliceCache s{*this, xn, {}};
    std::map<int, long long> dimk, ra, ra1, rphi;
    for (int h = hmin_; h <= hmax_; ++h) {
        dimk[h] = s.dim(a, h);
        ra[h] = rank(s.kd(a, h));
        ra1[h] = rank(s.kd(a + 1, h));
    }
    for (int h = hmin_; h < hmax_; ++h) {
        if (s.dim(a, h) == 0 && s.dim(a + 1, h + 1) == 0) {
            rphi[h] = 0;
            continue;
        }
        rphi[h] = rank(block2(s.kd(a, h), s.rd(a, h), s.kd(a + 1, h + 1)));
    }
    std::map<int, long long> hom, rdbar;
    for (int h = hmin_; h <= hmax_; ++h) hom[h] = dimk[h] - ra[h] - ra1[h];
    for (int h = hmin_; h < hmax_; ++h) rdbar[h] = rphi[h] - ra[h] - ra1[h + 1];
    for (int h = hmin_; h <= hmax_; ++h) {
        long long v = hom[h];
        if (rdbar.count(h)) v -= rdbar[h];
        if (rdbar.count(h - 1)) v -= rdbar[h - 1];
        if (v < 0) throw std::logic_error("e2: negative dimension");
        if (v) out[h] = v;
    }
    return out;
}

long long HHHEngine::operator_rank(const Poly& p, int a, int h, int xn) const {
    MultiDegree dp{0};
    if (!p.is_zero() && !ring_->homogeneous(p, &dp)) throw std::invalid_argument("operator_rank: inhomogeneous operator");
    if (p.is_zero()) return 0;
    SliceCache s{*this, xn, {}}, t{*this, xn + dp[0], {}};
    int nk = s.dim(a, h);
    if (nk == 0) return 0;
    // cycles on page two: (u, v) with ∂u = 0 and Du = ∂v
    SparseMat neg = s.kd(a + 1, h + 1);
    for (int r = 0; r < neg.rows(); ++r)
        for (auto& [c, v] : neg.row(r)) v = -v;
    SparseMat psi = block2(s.kd(a, h), s.rd(a, h), neg);
    SparseMat ker = kernel(psi);  // columns
    SparseMat z(nk, ker.cols());
    for (int r = 0; r < nk; ++r) z.row(r) = ker.row(r);
    SparseMat image = slice_multiply(p, s.basis(a, h), t.basis(a, h)) * z;
    // boundaries on page two at the target degree
    int mt = t.dim(a, h);
    Echelon ech(mt);
    SparseMat b1r = columns_as_rows(t.kd(a + 1, h));
    for (int r = 0; r < b1r.rows(); ++r) ech.insert(b1r.row(r));
    if (h - 1 >= hmin_) {
        SparseMat zk = kernel(t.kd(a, h - 1));
        SparseMat b2 = t.rd(a, h - 1) * zk;
        SparseMat b2r = columns_as_rows(b2);
        for (int r = 0; r < b2r.rows(); ++r) ech.insert(b2r.row(r));
    }
    int base = ech.rank();
    SparseMat ir = columns_as_rows(image);
    for (int r = 0; r < ir.rows(); ++r) ech.insert(ir.row(r));
    return ech.rank() - base;
}

std::map<int, long long> HHHEngine::total_homology(int xn) const {
    std::map<int, long long> out;
    if (hmax_ < hmin_) return out;
    SliceCache s{*this, xn, {}};
    int tlo = hmin_ - n_, thi = hmax_;
    // offsets of (a, h) inside the total term t = h - a
    std::map<int, std::vector<std::pair<int, int>>> parts;
    std::map<std::pair<int, int>, int> off;
    std::map<int, int> size;
    for (int t = tlo; t <= thi; ++t) {
        int o = 0;
        for (int a = 0; a <= n_; ++a) {
            int h = t + a;
            if (h < hmin_ || h > hmax_) continue;
            parts[t].push_back({a, h});
            off[{a, h}] = o;
            o += s.dim(a, h);
        }
        size[t] = o;
    }
    std::map<int, long long> rk;
    for (int t = tlo; t < thi; ++t) {
        SparseMat m(size[t + 1], size[t]);
        auto place = [&](const SparseMat& b, int ro, int co) {
            for (int r = 0; r < b.rows(); ++r)
                for (auto& [c, v] : b.row(r)) m.add(ro + r, co + c, v);
        };
        for (auto [a, h] : parts[t]) {
            if (h + 1 <= hmax_) place(s.rd(a, h), off.at({a, h + 1}), off.at({a, h}));
            if (a >= 1) {
                SparseMat k = s.kd(a, h);
                if (h % 2) {
                    for (int r = 0; r < k.rows(); ++r)
                        for (auto& [c, v] : k.row(r)) v = -v;
                }
                place(k, off.at({a - 1, h}), off.at({a, h}));
            }
        }
        rk[t] = rank(m);
    }
    for (int t = tlo; t <= thi; ++t) {
        long long v = size[t];
        if (rk.count(t)) v -= rk[t];
        if (rk.count(t - 1)) v -= rk[t - 1];
        if (v) out[t] = v;
    }
    return out;
}

MultiDegree hhh_coordinates(const HHHEngine& e, int a, int h, int xn) {
    int x = xn - 2 * a;
    return {a + e.a_offset(), x, x + h};
}

HHHTable assemble_hhh(const HHHEngine& e, int qmax, int jobs) {
    HHHTable t;
    t.n = e.n();
    t.dims = DimTable(hhh_scheme());
    t.dims.set_upper("C", 2LL * qmax);
    if (e.hmax() < e.hmin()) return t;
    std::vector<std::pair<int, int>> tasks;
    for (int a = 0; a <= e.n(); ++a)
        for (int xn = e.min_internal(); xn <= 2 * qmax + 2 * a - e.hmin(); ++xn) tasks.push_back({a, xn});
    std::vector<std::map<int, long long>> res(tasks.size());
    parallel_for(tasks.size(), jobs, [&](std::size_t i) { res[i] = e.e2_column(tasks[i].first, tasks[i].second); });
    for (std::size_t i = 0; i < tasks.size(); ++i)
        for (auto& [h, v] : res[i]) {
            MultiDegree d = hhh_coordinates(e, tasks[i].first, h, tasks[i].second);
            if (d[2] <= 2 * qmax) t.dims.add(d, v);
        }
    return t;
}

HHHTable assemble_hhh(const BimoduleComplex& c, int qmax, int jobs) { return assemble_hhh(HHHEngine(c), qmax, jobs); }

// ---------------------------------------------------------------- render

Render parse_render(const std::string& name) {
    if (name == "QpApTp" || name == "Q'A'T'") return Render::QpApTp;
    if (name == "QAT") return Render::QAT;
    if (name == "qat") return Render::qat;
    if (name == "tilde" || name == "tilde-per") return Render::tilde;
    throw std::invalid_argument("unknown render convention: " + name);
}

std::string render_name(Render r) {
    switch (r) {
        case Render::QpApTp: return "QpApTp";
        case Render::QAT: return "QAT";
        case Render::qat: return "qat";
        case Render::tilde: return "tilde";
    }
    return "?";
}

static long long floordiv(long long a, long long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

DimTable render(const HHHTable& t, Render r) {
    GradingScheme src = hhh_scheme();
    switch (r) {
        case Render::QpApTp:
            return regrade(t.dims, Regrading{src, GradingScheme({"Q'", "A'", "T'"}, "T'"), {{2, 1, 0}, {1, 1, 0}, {0, -1, 1}}});
        case Render::QAT:
            return regrade(t.dims, Regrading{src, GradingScheme({"Q", "A", "T"}, "T"), {{2, 1, 0}, {-1, 0, 0}, {0, -1, 1}}});
        case Render::qat:
            return regrade(t.dims, Regrading{src, GradingScheme({"a", "q2", "t2"}, "t2"), {{1, 0, 0}, {0, 0, 1}, {0, -1, 1}}});
        case Render::tilde: {
            // representative (a, X, Y = k, C - 2k) of the β-orbit with C - 2k in {0, 1}, then
            // (X, Y) -> (Xt, Yt) = (Y, 2Y - X)
            DimTable out(GradingScheme({"a", "Xt", "Yt", "C"}, "C"));
            for (auto& [d, v] : t.dims.entries()) {
                long long k = floordiv(d[2], 2);
                out.add({d[0], static_cast<int>(k), static_cast<int>(2 * k - d[1]), static_cast<int>(d[2] - 2 * k)}, v);
            }
            out.set_lower("C", 0);
            out.set_upper("C", 1);
            for (auto& h : t.dims.window().constraints()) {
                // only constraints on C (a_C * C <= b) carry over: C = 2 Xt + c
                if (h.a[0] != 0 || h.a[1] != 0) throw std::invalid_argument("render tilde: unsupported window");
                out.window().add(Halfspace{{0, 2 * h.a[2], 0, h.a[2]}, h.b});
            }
            return out;
        }
    }
    throw std::invalid_argument("render: unknown convention");
}

std::map<MultiDegree, long long> decategorify(const DimTable& rendered) {
    std::map<MultiDegree, long long> out;
    bool tilde = rendered.scheme().has("Xt");
    int c = rendered.scheme().cohomological();
    for (auto& [d, v] : rendered.entries()) {
        long long s = v;
        MultiDegree key = d;
        if (tilde) {
            if (d[c] % 2) s = -s;
            key.erase(key.begin() + c);
        }
        out[key] += s;
        if (out[key] == 0) out.erase(key);
    }
    return out;
}

SymfunOperator symfun_operator(const BimoduleComplex& c, int k, int qmax, int jobs) {
    if (k < 0 || k > c.n()) throw std::invalid_argument("symfun: degree out of range");
    SymfunOperator op;
    op.k = k;
    RingPtr ring = ring_for(c.n());
    Poly e = elem_sym(k, c.n(), *ring);
    for (int h : c.degrees()) {
        Bimodule b = c.flat(h);
        op.left.emplace(h, left_action(b, e));
        op.right.emplace(h, right_action(b, e));
    }
    HHHEngine eng(c);
    if (eng.hmax() < eng.hmin()) return op;
    std::vector<std::tuple<int, int, int>> tasks;
    for (int a = 0; a <= eng.n(); ++a)
        for (int xn = eng.min_internal(); xn <= 2 * qmax + 2 * a - eng.hmin(); ++xn)
            for (int h = eng.hmin(); h <= eng.hmax(); ++h) {
                MultiDegree tgt = hhh_coordinates(eng, a, h, xn + 2 * k);
                if (tgt[2] <= 2 * qmax) tasks.emplace_back(a, h, xn);
            }
    std::vector<long long> rk(tasks.size(), 0);
    std::vector<long long> dim(tasks.size(), 0);
    parallel_for(tasks.size(), jobs, [&](std::size_t i) {
        auto [a, h, xn] = tasks[i];
        auto col = eng.e2_column(a, xn);
        auto it = col.find(h);
        if (it == col.end()) return;
        dim[i] = it->second;
        rk[i] = eng.operator_rank(e, a, h, xn);
    });
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!dim[i]) continue;
        auto [a, h, xn] = tasks[i];
        op.hhh_rank[hhh_coordinates(eng, a, h, xn)] = rk[i];
    }
    return op;
}

nlohmann::json to_json(const HHHTable& t) {
    return {{"strands", t.n}, {"word", t.word}, {"writhe", t.writhe}, {"permutation", t.permutation}, {"dims", to_json(t.dims)}};
}

HHHTable hhh_table_from_json(const nlohmann::json& j) {
    HHHTable t;
    t.n = j.at("strands").get<int>();
    t.word = j.at("word").get<std::vector<int>>();
    t.writhe = j.at("writhe").get<int>();
    t.permutation = j.at("permutation").get<std::vector<int>>();
    t.dims = dimtable_from_json(j.at("dims"));
    if (t.dims.scheme() != hhh_scheme()) throw std::invalid_argument("hhh table json: wrong axes");
    return t;
}

}  // namespace hhh
