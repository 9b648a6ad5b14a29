#include "hhh/soergel.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hhh {

RingPtr ring_for(int n) {
    static std::mutex mu;
    static std::map<int, RingPtr> rings;
    std::lock_guard<std::mutex> g(mu);
    auto& r = rings[n];
    if (!r) r = PolyRing::standard(n);
    return r;
}

static MultiDegree xdeg(int k) { return MultiDegree{k}; }

// Generator j*|M| + i is m_i ⊗ n_j.
static GradedFreeModule tensor_gens(const GradedFreeModule& m, const GradedFreeModule& n) {
    GradedFreeModule r{m.ring, {}};
    for (auto& gn : n.gens)
        for (auto& gm : m.gens) r.gens.push_back({gm[0] + gn[0]});
    return r;
}

Bimodule regular_bimodule(int n) {
    Bimodule b;
    b.n = n;
    b.under = GradedFreeModule{ring_for(n), {xdeg(0)}};
    for (int j = 0; j < n; ++j) {
        PolyMatrix r(b.under, b.under, xdeg(2));
        r.at(0, 0) = Poly::var(j);
        b.rho.push_back(r);
    }
    return b;
}

Bimodule bs_generator(int i, int n) {
    if (i < 1 || i >= n) throw std::invalid_argument("bs generator: index out of range");
    Bimodule b;
    b.n = n;
    b.word = {i};
    // e = 1⊗1 at -1, f = 1⊗x_i at +1
    b.under = GradedFreeModule{ring_for(n), {xdeg(-1), xdeg(1)}};
    Poly x = Poly::var(i - 1), y = Poly::var(i);
    for (int j = 0; j < n; ++j) {
        PolyMatrix r(b.under, b.under, xdeg(2));
        if (j == i - 1) {
            r.at(0, 1) = -(x * y);
            r.at(1, 0) = Poly(1L);
            r.at(1, 1) = x + y;
        } else if (j == i) {
            r.at(0, 0) = x + y;
            r.at(0, 1) = x * y;
            r.at(1, 0) = Poly(-1L);
        } else {
            r.at(0, 0) = Poly::var(j);
            r.at(1, 1) = Poly::var(j);
        }
        b.rho.push_back(r);
    }
    return b;
}

Bimodule bs_word(const std::vector<int>& word, int n) {
    Bimodule b = regular_bimodule(n);
    for (int s : word) b = tensor(b, bs_generator(s, n));
    return b;
}

Bimodule shifted(const Bimodule& m, int k) {
    Bimodule r = m;
    r.shift += k;
    for (auto& g : r.under.gens) g[0] += k;
    for (auto& p : r.rho) p = p.relabeled(r.under, r.under, p.degree());
    return r;
}

PolyMatrix right_action(const Bimodule& m, const Poly& p) {
    MultiDegree d{0};
    m.under.ring->homogeneous(p, &d);
    PolyMatrix out = PolyMatrix::zero(m.under, m.under, d);
    std::vector<std::vector<PolyMatrix>> pw(m.n);
    auto power = [&](int v, int e) -> const PolyMatrix& {
        auto& cache = pw[v];
        if (cache.empty()) cache.push_back(PolyMatrix::identity(m.under));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(m.rho[v] * cache.back());
        return cache[e];
    };
    for (auto& [mono, c] : p.terms()) {
        PolyMatrix t = PolyMatrix::identity(m.under);
        bool first = true;
        for (int v = 0; v < m.n; ++v) {
            if (!mono.e[v]) continue;
            t = first ? power(v, mono.e[v]) : power(v, mono.e[v]) * t;
            first = false;
        }
        out = out + t.scaled(c).relabeled(m.under, m.under, d);
    }
    return out;
}

PolyMatrix left_action(const Bimodule& m, const Poly& p) {
    MultiDegree d{0};
    m.under.ring->homogeneous(p, &d);
    PolyMatrix out(m.under, m.under, d);
    for (std::size_t i = 0; i < m.rank(); ++i) out.at(i, i) = p;
    return out;
}

PolyMatrix tensor_id(const PolyMatrix& f, const Bimodule& n) {
    GradedFreeModule s = tensor_gens(f.source(), n.under), t = tensor_gens(f.target(), n.under);
    PolyMatrix r(s, t, f.degree());
    std::size_t rs = f.cols(), rt = f.rows();
    for (std::size_t j = 0; j < n.rank(); ++j)
        for (std::size_t a = 0; a < rt; ++a)
            for (std::size_t b = 0; b < rs; ++b)
                if (!f.at(a, b).is_zero()) r.at(j * rt + a, j * rs + b) = f.at(a, b);
    return r;
}

PolyMatrix id_tensor(const Bimodule& m, const PolyMatrix& g) {
    GradedFreeModule s = tensor_gens(m.under, g.source()), t = tensor_gens(m.under, g.target());
    PolyMatrix r(s, t, g.degree());
    std::size_t rm = m.rank();
    for (std::size_t k = 0; k < g.rows(); ++k)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const Poly& p = g.at(k, j);
            if (p.is_zero()) continue;
            PolyMatrix block = right_action(m, p);
            for (std::size_t a = 0; a < rm; ++a)
                for (std::size_t b = 0; b < rm; ++b)
                    if (!block.at(a, b).is_zero()) r.at(k * rm + a, j * rm + b) = block.at(a, b);
        }
    return r;
}

Bimodule tensor(const Bimodule& m, const Bimodule& n) {
    if (m.n != n.n) throw std::invalid_argument("tensor: strand counts differ");
    Bimodule r;
    r.n = m.n;
    r.under = tensor_gens(m.under, n.under);
    r.word = m.word;
    r.word.insert(r.word.end(), n.word.begin(), n.word.end());
    r.shift = m.shift + n.shift;
    for (auto& p : n.rho) r.rho.push_back(id_tensor(m, p));
    return r;
}

bool is_bimodule_map(const Bimodule& m, const Bimodule& n, const PolyMatrix& f) {
    for (int j = 0; j < m.n; ++j)
        if (f * m.rho[j] != n.rho[j] * f) return false;
    return true;
}

BimoduleReport check_bimodule(const Bimodule& m) {
    BimoduleReport rep;
    auto fail = [&](const std::string& w) {
        rep.ok = false;
        rep.witness = w;
        return rep;
    };
    if (static_cast<int>(m.rho.size()) != m.n) return fail("wrong number of right actions");
    for (int j = 0; j < m.n; ++j) {
        if (m.rho[j].degree() != xdeg(2)) return fail("right action of x" + std::to_string(j + 1) + " has wrong degree");
        try {
            m.rho[j].validate();
        } catch (const std::invalid_argument& e) {
            return fail("x" + std::to_string(j + 1) + ": " + e.what());
        }
    }
    for (int a = 0; a < m.n; ++a)
        for (int b = a + 1; b < m.n; ++b)
            if (m.rho[a] * m.rho[b] != m.rho[b] * m.rho[a])
                return fail("right actions of x" + std::to_string(a + 1) + " and x" + std::to_string(b + 1) + " do not commute");
    for (int k = 1; k <= m.n; ++k) {
        Poly e = elem_sym(k, m.n, *m.under.ring);
        if (right_action(m, e) != left_action(m, e)) return fail("left and right e" + std::to_string(k) + " differ");
    }
    return rep;
}

static Poly det(const PolyMatrix& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
    if (rows.size() == 1) return m.at(rows[0], cols[0]);
    Poly r;
    std::size_t r0 = rows[0];
    std::vector<std::size_t> rest(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (m.at(r0, cols[k]).is_zero()) continue;
        std::vector<std::size_t> c2 = cols;
        c2.erase(c2.begin() + k);
        Poly t = m.at(r0, cols[k]) * det(m, rest, c2);
        if (k % 2) r -= t; else r += t;
    }
    return r;
}

PolyMatrix invert_unimodular(const PolyMatrix& m) {
    std::size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("invert: matrix is not square");
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    Poly d = det(m, all, all);
    if (!d.is_constant() || d.is_zero()) throw std::invalid_argument("invert: determinant is not a nonzero constant");
    Q inv = 1 / d.constant();
    MultiDegree deg = m.degree();
    for (auto& v : deg) v = -v;
    PolyMatrix r(m.target(), m.source(), deg);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // adj(m)_{ij} = (-1)^{i+j} minor with row j and column i removed
            std::vector<std::size_t> rows = all, cols = all;
            rows.erase(rows.begin() + j);
            cols.erase(cols.begin() + i);
            Poly c = n == 1 ? Poly(1L) : det(m, rows, cols);
            if ((i + j) % 2) c *= Q(-1);
            r.at(i, j) = c * inv;
        }
    return r;
}

SquareSplitting square_splitting(int i, int n) {
    SquareSplitting s;
    Bimodule b = bs_generator(i, n);
    s.square = tensor(b, b);
    s.sum = GradedFreeModule{ring_for(n), {xdeg(-2), xdeg(0), xdeg(0), xdeg(2)}};
    PolyMatrix merge(s.sum, s.square.under, xdeg(0));
    const PolyMatrix& rx = s.square.rho[i - 1];
    // copy -1: e -> e⊗e; copy +1: e -> f⊗e - e⊗f; each f -> (image of e)·x_i
    merge.at(0, 0) = Poly(1L);
    merge.at(1, 2) = Poly(1L);
    merge.at(2, 2) = Poly(-1L);
    for (std::size_t r = 0; r < 4; ++r) {
        merge.at(r, 1) = rx.at(r, 0);
        merge.at(r, 3) = rx.at(r, 1) - rx.at(r, 2);
    }
    merge.validate();
    s.merge = merge;
    s.split = invert_unimodular(merge);
    s.split.validate();
    return s;
}

nlohmann::json to_json(const Bimodule& m) {
    nlohmann::json j;
    j["n"] = m.n;
    j["gens"] = m.under.gens;
    j["word"] = m.word;
    j["shift"] = m.shift;
    j["rho"] = nlohmann::json::array();
    for (auto& r : m.rho) j["rho"].push_back(to_json(r));
    return j;
}

Bimodule bimodule_from_json(const nlohmann::json& j) {
    Bimodule m;
    m.n = j.at("n").get<int>();
    RingPtr ring = ring_for(m.n);
    m.under = GradedFreeModule{ring, j.at("gens").get<std::vector<MultiDegree>>()};
    m.word = j.at("word").get<std::vector<int>>();
    m.shift = j.at("shift").get<int>();
    for (auto& r : j.at("rho")) m.rho.push_back(polymatrix_from_json(r, ring));
    if (static_cast<int>(m.rho.size()) != m.n) throw std::invalid_argument("bimodule json: wrong number of right actions");
    return m;
}

}  // namespace hhh
