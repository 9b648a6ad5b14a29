#include "hhh/rouquier.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace hhh {

int BraidWord::writhe() const { return positive_count() - negative_count(); }

int BraidWord::positive_count() const {
    return static_cast<int>(std::count_if(letters.begin(), letters.end(), [](int l) { return l > 0; }));
}

int BraidWord::negative_count() const {
    return static_cast<int>(std::count_if(letters.begin(), letters.end(), [](int l) { return l < 0; }));
}

std::vector<int> BraidWord::permutation() const {
    // at[p] = strand currently at position p
    std::vector<int> at(n);
    for (int i = 0; i < n; ++i) at[i] = i;
    for (int l : letters) {
        int i = std::abs(l);
        std::swap(at[i - 1], at[i]);
    }
    std::vector<int> perm(n);
    for (int p = 0; p < n; ++p) perm[at[p]] = p;
    return perm;
}

int BraidWord::components() const {
    std::vector<int> perm = permutation();
    std::vector<bool> seen(n, false);
    int c = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++c;
        for (int j = i; !seen[j]; j = perm[j]) seen[j] = true;
    }
    return c;
}

std::string BraidWord::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters.size(); ++i) os << (i ? " " : "") << letters[i];
    return os.str();
}

BraidWord parse_braid_word(const std::string& text, int n) {
    if (n < 1) throw std::invalid_argument("braid: strand count must be positive");
    BraidWord b;
    b.n = n;
    std::size_t i = 0, k = 0;
    while (true) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == text.size()) break;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::string tok = text.substr(start, i - start);
        std::string where = " (token " + std::to_string(k + 1) + ", offset " + std::to_string(start) + ")";
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || used == 0) throw std::invalid_argument("braid: not an integer: " + tok + where);
        if (v == 0) throw std::invalid_argument("braid: zero generator" + where);
        if (std::abs(v) >= n) throw std::invalid_argument("braid: generator out of range: " + tok + where);
        b.letters.push_back(v);
        ++k;
    }
    return b;
}

// Pinned so that a positive stabilization leaves HHH unchanged: the closure of σ_1 on two strands
// sits one Koszul degree and one internal degree away from the unknot.
Normalization default_normalization() { return Normalization{1, -1, -1}; }

// ---------------------------------------------------------------- BimoduleComplex

const std::map<std::pair<int, int>, PolyMatrix>& BimoduleComplex::blocks(int h) const {
    static const std::map<std::pair<int, int>, PolyMatrix> none;
    auto it = d_.find(h);
    return it == d_.end() ? none : it->second;
}

std::vector<int> BimoduleComplex::degrees() const {
    std::vector<int> r;
    for (auto& [h, v] : terms_)
        if (!v.empty()) r.push_back(h);
    return r;
}

std::size_t BimoduleComplex::rank(int h) const {
    auto it = terms_.find(h);
    if (it == terms_.end()) return 0;
    std::size_t r = 0;
    for (auto& s : it->second) r += s.bim.rank();
    return r;
}

std::size_t BimoduleComplex::summand_count() const {
    std::size_t r = 0;
    for (auto& [h, v] : terms_) r += v.size();
    return r;
}

static std::vector<std::size_t> offsets(const std::vector<Summand>& v) {
    std::vector<std::size_t> off{0};
    for (auto& s : v) off.push_back(off.back() + s.bim.rank());
    return off;
}

Bimodule BimoduleComplex::flat(int h) const {
    Bimodule b;
    b.n = n_;
    b.under = GradedFreeModule{ring_for(n_), {}};
    auto it = terms_.find(h);
    if (it == terms_.end()) {
        for (int j = 0; j < n_; ++j) b.rho.push_back(PolyMatrix(b.under, b.under, {2}));
        return b;
    }
    const auto& v = it->second;
    for (auto& s : v) b.under = direct_sum(b.under, s.bim.under);
    auto off = offsets(v);
    for (int j = 0; j < n_; ++j) {
        PolyMatrix r(b.under, b.under, {2});
        for (std::size_t k = 0; k < v.size(); ++k) {
            const PolyMatrix& m = v[k].bim.rho[j];
            for (std::size_t a = 0; a < m.rows(); ++a)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (!m.at(a, c).is_zero()) r.at(off[k] + a, off[k] + c) = m.at(a, c);
        }
        b.rho.push_back(r);
    }
    return b;
}

PolyMatrix BimoduleComplex::flat_differential(int h) const {
    Bimodule s = flat(h), t = flat(h + 1);
    PolyMatrix r(s.under, t.under, {0});
    auto it = d_.find(h);
    if (it == d_.end()) return r;
    auto so = offsets(terms_.at(h)), to = offsets(terms_.at(h + 1));
    for (auto& [key, m] : it->second) {
        auto [ti, si] = key;
        for (std::size_t a = 0; a < m.rows(); ++a)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!m.at(a, c).is_zero()) r.at(to[ti] + a, so[si] + c) = m.at(a, c);
    }
    return r;
}

bool BimoduleComplex::check(std::string* why) const {
    auto fail = [&](const std::string& w) {
        if (why) *why = w;
        return false;
    };
    for (auto& [h, bl] : d_)
        for (auto& [key, m] : bl) {
            auto [t, s] = key;
            const Summand& src = terms_.at(h).at(s);
            const Summand& tgt = terms_.at(h + 1).at(t);
            std::ostringstream where;
            where << "block " << h << ":(" << t << "," << s << ")";
            if (m.degree() != MultiDegree{0}) return fail(where.str() + " has nonzero degree");
            if (!(m.source() == src.bim.under) || !(m.target() == tgt.bim.under)) return fail(where.str() + " has wrong modules");
            if (!m.homogeneous()) return fail(where.str() + " is not homogeneous");
            if (!is_bimodule_map(src.bim, tgt.bim, m)) return fail(where.str() + " is not a bimodule map");
        }
    for (auto& [h, v] : terms_) {
        auto next = terms_.find(h + 2);
        if (next == terms_.end()) continue;
        for (std::size_t u = 0; u < v.size(); ++u)
            for (std::size_t w = 0; w < next->second.size(); ++w) {
                PolyMatrix acc(v[u].bim.under, next->second[w].bim.under, {0});
                auto mid = terms_.find(h + 1);
                if (mid == terms_.end()) continue;
                for (std::size_t t = 0; t < mid->second.size(); ++t) {
                    auto a = blocks(h).find({static_cast<int>(t), static_cast<int>(u)});
                    auto b = blocks(h + 1).find({static_cast<int>(w), static_cast<int>(t)});
                    if (a == blocks(h).end() || b == blocks(h + 1).end()) continue;
                    acc = acc + b->second * a->second;
                }
                if (!acc.is_zero()) {
                    std::ostringstream os;
                    os << "d∘d is nonzero from " << h << ":" << u << " to " << h + 2 << ":" << w;
                    return fail(os.str());
                }
            }
    }
    return true;
}

BimoduleComplex BimoduleComplex::shifted(int k, int c) const {
    BimoduleComplex r(n_);
    r.a_off_ = a_off_;
    for (auto& [h, v] : terms_) {
        auto& dst = r.terms_[h + c];
        for (auto& s : v) dst.push_back(Summand{hhh::shifted(s.bim, k)});
    }
    for (auto& [h, bl] : d_)
        for (auto& [key, m] : bl) {
            const Bimodule& s = r.terms_.at(h + c).at(key.second).bim;
            const Bimodule& t = r.terms_.at(h + c + 1).at(key.first).bim;
            r.d_[h + c][key] = m.relabeled(s.under, t.under, m.degree());
        }
    return r;
}

BimoduleComplex unit_complex(int n) {
    BimoduleComplex c(n);
    c.terms()[0].push_back(Summand{regular_bimodule(n)});
    return c;
}

BimoduleComplex crossing_complex(int letter, int n) {
    int i = std::abs(letter);
    if (letter == 0 || i >= n) throw std::invalid_argument("crossing: index out of range");
    BimoduleComplex c(n);
    Bimodule b = bs_generator(i, n);
    if (letter > 0) {
        Bimodule r = shifted(regular_bimodule(n), -1);
        c.terms()[0].push_back(Summand{b});
        c.terms()[1].push_back(Summand{r});
        PolyMatrix d(b.under, r.under, {0});
        d.at(0, 0) = Poly(1L);
        d.at(0, 1) = Poly::var(i - 1);
        c.blocks(0)[{0, 0}] = d;
    } else {
        Bimodule r = shifted(regular_bimodule(n), 1);
        c.terms()[-1].push_back(Summand{r});
        c.terms()[0].push_back(Summand{b});
        PolyMatrix d(r.under, b.under, {0});
        d.at(0, 0) = Poly::var(i);
        d.at(1, 0) = Poly(-1L);
        c.blocks(-1)[{0, 0}] = d;
    }
    return c;
}

BimoduleComplex complex_tensor(const BimoduleComplex& a, const BimoduleComplex& b) {
    if (a.n() != b.n()) throw std::invalid_argument("complex tensor: strand counts differ");
    BimoduleComplex r(a.n());
    r.set_a_offset(a.a_offset() + b.a_offset());
    // index of summand (h1, s1, h2, s2) inside term h1 + h2
    std::map<std::tuple<int, int, int, int>, int> idx;
    for (auto& [h1, v1] : a.terms())
        for (auto& [h2, v2] : b.terms())
            for (std::size_t s1 = 0; s1 < v1.size(); ++s1)
                for (std::size_t s2 = 0; s2 < v2.size(); ++s2) {
                    auto& dst = r.terms()[h1 + h2];
                    idx[{h1, static_cast<int>(s1), h2, static_cast<int>(s2)}] = static_cast<int>(dst.size());
                    dst.push_back(Summand{tensor(v1[s1].bim, v2[s2].bim)});
                }
    auto put = [&](int h, int t, int s, const PolyMatrix& m) {
        auto& bl = r.blocks(h);
        auto it = bl.find({t, s});
        if (it == bl.end()) bl.emplace(std::make_pair(t, s), m);
        else it->second = it->second + m;
    };
    for (auto& [h1, v1] : a.terms()) {
        for (auto& [key, f] : a.blocks(h1)) {
            auto [t1, s1] = key;
            for (auto& [h2, v2] : b.terms())
                for (std::size_t s2 = 0; s2 < v2.size(); ++s2) {
                    int si = idx.at({h1, s1, h2, static_cast<int>(s2)});
                    int ti = idx.at({h1 + 1, t1, h2, static_cast<int>(s2)});
                    put(h1 + h2, ti, si, tensor_id(f, v2[s2].bim));
                }
        }
        for (auto& [h2, v2] : b.terms())
            for (auto& [key, g] : b.blocks(h2)) {
                auto [t2, s2] = key;
                for (std::size_t s1 = 0; s1 < v1.size(); ++s1) {
                    int si = idx.at({h1, static_cast<int>(s1), h2, s2});
                    int ti = idx.at({h1, static_cast<int>(s1), h2 + 1, t2});
                    PolyMatrix m = id_tensor(v1[s1].bim, g);
                    put(h1 + h2, ti, si, (h1 % 2) ? m.scaled(-1) : m);
                }
            }
    }
    return r;
}

// ---------------------------------------------------------------- simplify

namespace {

struct Work {
    int n = 0;
    int next_id = 0;
    std::map<int, Summand> node;
    std::map<int, int> level;
    std::map<int, std::vector<int>> order;  // h -> ids in order
    std::map<std::pair<int, int>, PolyMatrix> d;  // (source, target)
    std::map<int, std::set<int>> out, in;

    int add(int h, Summand s, int before = -1) {
        int id = next_id++;
        node.emplace(id, std::move(s));
        level[id] = h;
        auto& o = order[h];
        auto pos = std::find(o.begin(), o.end(), before);
        o.insert(pos, id);
        return id;
    }
    void set(int s, int t, PolyMatrix m) {
        if (m.is_zero()) {
            erase(s, t);
            return;
        }
        d.insert_or_assign({s, t}, std::move(m));
        out[s].insert(t);
        in[t].insert(s);
    }
    void erase(int s, int t) {
        d.erase({s, t});
        out[s].erase(t);
        in[t].erase(s);
    }
    void remove(int id) {
        for (int t : std::set<int>(out[id])) erase(id, t);
        for (int s : std::set<int>(in[id])) erase(s, id);
        out.erase(id);
        in.erase(id);
        auto& o = order[level[id]];
        o.erase(std::find(o.begin(), o.end(), id));
        node.erase(id);
        level.erase(id);
    }
};

Work to_work(const BimoduleComplex& c) {
    Work w;
    w.n = c.n();
    std::map<std::pair<int, int>, int> ids;
    for (auto& [h, v] : c.terms())
        for (std::size_t i = 0; i < v.size(); ++i) ids[{h, static_cast<int>(i)}] = w.add(h, v[i]);
    for (auto& [h, v] : c.terms())
        for (auto& [key, m] : c.blocks(h)) w.set(ids.at({h, key.second}), ids.at({h + 1, key.first}), m);
    return w;
}

BimoduleComplex from_work(const Work& w, int a_offset) {
    BimoduleComplex c(w.n);
    c.set_a_offset(a_offset);
    std::map<int, int> pos;
    for (auto& [h, ids] : w.order) {
        if (ids.empty()) continue;
        auto& dst = c.terms()[h];
        for (int id : ids) {
            pos[id] = static_cast<int>(dst.size());
            dst.push_back(w.node.at(id));
        }
    }
    for (auto& [key, m] : w.d) c.blocks(w.level.at(key.first))[{pos.at(key.second), pos.at(key.first)}] = m;
    return c;
}

int repeated_position(const std::vector<int>& word) {
    for (std::size_t p = 0; p + 1 < word.size(); ++p)
        if (word[p] == word[p + 1]) return static_cast<int>(p);
    return -1;
}

// Replaces a summand P⊗B_s⊗B_s⊗Q<k> by P⊗B_s⊗Q<k-1> ⊕ P⊗B_s⊗Q<k+1>.
void split_node(Work& w, int id, int p) {
    const Summand src = w.node.at(id);
    const std::vector<int>& word = src.bim.word;
    int s = word[p], k = src.bim.shift, h = w.level.at(id);
    std::vector<int> pw(word.begin(), word.begin() + p), qw(word.begin() + p + 2, word.end());
    std::vector<int> nw = pw;
    nw.push_back(s);
    nw.insert(nw.end(), qw.begin(), qw.end());
    Bimodule P = bs_word(pw, w.n), Qb = bs_word(qw, w.n);
    SquareSplitting sp = square_splitting(s, w.n);
    PolyMatrix split = tensor_id(id_tensor(P, sp.split), Qb);
    PolyMatrix merge = tensor_id(id_tensor(P, sp.merge), Qb);
    Bimodule part[2] = {shifted(bs_word(nw, w.n), k - 1), shifted(bs_word(nw, w.n), k + 1)};
    std::size_t rp = P.rank(), rq = Qb.rank();
    // row (jq*4 + c)*rp + ip of split belongs to copy c/2 at (jq*2 + c%2)*rp + ip
    PolyMatrix to[2], from[2];
    for (int c = 0; c < 2; ++c) {
        to[c] = PolyMatrix(src.bim.under, part[c].under, {0});
        from[c] = PolyMatrix(part[c].under, src.bim.under, {0});
    }
    std::size_t n_src = src.bim.rank();
    for (std::size_t jq = 0; jq < rq; ++jq)
        for (std::size_t c = 0; c < 4; ++c)
            for (std::size_t ip = 0; ip < rp; ++ip) {
                std::size_t big = (jq * 4 + c) * rp + ip, small = (jq * 2 + c % 2) * rp + ip;
                int copy = static_cast<int>(c / 2);
                for (std::size_t col = 0; col < n_src; ++col) {
                    to[copy].at(small, col) = split.at(big, col);
                    from[copy].at(col, small) = merge.at(col, big);
                }
            }
    int ids[2];
    for (int c = 0; c < 2; ++c) ids[c] = w.add(h, Summand{part[c]}, id);
    for (int u : std::set<int>(w.in[id]))
        for (int c = 0; c < 2; ++c) w.set(u, ids[c], to[c] * w.d.at({u, id}));
    for (int v : std::set<int>(w.out[id]))
        for (int c = 0; c < 2; ++c) w.set(ids[c], v, w.d.at({id, v}) * from[c]);
    w.remove(id);
}

// Nonzero scalar if m = λ·Id.
bool scalar_identity(const PolyMatrix& m, Q* lambda) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    const Poly& d0 = m.at(0, 0);
    if (!d0.is_constant() || d0.is_zero()) return false;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Poly& e = m.at(r, c);
            if (r == c ? e != d0 : !e.is_zero()) return false;
        }
    *lambda = d0.constant();
    return true;
}

bool cancel_one(Work& w) {
    for (auto& [key, m] : w.d) {
        auto [s, t] = key;
        if (!(w.node.at(s) == w.node.at(t))) continue;
        Q lambda;
        if (!scalar_identity(m, &lambda)) continue;
        Q inv = 1 / lambda;
        for (int u : std::set<int>(w.in[t])) {
            if (u == s) continue;
            const PolyMatrix dut = w.d.at({u, t}).scaled(inv);
            for (int v : std::set<int>(w.out[s])) {
                if (v == t) continue;
                PolyMatrix upd = w.d.at({s, v}) * dut;
                auto it = w.d.find({u, v});
                w.set(u, v, it == w.d.end() ? upd.scaled(-1) : it->second - upd);
            }
        }
        w.remove(s);
        w.remove(t);
        return true;
    }
    return false;
}

}  // namespace

SimplifyStats simplify(BimoduleComplex& c) {
    SimplifyStats st;
    Work w = to_work(c);
    bool again = true;
    while (again) {
        again = false;
        for (auto& [nid, s] : w.node) {
            int p = repeated_position(s.bim.word);
            if (p < 0) continue;
            int id = nid;
            split_node(w, id, p);
            ++st.split;
            again = true;
            break;
        }
    }
    while (cancel_one(w)) ++st.cancelled;
    c = from_work(w, c.a_offset());
    return st;
}

BimoduleComplex rouquier_complex(const BraidWord& b, bool simplify_each, const Normalization& norm) {
    BimoduleComplex c = unit_complex(b.n);
    for (int l : b.letters) {
        c = complex_tensor(c, crossing_complex(l, b.n));
        if (simplify_each) simplify(c);
    }
    int e = b.writhe();
    BimoduleComplex r = c.shifted(e * norm.dX, e * norm.dh);
    r.set_a_offset(c.a_offset() + e * norm.da);
    return r;
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const BimoduleComplex& c) {
    nlohmann::json j;
    j["n"] = c.n();
    j["a_offset"] = c.a_offset();
    j["terms"] = nlohmann::json::array();
    for (auto& [h, v] : c.terms()) {
        nlohmann::json t;
        t["h"] = h;
        t["summands"] = nlohmann::json::array();
        for (auto& s : v) t["summands"].push_back(to_json(s.bim));
        j["terms"].push_back(t);
    }
    j["blocks"] = nlohmann::json::array();
    for (auto& [h, v] : c.terms()) {
        (void)v;
        for (auto& [key, m] : c.blocks(h))
            j["blocks"].push_back({{"h", h}, {"target", key.first}, {"source", key.second}, {"map", to_json(m)}});
    }
    return j;
}

BimoduleComplex bimodule_complex_from_json(const nlohmann::json& j) {
    int n = j.at("n").get<int>();
    BimoduleComplex c(n);
    c.set_a_offset(j.value("a_offset", 0));
    for (auto& t : j.at("terms")) {
        auto& dst = c.terms()[t.at("h").get<int>()];
        for (auto& s : t.at("summands")) dst.push_back(Summand{bimodule_from_json(s)});
    }
    RingPtr ring = ring_for(n);
    for (auto& b : j.at("blocks"))
        c.blocks(b.at("h").get<int>())[{b.at("target").get<int>(), b.at("source").get<int>()}] =
            polymatrix_from_json(b.at("map"), ring);
    std::string why;
    if (!c.check(&why)) throw std::invalid_argument("complex json: " + why);
    return c;
}

}  // namespace hhh
