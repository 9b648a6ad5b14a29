#include "hhh/multigrade.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hhh {

GradingScheme::GradingScheme(std::vector<std::string> axes, const std::string& cohomological)
    : axes_(std::move(axes)) {
    std::set<std::string> seen(axes_.begin(), axes_.end());
    if (seen.size() != axes_.size()) throw std::invalid_argument("grading scheme: duplicate axis name");
    auto it = std::find(axes_.begin(), axes_.end(), cohomological);
    if (it == axes_.end()) throw std::invalid_argument("grading scheme: no cohomological axis " + cohomological);
    coh_ = static_cast<int>(it - axes_.begin());
}

int GradingScheme::index(const std::string& name) const {
    auto it = std::find(axes_.begin(), axes_.end(), name);
    if (it == axes_.end()) throw std::invalid_argument("grading scheme: unknown axis " + name);
    return static_cast<int>(it - axes_.begin());
}

bool GradingScheme::has(const std::string& name) const {
    return std::find(axes_.begin(), axes_.end(), name) != axes_.end();
}

MultiDegree GradingScheme::degree(std::initializer_list<std::pair<const char*, int>> parts) const {
    MultiDegree d = zero();
    for (auto& [name, v] : parts) d[index(name)] += v;
    return d;
}

// ---------------------------------------------------------------- Window

static long long dot(const std::vector<long long>& a, const MultiDegree& d) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * d[i];
    return s;
}

bool Window::contains(const MultiDegree& d) const {
    for (auto& h : cons_)
        if (dot(h.a, d) > h.b) return false;
    return true;
}

void Window::add(Halfspace h) {
    if (h.a.size() != dim_) throw std::invalid_argument("window: constraint dimension mismatch");
    long long g = 0;
    for (auto c : h.a) g = std::gcd(g, c < 0 ? -c : c);
    if (g == 0) {
        if (h.b >= 0) return;  // vacuous
    } else if (g > 1) {
        for (auto& c : h.a) c /= g;
        // floor division keeps the integer points unchanged
        h.b = h.b >= 0 ? h.b / g : -((-h.b + g - 1) / g);
    }
    auto it = std::lower_bound(cons_.begin(), cons_.end(), h);
    if (it != cons_.end() && *it == h) return;
    // a tighter bound with the same normal supersedes a looser one
    for (auto& c : cons_)
        if (c.a == h.a) {
            c.b = std::min(c.b, h.b);
            return;
        }
    cons_.insert(it, std::move(h));
}

void Window::upper(int axis, long long hi) {
    Halfspace h{std::vector<long long>(dim_, 0), hi};
    h.a[axis] = 1;
    add(std::move(h));
}

void Window::lower(int axis, long long lo) {
    Halfspace h{std::vector<long long>(dim_, 0), -lo};
    h.a[axis] = -1;
    add(std::move(h));
}

Window Window::intersect(const Window& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("window: dimension mismatch");
    Window w = *this;
    for (auto& h : o.cons_) w.add(h);
    return w;
}

bool Window::invariant_along(const MultiDegree& dir) const {
    for (auto& h : cons_)
        if (dot(h.a, dir) != 0) return false;
    return true;
}

// ---------------------------------------------------------------- DimTable

DimTable::DimTable(GradingScheme scheme) : scheme_(std::move(scheme)), window_(scheme_.size()) {}

void DimTable::add(const MultiDegree& d, long long dim) {
    if (d.size() != scheme_.size()) throw std::invalid_argument("dim table: degree has wrong arity");
    if (dim == 0) return;
    long long& v = entries_[d];
    v += dim;
    if (v < 0) throw std::invalid_argument("dim table: negative dimension");
    if (v == 0) entries_.erase(d);
}

long long DimTable::at(const MultiDegree& d) const {
    auto it = entries_.find(d);
    return it == entries_.end() ? 0 : it->second;
}

long long DimTable::total() const {
    long long s = 0;
    for (auto& [d, v] : entries_) s += v;
    return s;
}

void DimTable::restrict_to(const Window& w) {
    window_ = window_.intersect(w);
    for (auto it = entries_.begin(); it != entries_.end();)
        it = window_.contains(it->first) ? std::next(it) : entries_.erase(it);
}

bool DimTable::operator==(const DimTable& o) const {
    return scheme_ == o.scheme_ && entries_ == o.entries_ && window_ == o.window_;
}

bool equal_on_window(const DimTable& a, const DimTable& b) {
    if (a.scheme() != b.scheme()) throw std::invalid_argument("equal_on_window: scheme mismatch");
    Window w = a.window().intersect(b.window());
    for (auto& [d, v] : a.entries())
        if (w.contains(d) && b.at(d) != v) return false;
    for (auto& [d, v] : b.entries())
        if (w.contains(d) && a.at(d) != v) return false;
    return true;
}

// ---------------------------------------------------------------- shifts and shears

MultiDegree coh_shift(const GradingScheme& s, int k) {
    MultiDegree d = s.zero();
    d[s.cohomological()] = -k;
    return d;
}

MultiDegree grading_shift(const GradingScheme& s, const std::string& axis, int k) {
    int i = s.index(axis);
    if (i == s.cohomological()) throw std::invalid_argument("grading shift along the cohomological axis");
    MultiDegree d = s.zero();
    d[i] = k;
    return d;
}

DimTable shift(const DimTable& t, const MultiDegree& d) {
    if (d.size() != t.scheme().size()) throw std::invalid_argument("shift: axis mismatch");
    DimTable r(t.scheme());
    for (auto& [deg, v] : t.entries()) {
        MultiDegree e = deg;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += d[i];
        r.add(e, v);
    }
    for (auto h : t.window().constraints()) {
        h.b += dot(h.a, d);
        r.window().add(std::move(h));
    }
    return r;
}

DimTable shear(const DimTable& t, const std::string& axis, ShearDir dir) {
    const GradingScheme& s = t.scheme();
    int i = s.index(axis), c = s.cohomological();
    if (i == c) throw std::invalid_argument("shear along the cohomological axis");
    Regrading r{s, s, {}};
    r.matrix.assign(s.size(), std::vector<int>(s.size(), 0));
    for (std::size_t k = 0; k < s.size(); ++k) r.matrix[k][k] = 1;
    r.matrix[c][i] = dir == ShearDir::left ? -2 : 2;
    return regrade(t, r);
}

// ---------------------------------------------------------------- regrading

namespace {

using IMat = std::vector<std::vector<long long>>;

long long det(const IMat& m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    long long s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        IMat minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<long long> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        long long d = det(minor);
        s += (j % 2 ? -1 : 1) * m[0][j] * d;
    }
    return s;
}

// adj(m) with m * adj(m) = det(m) * I
IMat adjugate(const IMat& m) {
    std::size_t n = m.size();
    IMat adj(n, std::vector<long long>(n, 0));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IMat minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<long long> row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != j) row.push_back(m[r][c]);
                minor.push_back(std::move(row));
            }
            adj[j][i] = ((i + j) % 2 ? -1 : 1) * det(minor);
        }
    return adj;
}

IMat widen(const std::vector<std::vector<int>>& m) {
    IMat r;
    for (auto& row : m) r.emplace_back(row.begin(), row.end());
    return r;
}

}  // namespace

DimTable regrade(const DimTable& t, const Regrading& r) {
    if (t.scheme() != r.source) throw std::invalid_argument("regrade: substitution not defined on this scheme");
    if (r.matrix.size() != r.target.size()) throw std::invalid_argument("regrade: matrix has wrong row count");
    for (auto& row : r.matrix)
        if (row.size() != r.source.size()) throw std::invalid_argument("regrade: matrix has wrong column count");
    DimTable out(r.target);
    for (auto& [d, v] : t.entries()) {
        MultiDegree e(r.target.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = 0; j < d.size(); ++j) e[i] += r.matrix[i][j] * d[j];
        out.add(e, v);
    }
    if (t.window().unbounded()) return out;
    if (r.target.size() != r.source.size()) throw std::invalid_argument("regrade: truncated table needs an invertible map");
    IMat m = widen(r.matrix);
    long long dt = det(m);
    if (dt == 0) throw std::invalid_argument("regrade: truncated table needs an invertible map");
    IMat adj = adjugate(m);
    // source = adj * target / det, so a.source <= b  <=>  (a adj).target <= b det (sign-corrected)
    for (auto& h : t.window().constraints()) {
        Halfspace g{std::vector<long long>(m.size(), 0), h.b * dt};
        for (std::size_t j = 0; j < m.size(); ++j)
            for (std::size_t k = 0; k < m.size(); ++k) g.a[j] += h.a[k] * adj[k][j];
        if (dt < 0) {
            for (auto& c : g.a) c = -c;
            g.b = -g.b;
        }
        out.window().add(std::move(g));
    }
    return out;
}

Regrading inverse(const Regrading& r) {
    IMat m = widen(r.matrix);
    if (m.size() != r.source.size()) throw std::invalid_argument("inverse: map is not square");
    long long dt = det(m);
    if (dt != 1 && dt != -1) throw std::invalid_argument("inverse: map is not unimodular");
    IMat adj = adjugate(m);
    Regrading inv{r.target, r.source, {}};
    for (auto& row : adj) {
        std::vector<int> out;
        for (auto c : row) out.push_back(static_cast<int>(c * dt));
        inv.matrix.push_back(std::move(out));
    }
    return inv;
}

Regrading tilde_regrading() {
    GradingScheme src({"X", "Y", "C"}, "C"), dst({"Xt", "Yt", "C"}, "C");
    return Regrading{src, dst, {{0, 1, 0}, {-1, 2, 0}, {0, 0, 1}}};
}

// ---------------------------------------------------------------- axis surgery

DimTable degrade(const DimTable& t, const std::string& axis) {
    const GradingScheme& s = t.scheme();
    int i = s.index(axis);
    if (i == s.cohomological()) throw std::invalid_argument("degrade: cannot forget the cohomological axis");
    for (auto& h : t.window().constraints())
        if (h.a[i] != 0) throw std::invalid_argument("degrade: axis " + axis + " is truncated");
    std::vector<std::string> axes;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (static_cast<int>(k) != i) axes.push_back(s.axis(k));
    DimTable out(GradingScheme(axes, s.cohomological_name()));
    for (auto& [d, v] : t.entries()) {
        MultiDegree e = d;
        e.erase(e.begin() + i);
        out.add(e, v);
    }
    for (auto h : t.window().constraints()) {
        h.a.erase(h.a.begin() + i);
        out.window().add(std::move(h));
    }
    return out;
}

DimTable slice(const DimTable& t, const std::string& axis, int value) {
    int i = t.scheme().index(axis);
    DimTable out(t.scheme());
    out.window() = t.window();
    out.window().upper(i, value);
    out.window().lower(i, value);
    for (auto& [d, v] : t.entries())
        if (d[i] == value) out.add(d, v);
    return out;
}

DimTable drop_axis(const DimTable& t, const std::string& axis) {
    const GradingScheme& s = t.scheme();
    int i = s.index(axis);
    if (i == s.cohomological()) throw std::invalid_argument("drop_axis: cannot drop the cohomological axis");
    std::vector<std::string> axes;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (static_cast<int>(k) != i) axes.push_back(s.axis(k));
    DimTable out(GradingScheme(axes, s.cohomological_name()));
    for (auto& [d, v] : t.entries()) {
        if (d[i] != 0) throw std::invalid_argument("drop_axis: entry off the zero level of " + axis);
        MultiDegree e = d;
        e.erase(e.begin() + i);
        out.add(e, v);
    }
    for (auto h : t.window().constraints()) {
        h.a.erase(h.a.begin() + i);  // substitutes axis = 0
        out.window().add(std::move(h));
    }
    return out;
}

DimTable add_axis(const DimTable& t, const std::string& axis, int value) {
    auto axes = t.scheme().axes();
    axes.push_back(axis);
    DimTable out(GradingScheme(axes, t.scheme().cohomological_name()));
    for (auto& [d, v] : t.entries()) {
        MultiDegree e = d;
        e.push_back(value);
        out.add(e, v);
    }
    for (auto h : t.window().constraints()) {
        h.a.push_back(0);
        out.window().add(std::move(h));
    }
    out.window().upper(static_cast<int>(axes.size()) - 1, value);
    out.window().lower(static_cast<int>(axes.size()) - 1, value);
    return out;
}

// ---------------------------------------------------------------- periodization

MultiDegree beta_degree(const GradingScheme& s) {
    MultiDegree b = s.zero();
    b[s.cohomological()] = -2;
    if (s.has("Y")) {
        b[s.index("Y")] = 1;
    } else if (s.has("Xt") && s.has("Yt")) {
        b[s.index("Xt")] = 1;
        b[s.index("Yt")] = 2;
    } else {
        throw std::invalid_argument("periodize: scheme has neither Y nor (Xt,Yt)");
    }
    return b;
}

// floor(p/q) and ceil(p/q) for q != 0
static long long floordiv(long long p, long long q) {
    long long d = p / q;
    if ((p % q != 0) && ((p < 0) != (q < 0))) --d;
    return d;
}
static long long ceildiv(long long p, long long q) { return -floordiv(-p, q); }

static DimTable orbit_sum(const DimTable& t, const MultiDegree& step, int axis, int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("orbit sum: empty range");
    int s = step[axis];
    DimTable out(t.scheme());
    for (auto& [d, v] : t.entries()) {
        // k with lo <= d[axis] + k s <= hi
        long long a = lo - d[axis], b = hi - d[axis];
        long long kmin = s > 0 ? ceildiv(a, s) : ceildiv(b, s);
        long long kmax = s > 0 ? floordiv(b, s) : floordiv(a, s);
        for (long long k = kmin; k <= kmax; ++k) {
            MultiDegree e = d;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += static_cast<int>(k * step[i]);
            out.add(e, v);
        }
    }
    return out;
}

DimTable periodize(const DimTable& t, const std::string& axis, int lo, int hi) {
    MultiDegree b = beta_degree(t.scheme());
    int i = t.scheme().index(axis);
    if (b[i] == 0) throw std::invalid_argument("periodize: beta does not move axis " + axis);
    if (!t.window().invariant_along(b))
        throw std::invalid_argument("periodize: window too small to contain any full orbit slice");
    DimTable out = orbit_sum(t, b, i, lo, hi);
    out.window() = t.window();
    out.window().upper(i, hi);
    out.window().lower(i, lo);
    return out;
}

DimTable hom_shear_check(const DimTable& t, int ylo, int yhi) {
    DimTable base = t.scheme().has("Y") ? drop_axis(t, "Y") : t;
    DimTable in = add_axis(base, "Y", 0);
    const GradingScheme& s = in.scheme();
    int y = s.index("Y"), c = s.cohomological();
    MultiDegree u = s.zero();
    u[y] = 1;
    u[c] = 2;
    DimTable out = orbit_sum(in, u, y, ylo, yhi);
    // known at (.., Y=k, C) iff the input is known at (.., C-2k)
    for (auto h : base.window().constraints()) {
        Halfspace g{h.a, h.b};
        g.a.push_back(-2 * h.a[c]);
        out.window().add(std::move(g));
    }
    out.window().upper(y, yhi);
    out.window().lower(y, ylo);
    return out;
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const DimTable& t) {
    using nlohmann::json;
    const GradingScheme& s = t.scheme();
    json j;
    j["axes"] = s.axes();
    j["cohomological"] = s.cohomological_name();
    json entries = json::array();
    for (auto& [d, v] : t.entries()) {
        json deg = json::object();
        for (std::size_t i = 0; i < d.size(); ++i) deg[s.axis(i)] = d[i];
        entries.push_back({{"degree", deg}, {"dim", v}});
    }
    j["entries"] = entries;
    json win = json::array();
    for (auto& h : t.window().constraints()) {
        json a = json::object();
        for (std::size_t i = 0; i < h.a.size(); ++i)
            if (h.a[i] != 0) a[s.axis(i)] = h.a[i];
        win.push_back({{"coeffs", a}, {"bound", h.b}});
    }
    j["window"] = win;
    return j;
}

DimTable dimtable_from_json(const nlohmann::json& j) {
    GradingScheme s(j.at("axes").get<std::vector<std::string>>(), j.at("cohomological").get<std::string>());
    DimTable t(s);
    for (auto& e : j.at("entries")) {
        MultiDegree d = s.zero();
        for (auto& [k, v] : e.at("degree").items()) d[s.index(k)] = v.get<int>();
        t.add(d, e.at("dim").get<long long>());
    }
    for (auto& w : j.at("window")) {
        Halfspace h{std::vector<long long>(s.size(), 0), w.at("bound").get<long long>()};
        for (auto& [k, v] : w.at("coeffs").items()) h.a[s.index(k)] = v.get<long long>();
        t.window().add(std::move(h));
    }
    return t;
}

}  // namespace hhh
