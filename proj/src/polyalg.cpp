#include "hhh/polyalg.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace hhh {

// ---------------------------------------------------------------- Mono

Mono Mono::var(int i, int power) {
    if (i < 0 || i >= kMaxVars) throw std::out_of_range("monomial: variable index out of range");
    Mono m;
    m.e[i] = static_cast<std::uint16_t>(power);
    return m;
}

int Mono::total() const {
    int s = 0;
    for (auto x : e) s += x;
    return s;
}

Mono Mono::operator*(const Mono& o) const {
    Mono m;
    for (int i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
    return m;
}

bool Mono::divides(const Mono& o) const {
    for (int i = 0; i < kMaxVars; ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(long c) {
    if (c != 0) t_.emplace(Mono{}, Q(c));
}

Poly::Poly(const Q& c) {
    if (c != 0) t_.emplace(Mono{}, c);
}

Poly Poly::var(int i) { return monomial(Mono::var(i)); }

Poly Poly::monomial(const Mono& m, const Q& c) {
    Poly p;
    if (c != 0) p.t_.emplace(m, c);
    return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Mono{}); }

Q Poly::constant() const {
    auto it = t_.find(Mono{});
    return it == t_.end() ? Q(0) : it->second;
}

Poly& Poly::add_term(const Mono& m, const Q& c) {
    if (c == 0) return *this;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
    return *this;
}

Poly& Poly::operator+=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Q& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (auto& [m1, c1] : t_)
        for (auto& [m2, c2] : o.t_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

Poly Poly::pow(int k) const {
    Poly r(1L), b = *this;
    for (; k > 0; k >>= 1) {
        if (k & 1) r = r * b;
        if (k > 1) b = b * b;
    }
    return r;
}

Poly Poly::permuted(const std::vector<int>& perm) const {
    Poly r;
    for (auto& [m, c] : t_) {
        Mono n;
        for (std::size_t i = 0; i < perm.size(); ++i) n.e[perm[i]] = m.e[i];
        for (std::size_t i = perm.size(); i < kMaxVars; ++i) n.e[i] = m.e[i];
        r.add_term(n, c);
    }
    return r;
}

Poly Poly::evaluated(const std::vector<Q>& point) const {
    Q s = 0;
    for (auto& [m, c] : t_) {
        Q v = c;
        for (std::size_t i = 0; i < point.size(); ++i)
            for (int k = 0; k < m.e[i]; ++k) v *= point[i];
        s += v;
    }
    return Poly(s);
}

Poly Poly::substituted(int var, const Poly& value) const {
    Poly r;
    for (auto& [m, c] : t_) {
        Mono rest = m;
        int k = rest.e[var];
        rest.e[var] = 0;
        r += Poly::monomial(rest, c) * value.pow(k);
    }
    return r;
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        Q a = abs(c);
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        bool unit = m == Mono{};
        if (a != 1 || unit) os << a.get_str();
        bool need_star = a != 1 && !unit;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (!m.e[i]) continue;
            if (need_star) os << "*";
            os << (i < names.size() ? names[i] : "v" + std::to_string(i));
            if (m.e[i] > 1) os << "^" << m.e[i];
            need_star = true;
        }
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- PolyRing

struct PolyRing::MonoCache {
    std::mutex mu;
    std::map<MultiDegree, std::vector<Mono>> data;
};

PolyRing::PolyRing(std::vector<std::string> vars, std::vector<std::string> axes, std::vector<MultiDegree> degrees)
    : vars_(std::move(vars)), axes_(std::move(axes)), deg_(std::move(degrees)), cache_(std::make_shared<MonoCache>()) {
    if (vars_.size() > static_cast<std::size_t>(kMaxVars)) throw std::invalid_argument("poly ring: too many variables");
    if (deg_.size() != vars_.size()) throw std::invalid_argument("poly ring: one degree per variable required");
    for (auto& d : deg_)
        if (d.size() != axes_.size()) throw std::invalid_argument("poly ring: degree arity mismatch");
    for (std::size_t a = 0; a < axes_.size(); ++a)
        if (axes_[a] == "C")
            for (auto& d : deg_)
                if (d[a] % 2 != 0) throw std::invalid_argument("poly ring: odd cohomological degree on a commuting variable");
    // a linear functional positive on every variable makes each degree slice finite
    std::size_t k = axes_.size();
    std::vector<long long> w(k, -3);
    for (;;) {
        bool ok = true;
        for (auto& d : deg_) {
            long long s = 0;
            for (std::size_t a = 0; a < k; ++a) s += w[a] * d[a];
            if (s <= 0) { ok = false; break; }
        }
        if (ok) { weight_ = w; break; }
        std::size_t i = 0;
        while (i < k && w[i] == 3) w[i++] = -3;
        if (i == k) throw std::invalid_argument("poly ring: degree slices are not finite");
        ++w[i];
    }
}

std::shared_ptr<const PolyRing> PolyRing::standard(int n) {
    std::vector<std::string> v;
    std::vector<MultiDegree> d;
    for (int i = 1; i <= n; ++i) {
        v.push_back("x" + std::to_string(i));
        d.push_back({2});
    }
    return std::make_shared<const PolyRing>(v, std::vector<std::string>{"X"}, d);
}

int PolyRing::axis(const std::string& name) const {
    auto it = std::find(axes_.begin(), axes_.end(), name);
    if (it == axes_.end()) throw std::invalid_argument("poly ring: unknown axis " + name);
    return static_cast<int>(it - axes_.begin());
}

MultiDegree PolyRing::degree(const Mono& m) const {
    MultiDegree d(axes_.size(), 0);
    for (int i = 0; i < nvars(); ++i)
        for (std::size_t a = 0; a < axes_.size(); ++a) d[a] += m.e[i] * deg_[i][a];
    return d;
}

bool PolyRing::homogeneous(const Poly& p, MultiDegree* out) const {
    if (p.is_zero()) return false;
    MultiDegree d = degree(p.terms().begin()->first);
    for (auto& [m, c] : p.terms())
        if (degree(m) != d) return false;
    if (out) *out = d;
    return true;
}

std::vector<Mono> PolyRing::monomials(const MultiDegree& d) const {
    MonoCache& cache = *cache_;
    {
        std::lock_guard<std::mutex> g(cache.mu);
        auto it = cache.data.find(d);
        if (it != cache.data.end()) return it->second;
    }
    long long budget = 0;
    for (std::size_t a = 0; a < axes_.size(); ++a) budget += weight_[a] * d[a];
    std::vector<long long> wv(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (std::size_t a = 0; a < axes_.size(); ++a) wv[i] += weight_[a] * deg_[i][a];
    std::vector<Mono> out;
    if (budget >= 0) {
        Mono cur;
        std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
            if (i == vars_.size()) {
                if (left == 0 && degree(cur) == d) out.push_back(cur);
                return;
            }
            for (long long k = 0; k * wv[i] <= left; ++k) {
                cur.e[i] = static_cast<std::uint16_t>(k);
                rec(i + 1, left - k * wv[i]);
            }
            cur.e[i] = 0;
        };
        rec(0, budget);
    }
    std::lock_guard<std::mutex> g(cache.mu);
    cache.data.emplace(d, out);
    return out;
}

Poly elem_sym(int k, const std::vector<int>& vars) {
    int n = static_cast<int>(vars.size());
    if (k < 0 || k > n) throw std::out_of_range("elem_sym: k out of range");
    Poly r;
    std::vector<int> pick(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            Mono m;
            for (int v : pick) m.e[v] += 1;
            r.add_term(m, 1);
            return;
        }
        for (int i = start; i < n; ++i) {
            pick[depth] = vars[i];
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return r;
}

Poly elem_sym(int k, int n, const PolyRing& ring) {
    if (n > ring.nvars()) throw std::out_of_range("elem_sym: more variables than the ring has");
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return elem_sym(k, v);
}

GradedFreeModule direct_sum(const GradedFreeModule& a, const GradedFreeModule& b) {
    GradedFreeModule s{a.ring, a.gens};
    s.gens.insert(s.gens.end(), b.gens.begin(), b.gens.end());
    return s;
}

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(GradedFreeModule source, GradedFreeModule target, MultiDegree degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(std::move(degree)),
      e_(source_.rank() * target_.rank()) {}

PolyMatrix PolyMatrix::identity(const GradedFreeModule& m) {
    PolyMatrix r(m, m, MultiDegree(m.ring->axes().size(), 0));
    for (std::size_t i = 0; i < m.rank(); ++i) r.at(i, i) = Poly(1L);
    return r;
}

PolyMatrix PolyMatrix::zero(const GradedFreeModule& s, const GradedFreeModule& t, MultiDegree degree) {
    return PolyMatrix(s, t, std::move(degree));
}

MultiDegree PolyMatrix::entry_degree(std::size_t r, std::size_t c) const {
    MultiDegree d = source_.gens[c];
    for (std::size_t a = 0; a < d.size(); ++a) d[a] += degree_[a] - target_.gens[r][a];
    return d;
}

bool PolyMatrix::is_zero() const {
    for (auto& p : e_)
        if (!p.is_zero()) return false;
    return true;
}

void PolyMatrix::validate() const {
    const PolyRing& R = *source_.ring;
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = 0; c < cols(); ++c) {
            const Poly& p = at(r, c);
            if (p.is_zero()) continue;
            MultiDegree want = entry_degree(r, c), got;
            if (!R.homogeneous(p, &got) || got != want) {
                std::ostringstream os;
                os << "poly matrix: entry (" << r << "," << c << ") = " << p.str(R.vars()) << " is not homogeneous of the required degree";
                throw std::invalid_argument(os.str());
            }
        }
}

bool PolyMatrix::homogeneous() const {
    try {
        validate();
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    if (o.rows() != cols()) throw std::invalid_argument("poly matrix: composition of incompatible maps");
    MultiDegree d = degree_;
    for (std::size_t a = 0; a < d.size(); ++a) d[a] += o.degree_[a];
    PolyMatrix r(o.source_, target_, d);
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t k = 0; k < cols(); ++k) {
            const Poly& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols(); ++j) {
                const Poly& b = o.at(k, j);
                if (!b.is_zero()) r.at(i, j) += a * b;
            }
        }
    return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    if (o.rows() != rows() || o.cols() != cols()) throw std::invalid_argument("poly matrix: shape mismatch");
    PolyMatrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const { return *this + o.scaled(-1); }

PolyMatrix PolyMatrix::scaled(const Q& c) const {
    PolyMatrix r = *this;
    for (auto& p : r.e_) p *= c;
    return r;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
    return rows() == o.rows() && cols() == o.cols() && e_ == o.e_;
}

PolyMatrix PolyMatrix::relabeled(GradedFreeModule source, GradedFreeModule target, MultiDegree degree) const {
    if (source.rank() != cols() || target.rank() != rows()) throw std::invalid_argument("poly matrix: relabel rank mismatch");
    PolyMatrix r = *this;
    r.source_ = std::move(source);
    r.target_ = std::move(target);
    r.degree_ = std::move(degree);
    return r;
}

// ---------------------------------------------------------------- SparseMat

static void merge_axpy(SparseMat::Row& v, const Q& c, const SparseMat::Row& p) {
    // v <- v + c p
    SparseMat::Row out;
    out.reserve(v.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < p.size()) {
        if (j == p.size() || (i < v.size() && v[i].first < p[j].first)) {
            out.push_back(std::move(v[i++]));
        } else if (i == v.size() || p[j].first < v[i].first) {
            out.emplace_back(p[j].first, c * p[j].second);
            ++j;
        } else {
            Q s = v[i].second + c * p[j].second;
            if (s != 0) out.emplace_back(v[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    v = std::move(out);
}

void SparseMat::add(int r, int c, const Q& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("sparse matrix: index out of range");
    if (v == 0) return;
    Row& row = r_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
        it->second += v;
        if (it->second == 0) row.erase(it);
    } else {
        row.insert(it, {c, v});
    }
}

Q SparseMat::get(int r, int c) const {
    const Row& row = r_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int col) { return e.first < col; });
    return it != row.end() && it->first == c ? it->second : Q(0);
}

std::size_t SparseMat::nnz() const {
    std::size_t s = 0;
    for (auto& r : r_) s += r.size();
    return s;
}

SparseMat SparseMat::transposed() const {
    SparseMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (auto& [c, v] : r_[i]) t.r_[c].emplace_back(i, v);
    return t;
}

SparseMat SparseMat::operator*(const SparseMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("sparse matrix: product shape mismatch");
    SparseMat p(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        Row acc;
        for (auto& [k, v] : r_[i]) merge_axpy(acc, v, o.r_[k]);
        p.r_[i] = std::move(acc);
    }
    return p;
}

SparseMat SparseMat::hstack(const SparseMat& a, const SparseMat& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("sparse matrix: hstack row mismatch");
    SparseMat s(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        s.r_[i] = a.r_[i];
        for (auto& [c, v] : b.r_[i]) s.r_[i].emplace_back(c + a.cols_, v);
    }
    return s;
}

SparseMat SparseMat::vstack(const SparseMat& a, const SparseMat& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("sparse matrix: vstack column mismatch");
    SparseMat s(a.rows_ + b.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i) s.r_[i] = a.r_[i];
    for (int i = 0; i < b.rows_; ++i) s.r_[a.rows_ + i] = b.r_[i];
    return s;
}

// ---------------------------------------------------------------- Echelon

SparseMat::Row Echelon::reduce(SparseMat::Row v) const {
    std::size_t pos = 0;
    while (pos < v.size()) {
        auto it = piv_.find(v[pos].first);
        if (it == piv_.end()) {
            ++pos;
            continue;
        }
        Q c = -v[pos].second;
        merge_axpy(v, c, it->second);
    }
    return v;
}

bool Echelon::insert(SparseMat::Row v) {
    // leading-entry reduction is enough to decide independence
    while (!v.empty()) {
        auto it = piv_.find(v.front().first);
        if (it == piv_.end()) break;
        Q c = -v.front().second;
        merge_axpy(v, c, it->second);
    }
    if (v.empty()) return false;
    Q lead = v.front().second;
    if (lead != 1)
        for (auto& [c, x] : v) x /= lead;
    int col = v.front().first;
    piv_.emplace(col, std::move(v));
    return true;
}

std::vector<SparseMat::Row> Echelon::reduced_rows() const {
    std::vector<int> cols;
    std::vector<SparseMat::Row> rows;
    for (auto& [c, r] : piv_) {
        cols.push_back(c);
        rows.push_back(r);
    }
    for (std::size_t i = rows.size(); i-- > 0;) {
        for (std::size_t j = 0; j < i; ++j) {
            Q c = 0;
            for (auto& [col, v] : rows[j])
                if (col == cols[i]) { c = v; break; }
            if (c != 0) merge_axpy(rows[j], -c, rows[i]);
        }
    }
    return rows;
}

std::vector<int> Echelon::pivot_columns() const {
    std::vector<int> c;
    for (auto& [k, r] : piv_) c.push_back(k);
    return c;
}

int rank(const SparseMat& m) {
    std::vector<int> order(m.rows());
    for (int i = 0; i < m.rows(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return m.row(a).size() < m.row(b).size(); });
    Echelon e(m.cols());
    for (int i : order)
        if (!m.row(i).empty()) e.insert(m.row(i));
    return e.rank();
}

SparseMat kernel(const SparseMat& m) {
    Echelon e(m.cols());
    for (int i = 0; i < m.rows(); ++i)
        if (!m.row(i).empty()) e.insert(m.row(i));
    auto rows = e.reduced_rows();
    auto piv = e.pivot_columns();
    std::vector<bool> is_piv(m.cols(), false);
    for (int c : piv) is_piv[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    SparseMat k(m.cols(), static_cast<int>(free_cols.size()));
    std::map<int, int> free_index;
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        free_index[free_cols[j]] = static_cast<int>(j);
        k.add(free_cols[j], static_cast<int>(j), 1);
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (auto& [c, v] : rows[i])
            if (c != piv[i]) k.add(piv[i], free_index.at(c), -v);
    return k;
}

// ---------------------------------------------------------------- parallel

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    int n = static_cast<int>(std::min<std::size_t>(count, static_cast<std::size_t>(jobs)));
    for (int t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next++;
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(err_mu);
                    if (!err) err = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------------- slices

SliceBasis slice_basis(const GradedFreeModule& m, const MultiDegree& d) {
    SliceBasis b;
    for (std::size_t g = 0; g < m.rank(); ++g) {
        MultiDegree rest = d;
        for (std::size_t a = 0; a < rest.size(); ++a) rest[a] -= m.gens[g][a];
        for (auto& mono : m.ring->monomials(rest)) {
            b.index.emplace(std::make_pair(static_cast<int>(g), mono), b.size());
            b.elems.emplace_back(static_cast<int>(g), mono);
        }
    }
    return b;
}

static SparseMat from_columns(int rows, std::vector<std::vector<std::pair<int, Q>>>& cols) {
    std::vector<std::tuple<int, int, Q>> trip;
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (auto& [r, v] : cols[c]) trip.emplace_back(r, static_cast<int>(c), std::move(v));
    std::sort(trip.begin(), trip.end(), [](const auto& a, const auto& b) {
        return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b) : std::get<1>(a) < std::get<1>(b);
    });
    SparseMat m(rows, static_cast<int>(cols.size()));
    for (auto& [r, c, v] : trip) {
        auto& row = m.row(r);
        if (!row.empty() && row.back().first == c) {
            row.back().second += v;
            if (row.back().second == 0) row.pop_back();
        } else if (v != 0) {
            row.emplace_back(c, std::move(v));
        }
    }
    return m;
}

SparseMat slice_matrix(const PolyMatrix& f, const SliceBasis& src, const SliceBasis& tgt) {
    std::vector<std::vector<std::pair<int, Q>>> cols(src.size());
    for (int j = 0; j < src.size(); ++j) {
        auto& [g, mono] = src.elems[j];
        for (std::size_t r = 0; r < f.rows(); ++r) {
            const Poly& p = f.at(r, g);
            for (auto& [m, c] : p.terms()) {
                auto it = tgt.index.find({static_cast<int>(r), m * mono});
                if (it == tgt.index.end()) throw std::logic_error("slice_matrix: image outside the target slice");
                cols[j].emplace_back(it->second, c);
            }
        }
    }
    return from_columns(tgt.size(), cols);
}

SparseMat slice_multiply(const Poly& p, const SliceBasis& src, const SliceBasis& tgt) {
    std::vector<std::vector<std::pair<int, Q>>> cols(src.size());
    for (int j = 0; j < src.size(); ++j) {
        auto& [g, mono] = src.elems[j];
        for (auto& [m, c] : p.terms()) {
            auto it = tgt.index.find({g, m * mono});
            if (it == tgt.index.end()) throw std::logic_error("slice_multiply: image outside the target slice");
            cols[j].emplace_back(it->second, c);
        }
    }
    return from_columns(tgt.size(), cols);
}

// ---------------------------------------------------------------- FreeComplex

void FreeComplex::set_object(int k, GradedFreeModule m) { obj_[k] = std::move(m); }

void FreeComplex::set_differential(int k, PolyMatrix d) {
    if (!(d.source() == object(k)) || !(d.target() == object(k + 1)))
        throw std::invalid_argument("free complex: differential does not match its chain objects");
    d.validate();
    d_[k] = std::move(d);
}

GradedFreeModule FreeComplex::object(int k) const {
    auto it = obj_.find(k);
    return it == obj_.end() ? GradedFreeModule{ring_, {}} : it->second;
}

PolyMatrix FreeComplex::differential(int k) const {
    auto it = d_.find(k);
    if (it != d_.end()) return it->second;
    return PolyMatrix::zero(object(k), object(k + 1), MultiDegree(ring_->axes().size(), 0));
}

bool FreeComplex::check() const {
    for (auto& [k, d] : d_) {
        if (!d.homogeneous()) return false;
        for (auto x : d.degree())
            if (x != 0) return false;
        auto it = d_.find(k + 1);
        if (it != d_.end() && !(it->second * d).is_zero()) return false;
    }
    return true;
}

ComplexSlice degree_slice(const FreeComplex& c, const MultiDegree& d) {
    ComplexSlice s;
    for (auto& [k, m] : c.objects()) s.bases.emplace(k, slice_basis(m, d));
    for (auto& [k, m] : c.objects()) {
        if (!c.has_differential(k) || !s.bases.count(k + 1)) continue;
        s.maps.emplace(k, slice_matrix(c.differential(k), s.bases.at(k), s.bases.at(k + 1)));
    }
    return s;
}

DimTable homology_dims(const FreeComplex& c, const std::vector<std::pair<int, int>>& box, int jobs) {
    const PolyRing& R = *c.ring();
    if (box.size() != R.axes().size()) throw std::invalid_argument("homology_dims: window arity mismatch");
    for (auto& a : R.axes())
        if (a == "C") throw std::invalid_argument("homology_dims: ring already has a cohomological axis");
    std::vector<MultiDegree> degrees{{}};
    for (auto& [lo, hi] : box) {
        std::vector<MultiDegree> next;
        for (auto& d : degrees)
            for (int v = lo; v <= hi; ++v) {
                MultiDegree e = d;
                e.push_back(v);
                next.push_back(std::move(e));
            }
        degrees = std::move(next);
    }
    std::vector<std::map<int, long long>> results(degrees.size());
    parallel_for(degrees.size(), jobs, [&](std::size_t i) {
        ComplexSlice s = degree_slice(c, degrees[i]);
        std::map<int, int> rk;
        for (auto& [k, m] : s.maps) rk[k] = rank(m);
        for (auto& [k, b] : s.bases) {
            long long h = b.size();
            if (rk.count(k)) h -= rk[k];
            if (rk.count(k - 1)) h -= rk[k - 1];
            if (h) results[i][k] = h;
        }
    });
    auto axes = R.axes();
    axes.push_back("C");
    DimTable t(GradingScheme(axes, "C"));
    for (std::size_t i = 0; i < degrees.size(); ++i)
        for (auto& [k, h] : results[i]) {
            MultiDegree e = degrees[i];
            e.push_back(k);
            t.add(e, h);
        }
    for (std::size_t a = 0; a < box.size(); ++a) {
        t.window().lower(static_cast<int>(a), box[a].first);
        t.window().upper(static_cast<int>(a), box[a].second);
    }
    return t;
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const Poly& p) {
    nlohmann::json j = nlohmann::json::object();
    for (auto& [m, c] : p.terms()) {
        std::string key;
        int last = kMaxVars - 1;
        while (last > 0 && m.e[last] == 0) --last;
        for (int i = 0; i <= last; ++i) key += (i ? "," : "") + std::to_string(m.e[i]);
        j[key] = c.get_str();
    }
    return j;
}

Poly poly_from_json(const nlohmann::json& j, int nvars) {
    Poly p;
    for (auto& [key, val] : j.items()) {
        Mono m;
        std::istringstream is(key);
        std::string tok;
        int i = 0;
        while (std::getline(is, tok, ',')) {
            if (i >= kMaxVars || (i >= nvars && std::stoi(tok) != 0)) throw std::invalid_argument("poly json: too many exponents");
            m.e[i++] = static_cast<std::uint16_t>(std::stoi(tok));
        }
        p.add_term(m, Q(val.get<std::string>()));
    }
    return p;
}

static nlohmann::json module_json(const GradedFreeModule& m) { return m.gens; }

nlohmann::json to_json(const PolyMatrix& m) {
    nlohmann::json j;
    j["source"] = module_json(m.source());
    j["target"] = module_json(m.target());
    j["degree"] = m.degree();
    nlohmann::json e = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) e.push_back({{"row", r}, {"col", c}, {"poly", to_json(m.at(r, c))}});
    j["entries"] = e;
    return j;
}

PolyMatrix polymatrix_from_json(const nlohmann::json& j, const RingPtr& ring) {
    GradedFreeModule s{ring, j.at("source").get<std::vector<MultiDegree>>()};
    GradedFreeModule t{ring, j.at("target").get<std::vector<MultiDegree>>()};
    PolyMatrix m(s, t, j.at("degree").get<MultiDegree>());
    for (auto& e : j.at("entries"))
        m.at(e.at("row").get<std::size_t>(), e.at("col").get<std::size_t>()) = poly_from_json(e.at("poly"), ring->nvars());
    m.validate();
    return m;
}

nlohmann::json to_json(const FreeComplex& c) {
    nlohmann::json j;
    j["ring"] = {{"vars", c.ring()->vars()}, {"axes", c.ring()->axes()}};
    nlohmann::json obj = nlohmann::json::array();
    for (auto& [k, m] : c.objects()) obj.push_back({{"degree", k}, {"generators", module_json(m)}});
    j["objects"] = obj;
    nlohmann::json d = nlohmann::json::array();
    for (auto& [k, m] : c.objects())
        if (c.has_differential(k)) d.push_back({{"from", k}, {"map", to_json(c.differential(k))}});
    j["differentials"] = d;
    return j;
}

FreeComplex freecomplex_from_json(const nlohmann::json& j, const RingPtr& ring) {
    if (j.at("ring").at("vars").get<std::vector<std::string>>() != ring->vars())
        throw std::invalid_argument("free complex json: ring mismatch");
    FreeComplex c(ring);
    for (auto& o : j.at("objects"))
        c.set_object(o.at("degree").get<int>(), GradedFreeModule{ring, o.at("generators").get<std::vector<MultiDegree>>()});
    for (auto& d : j.at("differentials")) c.set_differential(d.at("from").get<int>(), polymatrix_from_json(d.at("map"), ring));
    return c;
}

}  // namespace hhh
