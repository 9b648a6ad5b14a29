#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hhh/multigrade.hpp"
#include "json.hpp"

namespace hhh {

using Q = mpq_class;

constexpr int kMaxVars = 8;

// Exponent vector; ordering is lexicographic on (e[0], e[1], ...).
struct Mono {
    std::array<std::uint16_t, kMaxVars> e{};

    static Mono var(int i, int power = 1);
    int total() const;
    Mono operator*(const Mono& o) const;
    bool divides(const Mono& o) const;
    bool operator<(const Mono& o) const { return e < o.e; }
    bool operator==(const Mono& o) const { return e == o.e; }
    bool operator!=(const Mono& o) const { return e != o.e; }
};

class Poly {
public:
    Poly() = default;
    Poly(long c);  // NOLINT: constants convert implicitly
    Poly(const Q& c);
    static Poly var(int i);
    static Poly monomial(const Mono& m, const Q& c = 1);

    const std::map<Mono, Q>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Q constant() const;  // coefficient of the unit monomial
    std::size_t size() const { return t_.size(); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Q& c);
    Poly& add_term(const Mono& m, const Q& c);
    Poly operator+(const Poly& o) const { Poly r = *this; return r += o; }
    Poly operator-(const Poly& o) const { Poly r = *this; return r -= o; }
    Poly operator-() const { Poly r = *this; return r *= Q(-1); }
    Poly operator*(const Poly& o) const;
    Poly operator*(const Q& c) const { Poly r = *this; return r *= c; }
    Poly pow(int k) const;
    bool operator==(const Poly& o) const { return t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(t_ == o.t_); }

    // Variable i goes to variable perm[i].
    Poly permuted(const std::vector<int>& perm) const;
    Poly evaluated(const std::vector<Q>& point) const;  // -> constant poly
    Poly substituted(int var, const Poly& value) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    std::map<Mono, Q> t_;
};

// Commutative polynomial ring with a multidegree per variable; every variable has even
// cohomological degree (when a cohomological axis is present).
class PolyRing {
public:
    PolyRing(std::vector<std::string> vars, std::vector<std::string> axes, std::vector<MultiDegree> degrees);
    // Q[x_1..x_n], each x_i of X-degree 2.
    static std::shared_ptr<const PolyRing> standard(int n);

    int nvars() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<std::string>& axes() const { return axes_; }
    int axis(const std::string& name) const;
    const MultiDegree& var_degree(int i) const { return deg_[i]; }

    MultiDegree degree(const Mono& m) const;
    // Returns false for zero; otherwise true iff all terms have the same degree, written to out.
    bool homogeneous(const Poly& p, MultiDegree* out) const;
    // All monomials of the given degree, in lex order.
    std::vector<Mono> monomials(const MultiDegree& d) const;

    bool operator==(const PolyRing& o) const { return vars_ == o.vars_ && axes_ == o.axes_ && deg_ == o.deg_; }

private:
    std::vector<std::string> vars_, axes_;
    std::vector<MultiDegree> deg_;
    std::vector<long long> weight_;  // positive on every variable degree
    struct MonoCache;
    std::shared_ptr<MonoCache> cache_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

Poly elem_sym(int k, int n, const PolyRing& ring);
Poly elem_sym(int k, const std::vector<int>& vars);  // e_k of the listed variables

struct GradedFreeModule {
    RingPtr ring;
    std::vector<MultiDegree> gens;
    std::size_t rank() const { return gens.size(); }
    bool operator==(const GradedFreeModule& o) const { return *ring == *o.ring && gens == o.gens; }
};

GradedFreeModule direct_sum(const GradedFreeModule& a, const GradedFreeModule& b);

// Homogeneous map of free modules; column c is the image of source generator c.
// Entry (r, c) has degree deg(source_c) + degree - deg(target_r).
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(GradedFreeModule source, GradedFreeModule target, MultiDegree degree);
    static PolyMatrix identity(const GradedFreeModule& m);
    static PolyMatrix zero(const GradedFreeModule& s, const GradedFreeModule& t, MultiDegree degree);

    std::size_t rows() const { return target_.rank(); }
    std::size_t cols() const { return source_.rank(); }
    const GradedFreeModule& source() const { return source_; }
    const GradedFreeModule& target() const { return target_; }
    const MultiDegree& degree() const { return degree_; }

    const Poly& at(std::size_t r, std::size_t c) const { return e_[r * cols() + c]; }
    Poly& at(std::size_t r, std::size_t c) { return e_[r * cols() + c]; }
    MultiDegree entry_degree(std::size_t r, std::size_t c) const;

    bool is_zero() const;
    // Throws with the offending entry on failure.
    void validate() const;
    bool homogeneous() const;

    PolyMatrix operator*(const PolyMatrix& o) const;  // composition: this after o
    PolyMatrix operator+(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;
    PolyMatrix scaled(const Q& c) const;
    bool operator==(const PolyMatrix& o) const;
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

    // Reinterpret with new module data of equal ranks (no degree check).
    PolyMatrix relabeled(GradedFreeModule source, GradedFreeModule target, MultiDegree degree) const;

private:
    GradedFreeModule source_, target_;
    MultiDegree degree_;
    std::vector<Poly> e_;
};

// Sparse rational matrix, row-major.
class SparseMat {
public:
    using Row = std::vector<std::pair<int, Q>>;  // sorted by column

    SparseMat() = default;
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols), r_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Row& row(int i) const { return r_[i]; }
    Row& row(int i) { return r_[i]; }
    void add(int r, int c, const Q& v);  // accumulate; keeps rows sorted
    Q get(int r, int c) const;
    std::size_t nnz() const;

    SparseMat transposed() const;
    SparseMat operator*(const SparseMat& o) const;
    // [A B] and [A ; B]
    static SparseMat hstack(const SparseMat& a, const SparseMat& b);
    static SparseMat vstack(const SparseMat& a, const SparseMat& b);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Row> r_;
};

// Row echelon form built incrementally over Q; pivot rows are normalized to leading 1.
class Echelon {
public:
    explicit Echelon(int cols) : cols_(cols) {}
    // Reduces the vector against the pivots; inserts it if independent. Returns true if inserted.
    bool insert(SparseMat::Row v);
    SparseMat::Row reduce(SparseMat::Row v) const;
    int rank() const { return static_cast<int>(piv_.size()); }
    // Back-substituted rows, ordered by pivot column.
    std::vector<SparseMat::Row> reduced_rows() const;
    std::vector<int> pivot_columns() const;

private:
    int cols_;
    std::map<int, SparseMat::Row> piv_;
};

int rank(const SparseMat& m);
// Basis of {v : M v = 0} as columns of the returned matrix (cols() x k).
SparseMat kernel(const SparseMat& m);

// Runs fn(i) for i in [0, count) on up to jobs threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

// Bases of a degree slice: (generator, monomial) pairs, lex on (generator index, exponents).
struct SliceBasis {
    std::vector<std::pair<int, Mono>> elems;
    std::map<std::pair<int, Mono>, int> index;
    int size() const { return static_cast<int>(elems.size()); }
};

SliceBasis slice_basis(const GradedFreeModule& m, const MultiDegree& d);
// Matrix of f from the source slice at degree d to the target slice at d + deg(f).
SparseMat slice_matrix(const PolyMatrix& f, const SliceBasis& src, const SliceBasis& tgt);
// Matrix of multiplication by a homogeneous polynomial on a free module.
SparseMat slice_multiply(const Poly& p, const SliceBasis& src, const SliceBasis& tgt);

// Bounded cochain complex of free modules; d[k] : objects[k] -> objects[k+1].
class FreeComplex {
public:
    explicit FreeComplex(RingPtr ring) : ring_(std::move(ring)) {}

    const RingPtr& ring() const { return ring_; }
    void set_object(int k, GradedFreeModule m);
    void set_differential(int k, PolyMatrix d);

    const std::map<int, GradedFreeModule>& objects() const { return obj_; }
    GradedFreeModule object(int k) const;  // empty module if absent
    PolyMatrix differential(int k) const;  // zero map if absent
    bool has_differential(int k) const { return d_.count(k) > 0; }

    // d∘d = 0 symbolically and every differential is homogeneous of degree 0.
    bool check() const;

private:
    RingPtr ring_;
    std::map<int, GradedFreeModule> obj_;
    std::map<int, PolyMatrix> d_;
};

struct ComplexSlice {
    std::map<int, SliceBasis> bases;
    std::map<int, SparseMat> maps;  // k -> k+1
};

ComplexSlice degree_slice(const FreeComplex& c, const MultiDegree& d);

// Cohomology dims for every internal degree in the box [lo_i, hi_i] per ring axis; output
// scheme = ring axes + "C" (C = chain degree).
DimTable homology_dims(const FreeComplex& c, const std::vector<std::pair<int, int>>& box, int jobs = 1);

nlohmann::json to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j, int nvars);
nlohmann::json to_json(const PolyMatrix& m);
PolyMatrix polymatrix_from_json(const nlohmann::json& j, const RingPtr& ring);
nlohmann::json to_json(const FreeComplex& c);
FreeComplex freecomplex_from_json(const nlohmann::json& j, const RingPtr& ring);

}  // namespace hhh
