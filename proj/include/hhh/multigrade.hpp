#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hhh {

using MultiDegree = std::vector<int>;

// Ordered axis names; exactly one axis is cohomological.
class GradingScheme {
public:
    GradingScheme() = default;
    GradingScheme(std::vector<std::string> axes, const std::string& cohomological);

    std::size_t size() const { return axes_.size(); }
    const std::vector<std::string>& axes() const { return axes_; }
    const std::string& axis(std::size_t i) const { return axes_[i]; }
    int index(const std::string& name) const;  // throws on unknown axis
    bool has(const std::string& name) const;
    int cohomological() const { return coh_; }
    const std::string& cohomological_name() const { return axes_[coh_]; }

    MultiDegree zero() const { return MultiDegree(axes_.size(), 0); }
    MultiDegree degree(std::initializer_list<std::pair<const char*, int>> parts) const;

    bool operator==(const GradingScheme& o) const { return axes_ == o.axes_ && coh_ == o.coh_; }
    bool operator!=(const GradingScheme& o) const { return !(*this == o); }

private:
    std::vector<std::string> axes_;
    int coh_ = -1;
};

// Known region of a table: the set of degrees d with a.d <= b for every constraint.
struct Halfspace {
    std::vector<long long> a;
    long long b = 0;
    bool operator==(const Halfspace& o) const { return a == o.a && b == o.b; }
    bool operator<(const Halfspace& o) const { return a != o.a ? a < o.a : b < o.b; }
};

class Window {
public:
    Window() = default;
    explicit Window(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    const std::vector<Halfspace>& constraints() const { return cons_; }
    bool unbounded() const { return cons_.empty(); }
    bool contains(const MultiDegree& d) const;

    void add(Halfspace h);
    void upper(int axis, long long hi);
    void lower(int axis, long long lo);
    Window intersect(const Window& o) const;
    // Every constraint has zero coefficient along dir.
    bool invariant_along(const MultiDegree& dir) const;

    bool operator==(const Window& o) const { return dim_ == o.dim_ && cons_ == o.cons_; }

private:
    friend class DimTable;
    std::size_t dim_ = 0;
    std::vector<Halfspace> cons_;  // kept sorted and deduplicated
};

// Nonnegative integer dims on a lattice. Absent inside the window means 0; outside it means unknown.
class DimTable {
public:
    DimTable() = default;
    explicit DimTable(GradingScheme scheme);

    const GradingScheme& scheme() const { return scheme_; }
    const std::map<MultiDegree, long long>& entries() const { return entries_; }
    const Window& window() const { return window_; }
    Window& window() { return window_; }

    void add(const MultiDegree& d, long long dim);
    long long at(const MultiDegree& d) const;
    bool empty() const { return entries_.empty(); }
    long long total() const;

    void set_upper(const std::string& axis, long long hi) { window_.upper(scheme_.index(axis), hi); }
    void set_lower(const std::string& axis, long long lo) { window_.lower(scheme_.index(axis), lo); }
    void restrict_to(const Window& w);  // intersect the window and drop entries now outside it

    bool operator==(const DimTable& o) const;

private:
    GradingScheme scheme_;
    std::map<MultiDegree, long long> entries_;
    Window window_;
};

// Compares on the intersection of both windows; schemes must agree.
bool equal_on_window(const DimTable& a, const DimTable& b);

// [k] adds -k to the cohomological axis; <k> adds +k to the named formal axis.
MultiDegree coh_shift(const GradingScheme& s, int k);
MultiDegree grading_shift(const GradingScheme& s, const std::string& axis, int k);

DimTable shift(const DimTable& t, const MultiDegree& d);

enum class ShearDir { left, right };
// Entry at (axis=i, C=c) moves to C=c-2i (left) or C=c+2i (right).
DimTable shear(const DimTable& t, const std::string& axis, ShearDir dir);

// Integer-linear relabeling: target exponent vector = matrix * source exponent vector.
struct Regrading {
    GradingScheme source;
    GradingScheme target;
    std::vector<std::vector<int>> matrix;  // target.size() rows, source.size() columns
};

DimTable regrade(const DimTable& t, const Regrading& r);
Regrading inverse(const Regrading& r);  // throws unless unimodular

// (X,Y,C) -> (Xt,Yt,C) with Xt = X^2 Y, Yt = X^-1, i.e. (p,r) -> (r, 2r - p).
Regrading tilde_regrading();

// Sum out an axis; the axis must not be truncated.
DimTable degrade(const DimTable& t, const std::string& axis);
// Keep only entries with axis == value; the window records the pin.
DimTable slice(const DimTable& t, const std::string& axis, int value);
// Remove an axis pinned to zero (after slice) or carrying only zeros.
DimTable drop_axis(const DimTable& t, const std::string& axis);
// Insert a new axis at the end, all entries at the given value, window pinned there.
DimTable add_axis(const DimTable& t, const std::string& axis, int value);

// deg(beta) = (C=-2, Y=1), or (C=-2, Xt=1, Yt=2) on tilde schemes.
MultiDegree beta_degree(const GradingScheme& s);

// Orbit sum of t under shifts by deg(beta), kept for axis values in [lo, hi].
DimTable periodize(const DimTable& t, const std::string& axis, int lo, int hi);

// Orbit sum under (Y=1, C=2) for a Y-degree-0 table; Y is appended if absent.
DimTable hom_shear_check(const DimTable& t, int ylo, int yhi);

nlohmann::json to_json(const DimTable& t);
DimTable dimtable_from_json(const nlohmann::json& j);

}  // namespace hhh
