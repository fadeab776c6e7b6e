#pragma once

#include "awcobar/linear.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace awcobar {

/// A nondegenerate simplex of a simplicial set, addressed by dimension and
/// position within that dimension.
struct Cell {
    int dim = 0;
    int index = 0;
    auto operator<=>(const Cell&) const = default;
};

inline int degree(const Cell& c) { return c.dim; }

/// Eilenberg-Zilber canonical form s_{j_1} ... s_{j_t} g with j_1 > ... > j_t.
/// The word is stored outermost operator first.
struct Simplex {
    std::vector<int> word;
    Cell gen;

    int dim() const { return gen.dim + static_cast<int>(word.size()); }
    bool degenerate() const { return !word.empty(); }
    auto operator<=>(const Simplex&) const = default;
};

inline Simplex nondegenerate(Cell c) { return Simplex{{}, c}; }

/// Canonical simplex obtained by degenerating `g` at the final positions in
/// `positions` (applied in ascending order).
inline Simplex degenerate_at(Cell g, std::vector<int> positions)
{
    std::sort(positions.begin(), positions.end(), std::greater<>());
    return Simplex{std::move(positions), g};
}

/// s_i applied to a canonical word; normalizes with s_i s_j = s_{j+1} s_i (i <= j).
inline Simplex apply_degeneracy(int i, const Simplex& x)
{
    if (i < 0 || i > x.dim()) throw PreconditionError("degeneracy index out of range");
    Simplex out;
    out.gen = x.gen;
    out.word.reserve(x.word.size() + 1);
    std::size_t k = 0;
    for (; k < x.word.size() && x.word[k] >= i; ++k) out.word.push_back(x.word[k] + 1);
    out.word.push_back(i);
    for (; k < x.word.size(); ++k) out.word.push_back(x.word[k]);
    return out;
}

/// Finite simplicial set stored by its nondegenerate simplices and their faces.
class SimplicialSet {
public:
    SimplicialSet() = default;

    /// `faces[n][k]` lists the n+1 faces of generator (n,k); `faces[0]` entries are empty.
    SimplicialSet(std::vector<std::vector<std::string>> labels,
                  std::vector<std::vector<std::vector<Simplex>>> faces)
        : labels_(std::move(labels)), faces_(std::move(faces))
    {
        faces_.resize(labels_.size());
        for (std::size_t n = 0; n < labels_.size(); ++n) faces_[n].resize(labels_[n].size());
        while (!labels_.empty() && labels_.back().empty()) {
            labels_.pop_back();
            faces_.pop_back();
        }
    }

    int top_dimension() const { return static_cast<int>(labels_.size()) - 1; }
    int count(int n) const
    {
        return (n < 0 || n > top_dimension()) ? 0 : static_cast<int>(labels_[n].size());
    }
    std::vector<int> counts() const
    {
        std::vector<int> out;
        for (int n = 0; n <= top_dimension(); ++n) out.push_back(count(n));
        return out;
    }
    std::vector<Cell> cells(int n) const
    {
        std::vector<Cell> out;
        for (int k = 0; k < count(n); ++k) out.push_back({n, k});
        return out;
    }
    const std::string& label(Cell c) const { return labels_.at(c.dim).at(c.index); }
    const std::vector<std::vector<std::string>>& labels() const { return labels_; }
    const std::vector<Simplex>& generator_faces(Cell c) const { return faces_.at(c.dim).at(c.index); }

    /// True if there is a single vertex and no nondegenerate simplices in
    /// dimensions 1..r.
    bool is_reduced(int r) const
    {
        if (count(0) != 1) return false;
        for (int n = 1; n <= r; ++n)
            if (count(n) != 0) return false;
        return true;
    }

    Simplex face(int i, const Simplex& x) const
    {
        const int n = x.dim();
        if (n < 1 || i < 0 || i > n) throw PreconditionError("face index out of range");
        std::vector<int> outer;
        int cur = i;
        for (std::size_t k = 0; k < x.word.size(); ++k) {
            const int j = x.word[k];
            if (cur < j) {
                outer.push_back(j - 1);
            } else if (cur == j || cur == j + 1) {
                Simplex rest{std::vector<int>(x.word.begin() + static_cast<long>(k) + 1, x.word.end()),
                             x.gen};
                return wrap(outer, std::move(rest));
            } else {
                outer.push_back(j);
                --cur;
            }
        }
        return wrap(outer, generator_faces(x.gen).at(cur));
    }

    Simplex degeneracy(int i, const Simplex& x) const { return apply_degeneracy(i, x); }

    /// K(a)(x) for an order-preserving vertex map a : [0,m] -> [0,dim x].
    Simplex apply_operator(const Simplex& x, const std::vector<int>& vmap) const
    {
        const int n = x.dim();
        std::vector<bool> hit(n + 1, false);
        for (std::size_t j = 0; j < vmap.size(); ++j) {
            if (vmap[j] < 0 || vmap[j] > n || (j > 0 && vmap[j] < vmap[j - 1]))
                throw PreconditionError("vertex map is not order preserving into [0,n]");
            hit[vmap[j]] = true;
        }
        Simplex y = x;
        for (int v = n; v >= 0; --v)
            if (!hit[v]) y = face(v, y);
        for (std::size_t j = 0; j + 1 < vmap.size(); ++j)
            if (vmap[j] == vmap[j + 1]) y = apply_degeneracy(static_cast<int>(j), y);
        return y;
    }

    /// x_{v_0 ... v_m} for a strictly increasing vertex list.
    Simplex sub_simplex(const Simplex& x, const std::vector<int>& vertices) const
    {
        return apply_operator(x, vertices);
    }
    Simplex front(const Simplex& x, int l) const
    {
        std::vector<int> v(l + 1);
        for (int j = 0; j <= l; ++j) v[j] = j;
        return apply_operator(x, v);
    }
    Simplex back(const Simplex& x, int l) const
    {
        std::vector<int> v;
        for (int j = l; j <= x.dim(); ++j) v.push_back(j);
        return apply_operator(x, v);
    }

    /// Returns an empty string when all simplicial identities hold on generators,
    /// otherwise a description of the first violation.
    std::string check_identities() const
    {
        for (int n = 1; n <= top_dimension(); ++n)
            for (int k = 0; k < count(n); ++k) {
                const auto& fs = faces_[n][k];
                if (static_cast<int>(fs.size()) != n + 1)
                    return "generator " + std::to_string(n) + "/" + std::to_string(k) + ": wrong face count";
                for (const auto& f : fs) {
                    if (f.dim() != n - 1)
                        return "generator " + std::to_string(n) + "/" + std::to_string(k) + ": face of wrong dimension";
                    if (f.gen.dim < 0 || f.gen.index < 0 || f.gen.index >= count(f.gen.dim))
                        return "generator " + std::to_string(n) + "/" + std::to_string(k) + ": face references unknown generator";
                    for (std::size_t t = 0; t < f.word.size(); ++t) {
                        const int expect_below = f.dim() - static_cast<int>(t);
                        if (f.word[t] < 0 || f.word[t] >= expect_below || (t > 0 && f.word[t] >= f.word[t - 1]))
                            return "generator " + std::to_string(n) + "/" + std::to_string(k) + ": face not in canonical form";
                    }
                }
            }
        for (int n = 2; n <= top_dimension(); ++n)
            for (int k = 0; k < count(n); ++k) {
                const Simplex x = nondegenerate({n, k});
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i)
                        if (face(i, face(j, x)) != face(j - 1, face(i, x)))
                            return "d_" + std::to_string(i) + " d_" + std::to_string(j) + " identity fails on " +
                                   std::to_string(n) + "/" + std::to_string(k);
            }
        return {};
    }

private:
    Simplex wrap(const std::vector<int>& outer, Simplex inner) const
    {
        for (auto it = outer.rbegin(); it != outer.rend(); ++it) inner = apply_degeneracy(*it, inner);
        return inner;
    }

    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<std::vector<Simplex>>> faces_;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

namespace detail {

inline void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out)
{
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            if (n - v < k - static_cast<int>(cur.size())) break;
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

inline std::string vertex_label(const std::vector<int>& v)
{
    std::string s;
    for (int x : v) s += std::to_string(x);
    return s;
}

} // namespace detail

/// Standard n-simplex: one generator per nonempty subset of [0,n].
inline SSetPtr standard_simplex(int n)
{
    if (n < 0) throw PreconditionError("standard_simplex: n must be non-negative");
    std::vector<std::vector<std::vector<int>>> subsets(n + 1);
    std::map<std::vector<int>, Cell> lookup;
    for (int d = 0; d <= n; ++d) {
        detail::subsets_of_size(n + 1, d + 1, subsets[d]);
        for (std::size_t k = 0; k < subsets[d].size(); ++k) lookup[subsets[d][k]] = {d, static_cast<int>(k)};
    }
    std::vector<std::vector<std::string>> labels(n + 1);
    std::vector<std::vector<std::vector<Simplex>>> faces(n + 1);
    for (int d = 0; d <= n; ++d)
        for (const auto& s : subsets[d]) {
            labels[d].push_back(detail::vertex_label(s));
            std::vector<Simplex> fs;
            if (d > 0)
                for (int i = 0; i <= d; ++i) {
                    auto t = s;
                    t.erase(t.begin() + i);
                    fs.push_back(nondegenerate(lookup.at(t)));
                }
            faces[d].push_back(std::move(fs));
        }
    return std::make_shared<SimplicialSet>(std::move(labels), std::move(faces));
}

/// The (k+1)-fold degeneracy of the basepoint in dimension k.
inline Simplex basepoint_in(int k)
{
    std::vector<int> w;
    for (int j = k - 1; j >= 0; --j) w.push_back(j);
    return Simplex{std::move(w), Cell{0, 0}};
}

/// Collapses every generator of dimension <= r to iterated degeneracies of a
/// single basepoint.
inline SSetPtr skeletal_quotient(const SimplicialSet& K, int r)
{
    if (r < 0 || r >= K.top_dimension()) throw PreconditionError("skeletal_quotient: need 0 <= r < top dimension");
    const int top = K.top_dimension();
    std::vector<std::vector<std::string>> labels(top + 1);
    std::vector<std::vector<std::vector<Simplex>>> faces(top + 1);
    labels[0].push_back("*");
    faces[0].push_back({});
    std::map<Cell, Cell> renumber;
    for (int n = r + 1; n <= top; ++n)
        for (int k = 0; k < K.count(n); ++k) {
            renumber[{n, k}] = {n, static_cast<int>(labels[n].size())};
            labels[n].push_back(K.label({n, k}));
        }
    for (int n = r + 1; n <= top; ++n)
        for (int k = 0; k < K.count(n); ++k) {
            std::vector<Simplex> fs;
            for (const auto& f : K.generator_faces({n, k})) {
                if (f.gen.dim <= r)
                    fs.push_back(basepoint_in(n - 1));
                else
                    fs.push_back(Simplex{f.word, renumber.at(f.gen)});
            }
            faces[n].push_back(std::move(fs));
        }
    return std::make_shared<SimplicialSet>(std::move(labels), std::move(faces));
}

/// Simplicial sphere S^n = Delta[n] / boundary.
inline SSetPtr sphere(int n)
{
    if (n < 1) throw PreconditionError("sphere: n must be at least 1");
    return skeletal_quotient(*standard_simplex(n), n - 1);
}

/// Product K x L, materialized up to `max_dim` (default: dim K + dim L, which
/// is complete).
class ProductSet {
public:
    ProductSet(SSetPtr left, SSetPtr right, int max_dim = -1) : left_(std::move(left)), right_(std::move(right))
    {
        const int full = left_->top_dimension() + right_->top_dimension();
        max_dim_ = (max_dim < 0 || max_dim > full) ? full : max_dim;
        components_.resize(max_dim_ + 1);
        lookup_.resize(max_dim_ + 1);
        std::vector<std::vector<std::string>> labels(max_dim_ + 1);
        for (int n = 0; n <= max_dim_; ++n) {
            for (int p = 0; p <= std::min(n, left_->top_dimension()); ++p) {
                std::vector<std::vector<int>> as;
                detail::subsets_of_size(n, n - p, as);
                for (int q = 0; q <= std::min(n, right_->top_dimension()); ++q) {
                    if ((n - p) + (n - q) > n) continue;
                    std::vector<std::vector<int>> bs;
                    detail::subsets_of_size(n, n - q, bs);
                    for (const auto& x : left_->cells(p))
                        for (const auto& y : right_->cells(q))
                            for (const auto& A : as)
                                for (const auto& B : bs) {
                                    if (!disjoint(A, B)) continue;
                                    Simplex a = degenerate_at(x, A);
                                    Simplex b = degenerate_at(y, B);
                                    const int idx = static_cast<int>(components_[n].size());
                                    lookup_[n].emplace(std::make_pair(a, b), idx);
                                    components_[n].emplace_back(std::move(a), std::move(b));
                                    labels[n].push_back("");
                                }
                }
            }
        }
        std::vector<std::vector<std::vector<Simplex>>> faces(max_dim_ + 1);
        for (int n = 0; n <= max_dim_; ++n) {
            for (const auto& [a, b] : components_[n]) {
                std::vector<Simplex> fs;
                if (n > 0)
                    for (int i = 0; i <= n; ++i) fs.push_back(make(left_->face(i, a), right_->face(i, b)));
                faces[n].push_back(std::move(fs));
            }
        }
        set_ = std::make_shared<SimplicialSet>(std::move(labels), std::move(faces));
    }

    const SSetPtr& set() const { return set_; }
    const SSetPtr& left() const { return left_; }
    const SSetPtr& right() const { return right_; }
    int max_dim() const { return max_dim_; }
    /// Dimension above which every product simplex is degenerate.
    int full_dim() const { return left_->top_dimension() + right_->top_dimension(); }

    const std::pair<Simplex, Simplex>& components(Cell c) const { return components_.at(c.dim).at(c.index); }
    /// Both components of an arbitrary product simplex.
    std::pair<Simplex, Simplex> components(const Simplex& s) const
    {
        const auto& [a, b] = components(s.gen);
        Simplex x = a, y = b;
        for (auto it = s.word.rbegin(); it != s.word.rend(); ++it) {
            x = apply_degeneracy(*it, x);
            y = apply_degeneracy(*it, y);
        }
        return {x, y};
    }

    /// Canonical product simplex of the pair (a, b).
    Simplex make(const Simplex& a, const Simplex& b) const
    {
        if (a.dim() != b.dim()) throw PreconditionError("product: components of different dimension");
        std::vector<int> word;
        Simplex x = a, y = b;
        for (;;) {
            int common = -1;
            for (int j : x.word)
                if (std::find(y.word.begin(), y.word.end(), j) != y.word.end()) common = std::max(common, j);
            if (common < 0) break;
            word.push_back(common);
            x = left_->face(common, x);
            y = right_->face(common, y);
        }
        if (x.dim() > max_dim_) throw PreconditionError("product: simplex beyond materialized dimension");
        auto it = lookup_[x.dim()].find({x, y});
        if (it == lookup_[x.dim()].end()) throw PreconditionError("product: pair not found");
        return Simplex{std::move(word), Cell{x.dim(), it->second}};
    }

private:
    static bool disjoint(const std::vector<int>& a, const std::vector<int>& b)
    {
        for (int x : a)
            if (std::find(b.begin(), b.end(), x) != b.end()) return false;
        return true;
    }

    SSetPtr left_, right_, set_;
    int max_dim_ = 0;
    std::vector<std::vector<std::pair<Simplex, Simplex>>> components_;
    std::vector<std::map<std::pair<Simplex, Simplex>, int>> lookup_;
};

using ProductPtr = std::shared_ptr<const ProductSet>;

inline ProductPtr product(SSetPtr K, SSetPtr L, int max_dim = -1)
{
    return std::make_shared<ProductSet>(std::move(K), std::move(L), max_dim);
}

/// Simplicial map given by the images of generators.
class SimplicialMap {
public:
    SimplicialMap(SSetPtr source, SSetPtr target, std::vector<std::vector<Simplex>> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
    {
    }

    const SSetPtr& source() const { return source_; }
    const SSetPtr& target() const { return target_; }
    const Simplex& image(Cell c) const { return images_.at(c.dim).at(c.index); }

    Simplex operator()(const Simplex& x) const
    {
        Simplex y = image(x.gen);
        for (auto it = x.word.rbegin(); it != x.word.rend(); ++it) y = apply_degeneracy(*it, y);
        return y;
    }

    /// Empty when the assignment commutes with faces on every generator.
    std::string check() const
    {
        for (int n = 0; n <= source_->top_dimension(); ++n)
            for (const auto& c : source_->cells(n)) {
                if (image(c).dim() != n) return "image of wrong dimension";
                for (int i = 0; n > 0 && i <= n; ++i) {
                    const Simplex x = nondegenerate(c);
                    if ((*this)(source_->face(i, x)) != target_->face(i, image(c)))
                        return "map does not commute with d_" + std::to_string(i) + " on " + std::to_string(n) +
                               "/" + std::to_string(c.index);
                }
            }
        return {};
    }

private:
    SSetPtr source_, target_;
    std::vector<std::vector<Simplex>> images_;
};

inline SimplicialMap identity_map(const SSetPtr& K)
{
    std::vector<std::vector<Simplex>> im(K->top_dimension() + 1);
    for (int n = 0; n <= K->top_dimension(); ++n)
        for (const auto& c : K->cells(n)) im[n].push_back(nondegenerate(c));
    return SimplicialMap(K, K, std::move(im));
}

inline SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f)
{
    std::vector<std::vector<Simplex>> im(f.source()->top_dimension() + 1);
    for (int n = 0; n <= f.source()->top_dimension(); ++n)
        for (const auto& c : f.source()->cells(n)) im[n].push_back(g(f.image(c)));
    return SimplicialMap(f.source(), g.target(), std::move(im));
}

/// x -> (x, x) into a product of K with itself.
inline SimplicialMap diagonal_map(const ProductPtr& KK)
{
    const SSetPtr& K = KK->left();
    std::vector<std::vector<Simplex>> im(K->top_dimension() + 1);
    for (int n = 0; n <= K->top_dimension(); ++n)
        for (const auto& c : K->cells(n)) im[n].push_back(KK->make(nondegenerate(c), nondegenerate(c)));
    return SimplicialMap(K, KK->set(), std::move(im));
}

/// (x, y) -> (y, x) from K x L to L x K.
inline SimplicialMap swap_map(const ProductPtr& KL, const ProductPtr& LK)
{
    const SSetPtr& P = KL->set();
    std::vector<std::vector<Simplex>> im(P->top_dimension() + 1);
    for (int n = 0; n <= P->top_dimension(); ++n)
        for (const auto& c : P->cells(n)) {
            const auto& [a, b] = KL->components(c);
            im[n].push_back(LK->make(b, a));
        }
    return SimplicialMap(P, LK->set(), std::move(im));
}

/// Product map h x k : K x L -> K' x L'.
inline SimplicialMap product_map(const ProductPtr& source, const ProductPtr& target, const SimplicialMap& h,
                                 const SimplicialMap& k)
{
    const SSetPtr& P = source->set();
    std::vector<std::vector<Simplex>> im(P->top_dimension() + 1);
    for (int n = 0; n <= P->top_dimension(); ++n)
        for (const auto& c : P->cells(n)) {
            const auto& [a, b] = source->components(c);
            im[n].push_back(target->make(h(a), k(b)));
        }
    return SimplicialMap(P, target->set(), std::move(im));
}

/// Quotient map K -> K / sk_r K.
inline SimplicialMap quotient_map(const SSetPtr& K, const SSetPtr& Q, int r)
{
    std::vector<std::vector<Simplex>> im(K->top_dimension() + 1);
    std::vector<int> next(K->top_dimension() + 1, 0);
    for (int n = 0; n <= K->top_dimension(); ++n)
        for (const auto& c : K->cells(n)) {
            (void)c;
            if (n <= r)
                im[n].push_back(basepoint_in(n));
            else
                im[n].push_back(nondegenerate({n, next[n]++}));
        }
    return SimplicialMap(K, Q, std::move(im));
}

} // namespace awcobar
