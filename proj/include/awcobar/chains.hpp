#pragma once

#include "awcobar/linear.hpp"
#include "awcobar/simplicial.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace awcobar {

template <class A, class B>
using Pair = std::pair<A, B>;

/// A linear map given on basis elements.
template <class A, class B>
using LinearMap = std::function<Lin<B>(const A&)>;

template <class A, class B>
Lin<B> apply_map(const LinearMap<A, B>& f, const Lin<A>& x)
{
    return map_linear(x, f);
}

template <class A, class B>
Lin<Pair<A, B>> tensor(const Lin<A>& x, const Lin<B>& y)
{
    Lin<Pair<A, B>> out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) out.add({a, b}, ca * cb);
    return out;
}

/// Normalized chains C(K) with the Alexander-Whitney coproduct.
class SimplicialChains {
public:
    using Basis = Cell;

    explicit SimplicialChains(SSetPtr K) : K_(std::move(K)) {}

    const SSetPtr& space() const { return K_; }
    int degree(const Cell& c) const { return c.dim; }
    int top_degree() const { return K_->top_dimension(); }
    std::vector<Cell> basis(int n) const { return K_->cells(n); }

    /// Image of a simplex in normalized chains: zero when degenerate.
    Lin<Cell> chain(const Simplex& s) const { return s.degenerate() ? Lin<Cell>{} : Lin<Cell>(s.gen); }

    Lin<Cell> d(const Cell& c) const
    {
        Lin<Cell> out;
        if (c.dim == 0) return out;
        const Simplex x = nondegenerate(c);
        for (int i = 0; i <= c.dim; ++i) {
            const Simplex f = K_->face(i, x);
            if (!f.degenerate()) out.add(f.gen, parity_sign(i));
        }
        return out;
    }

    /// Sum over i of x_{0..i} (x) x_{i..n}.
    Lin<Pair<Cell, Cell>> coproduct(const Cell& c) const
    {
        Lin<Pair<Cell, Cell>> out;
        const Simplex x = nondegenerate(c);
        for (int i = 0; i <= c.dim; ++i) {
            const Simplex a = K_->front(x, i), b = K_->back(x, i);
            if (!a.degenerate() && !b.degenerate()) out.add({a.gen, b.gen}, 1);
        }
        return out;
    }

    bool is_unit(const Cell& c) const { return c.dim == 0; }
    /// Reduced spaces have a single vertex.
    Cell unit() const { return Cell{0, 0}; }

private:
    SSetPtr K_;
};

/// Tensor product of two chain complexes (or coalgebras) with Koszul signs.
template <class C1, class C2>
class TensorComplex {
public:
    using B1 = typename C1::Basis;
    using B2 = typename C2::Basis;
    using Basis = Pair<B1, B2>;

    TensorComplex(const C1& a, const C2& b) : a_(a), b_(b) {}

    const C1& left() const { return a_; }
    const C2& right() const { return b_; }

    int degree(const Basis& x) const { return a_.degree(x.first) + b_.degree(x.second); }
    int top_degree() const { return a_.top_degree() + b_.top_degree(); }
    std::vector<Basis> basis(int n) const
    {
        std::vector<Basis> out;
        for (int p = 0; p <= n; ++p)
            for (const auto& x : a_.basis(p))
                for (const auto& y : b_.basis(n - p)) out.push_back({x, y});
        return out;
    }

    Lin<Basis> d(const Basis& x) const
    {
        Lin<Basis> out = tensor(a_.d(x.first), Lin<B2>(x.second));
        out.add_scaled(tensor(Lin<B1>(x.first), b_.d(x.second)), parity_sign(a_.degree(x.first)));
        return out;
    }

    /// (a (x) b) -> sum (-1)^{|a''||b'|} (a' (x) b') (x) (a'' (x) b'').
    Lin<Pair<Basis, Basis>> coproduct(const Basis& x) const
    {
        Lin<Pair<Basis, Basis>> out;
        const auto da = a_.coproduct(x.first);
        const auto db = b_.coproduct(x.second);
        for (const auto& [pa, ca] : da)
            for (const auto& [pb, cb] : db) {
                const int s = koszul(a_.degree(pa.second), b_.degree(pb.first));
                out.add({{pa.first, pb.first}, {pa.second, pb.second}}, ca * cb * s);
            }
        return out;
    }

    bool is_unit(const Basis& x) const { return a_.is_unit(x.first) && b_.is_unit(x.second); }
    Basis unit() const { return {a_.unit(), b_.unit()}; }

private:
    C1 a_;
    C2 b_;
};

/// Coproduct with the terms involving the unit removed (connected coalgebras).
template <class C>
Lin<Pair<typename C::Basis, typename C::Basis>> reduced_coproduct(const C& c, const typename C::Basis& x)
{
    return filter(c.coproduct(x), [&](const auto& t) { return !c.is_unit(t.first) && !c.is_unit(t.second); });
}

/// Linear extension of the differential.
template <class C>
Lin<typename C::Basis> boundary(const C& c, const Lin<typename C::Basis>& x)
{
    return map_linear(x, [&](const auto& b) { return c.d(b); });
}

/// f (x) g with the Koszul sign (-1)^{|g||a|} on a (x) b.
template <class A1, class B1, class A2, class B2>
Lin<Pair<B1, B2>> tensor_maps(const LinearMap<A1, B1>& f, int deg_g, const std::function<int(const A1&)>& deg_a,
                              const LinearMap<A2, B2>& g, const Lin<Pair<A1, A2>>& x)
{
    Lin<Pair<B1, B2>> out;
    for (const auto& [t, c] : x) out.add_scaled(tensor(f(t.first), g(t.second)), c * koszul(deg_g, deg_a(t.first)));
    return out;
}

/// Chain map induced by a simplicial map on normalized chains.
inline LinearMap<Cell, Cell> induced_chain_map(const SimplicialMap& h)
{
    return [h](const Cell& c) {
        const Simplex y = h.image(c);
        return y.degenerate() ? Lin<Cell>{} : Lin<Cell>(y.gen);
    };
}

/// Swap of tensor factors with the Koszul sign.
template <class A, class B>
Lin<Pair<B, A>> twist(const Lin<Pair<A, B>>& x, const std::function<int(const A&)>& da,
                      const std::function<int(const B&)>& db)
{
    Lin<Pair<B, A>> out;
    for (const auto& [t, c] : x) out.add({t.second, t.first}, c * koszul(da(t.first), db(t.second)));
    return out;
}

/// Outcome of an identity check: empty witness means success.
struct CheckResult {
    bool ok = true;
    std::string witness;
    long long checked = 0;

    void fail(std::string w)
    {
        if (ok) witness = std::move(w);
        ok = false;
    }
};

inline std::string describe(const Cell& c) { return std::to_string(c.dim) + "/" + std::to_string(c.index); }
inline std::string describe(const Pair<Cell, Cell>& t) { return describe(t.first) + "(x)" + describe(t.second); }

} // namespace awcobar
