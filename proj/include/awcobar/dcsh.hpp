#pragma once

// Strongly homotopy coalgebra maps ("families" f_k : C -> D^{(x)k}) and the
// algebra maps they induce on cobar constructions.

#include "awcobar/cobar.hpp"
#include "awcobar/ezaw.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace awcobar {

/// (-1)^{sum_i (k-i)|e_i|}: the sign produced by desuspending e_1 (x) ... (x) e_k.
template <class C>
int desuspension_sign(const C& coalg, const Word<typename C::Basis>& w)
{
    long long e = 0, after = 0;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        e += after * coalg.degree(*it);
        ++after;
    }
    return parity_sign(e);
}

/// A family of maps f_k : C -> D^{(x)k} of degree k-1, given on non-unit basis
/// elements.  On the unit, f_1(1) = 1 and f_k(1) = 0 for k > 1.
template <class C, class D>
class Family {
public:
    using Source = C;
    using Target = D;
    using SBasis = typename C::Basis;
    using TBasis = typename D::Basis;
    using Value = Lin<Word<TBasis>>;
    using Component = std::function<Value(const SBasis&, int)>;

    Family(C source, D target, Component component)
        : source_(std::move(source)), target_(std::move(target)), component_(std::move(component))
    {
    }

    const C& source() const { return source_; }
    const D& target() const { return target_; }

    Value operator()(const SBasis& c, int k) const
    {
        if (k < 1) return {};
        if (source_.is_unit(c)) return k == 1 ? Value(letter(target_.unit())) : Value{};
        Value v = memo_.get({c, k}, [&] { return component_(c, k); });
        if (mutation_) mutation_(c, k, v);
        return v;
    }

    /// Largest k for which f_k(c) can be nonzero (every factor of f_k has positive degree).
    int max_k(const SBasis& c) const { return std::max(1, source_.degree(c)); }

    /// Test hook applied to every computed component.
    void set_mutation(std::function<void(const SBasis&, int, Value&)> m) { mutation_ = std::move(m); }

private:
    C source_;
    D target_;
    Component component_;
    Memo<Pair<SBasis, int>, Value> memo_;
    std::function<void(const SBasis&, int, Value&)> mutation_;
};

/// Ind f : Omega C -> Omega D, s^{-1}c -> sum_k (-1)^{...} s^{-1}e_1 ... s^{-1}e_k over f_k(c).
/// Terms with a unit factor vanish in the cobar construction.
template <class C, class D>
AlgebraMap<typename C::Basis, Cobar<D>> ind(const Family<C, D>& f)
{
    Cobar<D> target(f.target());
    return {target, [f](const typename C::Basis& c) {
                Lin<Word<typename D::Basis>> out;
                const auto& T = f.target();
                for (int k = 1; k <= f.max_k(c); ++k)
                    for (const auto& [w, a] : f(c, k)) {
                        if (std::any_of(w.letters.begin(), w.letters.end(), [&](const auto& e) { return T.is_unit(e); }))
                            continue;
                        out.add(w, a * desuspension_sign(T, w));
                    }
                return out;
            }};
}

namespace detail {

/// Calls visit(values) for every choice i_1 + ... + i_k = n with i_j >= 1, where
/// values[j] = pick(j, i_j) and is skipped when zero.
template <class V, class Pick, class Visit>
void compositions(int k, int n, Pick&& pick, Visit&& visit)
{
    std::vector<int> parts;
    std::vector<V> store(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int j, int left) -> void {
        if (j == k) {
            if (left == 0) visit(parts, store);
            return;
        }
        const int rest = k - j - 1;
        for (int i = 1; i <= left - rest; ++i) {
            store[static_cast<std::size_t>(j)] = pick(j, i);
            if (store[static_cast<std::size_t>(j)].is_zero()) continue;
            parts.push_back(i);
            self(self, j + 1, left - i);
            parts.pop_back();
        }
    };
    rec(rec, 0, n);
}

/// Product of tensor words: concatenation, multilinear.
template <class B>
Lin<Word<B>> concat_all(const std::vector<Lin<Word<B>>>& parts)
{
    Lin<Word<B>> out(Word<B>{});
    for (const auto& p : parts) {
        Lin<Word<B>> next;
        for (const auto& [a, ca] : out)
            for (const auto& [b, cb] : p) next.add(concat(a, b), ca * cb);
        out = std::move(next);
        if (out.is_zero()) break;
    }
    return out;
}

} // namespace detail

/// Composite family (g f)_n = sum_k sum_{i_1+...+i_k=n} (g_{i_1} (x) ... (x) g_{i_k}) f_k, with the
/// signs making Ind(g f) = Ind g o Ind f.
template <class C, class D, class E>
Family<C, E> compose(const Family<D, E>& g, const Family<C, D>& f)
{
    auto comp = [f, g](const typename C::Basis& c, int n) {
        using EB = typename E::Basis;
        Lin<Word<EB>> out;
        const auto& Dc = f.target();
        const auto& Ec = g.target();
        for (int k = 1; k <= std::min(n, f.max_k(c)); ++k)
            for (const auto& [w, a] : f(c, k)) {
                const Int base = a * desuspension_sign(Dc, w);
                detail::compositions<Lin<Word<EB>>>(
                    k, n, [&](int j, int i) { return g(w.letters[static_cast<std::size_t>(j)], i); },
                    [&](const std::vector<int>&, const std::vector<Lin<Word<EB>>>& parts) {
                        // each factor carries its own desuspension sign; the result is re-suspended
                        std::vector<Lin<Word<EB>>> signed_parts;
                        for (const auto& p : parts) {
                            Lin<Word<EB>> q;
                            for (const auto& [u, b] : p) q.add(u, b * desuspension_sign(Ec, u));
                            signed_parts.push_back(std::move(q));
                        }
                        for (const auto& [u, b] : detail::concat_all(signed_parts))
                            out.add(u, base * b * desuspension_sign(Ec, u));
                    });
            }
        return out;
    };
    return Family<C, E>(f.source(), g.target(), comp);
}

/// Iterated coproduct C -> C^{(x)i} with units, left-normalized.
template <class C>
Lin<Word<typename C::Basis>> iterated_coproduct(const C& c, const typename C::Basis& x, int i)
{
    using B = typename C::Basis;
    Lin<Word<B>> out(letter(x));
    for (int step = 1; step < i; ++step) {
        Lin<Word<B>> next;
        for (const auto& [w, a] : out) {
            Word<B> head = w;
            head.letters.pop_back();
            for (const auto& [pr, b] : c.coproduct(w.letters.back())) {
                Word<B> v = head;
                v.letters.push_back(pr.first);
                v.letters.push_back(pr.second);
                next.add(v, a * b);
            }
        }
        out = std::move(next);
    }
    return out;
}

/// Tensor product of families, f ^ g : C (x) C' -> D (x) D'.  The n-th component is
/// sum over k and i_1+...+i_k = n of the interleaving of
/// (Delta^{(i_1)} (x) ... (x) Delta^{(i_k)}) f_k(c) with (g_{i_1} (x) ... (x) g_{i_k}) Delta^{(k)}(c').
template <class C1, class D1, class C2, class D2>
Family<TensorComplex<C1, C2>, TensorComplex<D1, D2>> wedge(const Family<C1, D1>& f, const Family<C2, D2>& g)
{
    using S = TensorComplex<C1, C2>;
    using T = TensorComplex<D1, D2>;
    S source(f.source(), g.source());
    T target(f.target(), g.target());
    auto comp = [f, g](const typename S::Basis& x, int n) {
        using TB = typename T::Basis;
        using B1 = typename D1::Basis;
        using B2 = typename D2::Basis;
        const auto& Dl = f.target();
        const auto& Dr = g.target();
        const auto& Cr = g.source();
        const int dc = f.source().degree(x.first);
        Lin<Word<TB>> out;
        for (int k = 1; k <= n; ++k) {
            const auto fk = f(x.first, k);
            if (fk.is_zero()) continue;
            const auto split = iterated_coproduct(Cr, x.second, k);
            for (const auto& [w, a] : fk)
                for (const auto& [v, b] : split) {
                    detail::compositions<Lin<Word<B2>>>(
                        k, n, [&](int j, int i) { return g(v.letters[static_cast<std::size_t>(j)], i); },
                        [&](const std::vector<int>& parts, const std::vector<Lin<Word<B2>>>& rvals) {
                            // g_{i_j} passes s^{-1}c'_1 ... s^{-1}c'_{j-1}; the right operator passes c
                            long long e = static_cast<long long>(n - k) * dc;
                            int prefix = 0;
                            std::vector<Lin<Word<B1>>> lvals;
                            for (int j = 0; j < k; ++j) {
                                e += static_cast<long long>(parts[static_cast<std::size_t>(j)] - 1) * prefix;
                                prefix += Cr.degree(v.letters[static_cast<std::size_t>(j)]) - 1;
                                lvals.push_back(iterated_coproduct(Dl, w.letters[static_cast<std::size_t>(j)],
                                                                   parts[static_cast<std::size_t>(j)]));
                            }
                            const Int s = a * b * parity_sign(e);
                            for (const auto& [lw, lc] : detail::concat_all(lvals))
                                for (const auto& [rw, rc] : detail::concat_all(rvals)) {
                                    // interleave a_1..a_n with b_1..b_n: b_j passes a_{j+1..n}
                                    long long ei = 0;
                                    int later = 0;
                                    Word<TB> t;
                                    t.letters.resize(static_cast<std::size_t>(n));
                                    for (int j = n - 1; j >= 0; --j) {
                                        const auto& aj = lw.letters[static_cast<std::size_t>(j)];
                                        const auto& bj = rw.letters[static_cast<std::size_t>(j)];
                                        ei += static_cast<long long>(Dr.degree(bj)) * later;
                                        later += Dl.degree(aj);
                                        t.letters[static_cast<std::size_t>(j)] = {aj, bj};
                                    }
                                    out.add(t, s * lc * rc * parity_sign(ei));
                                }
                        });
                }
        }
        return out;
    };
    return Family<S, T>(source, target, comp);
}

/// The family (f, 0, 0, ...) of a coalgebra map.
template <class C, class D>
Family<C, D> family_of(const C& source, const D& target, LinearMap<typename C::Basis, typename D::Basis> f)
{
    return Family<C, D>(source, target, [f](const typename C::Basis& c, int k) {
        Lin<Word<typename D::Basis>> out;
        if (k == 1)
            for (const auto& [e, a] : f(c)) out.add(letter(e), a);
        return out;
    });
}

/// Sign convention for the transferred homotopy on generators: the k-th tensor
/// power component is multiplied by this.
enum class HomotopySign { Negative, Alternating, Positive };

/// Sign exponent of F_i(a) (x) F_j(b) in F_{i+j}.  After desuspension, tau_k = sigma F_k obeys
/// tau_k(c) = -sum (-1)^{|a|} tau_i(a) tau_j(b), the twisting equation for sum tau_k.
inline long long transfer_sign_exponent(int i, int j, int deg_a)
{
    return static_cast<long long>(j + 1) * deg_a + static_cast<long long>(j) * (i - 1);
}

/// The strongly homotopy transfer of the Eilenberg-Zilber data along f:
/// F_1 = f, F_k = -sum_{i+j=k} (-1)^{(j+1)|a| + j(i-1)} F_i(a) (x) F_j(b) over Delta-bar phi(c) = sum a (x) b.
/// The unsuspended Koszul sign (-1)^{(j-1)|a|} fails once F_3 is nonzero.  Homotopy family
/// Phi_1 = phi, Phi_k = (Phi_{k-1} (x) 1 + sum_{i+j=k} nabla^{(x)i} F_i (x) Phi_j) Delta-bar phi.
class Transfer {
public:
    using X = EilenbergZilber::X;
    using XBasis = EilenbergZilber::XBasis;
    using Y = SimplicialChains;

    explicit Transfer(const EilenbergZilber& ez, HomotopySign sign = HomotopySign::Negative)
        : ez_(&ez), sign_(sign), family_(ez.total(), ez.tensor_complex(), [this](const Cell& c, int k) {
              return compute_F(c, k);
          })
    {
    }
    Transfer(const Transfer&) = delete;
    Transfer& operator=(const Transfer&) = delete;

    const EilenbergZilber& ez() const { return *ez_; }
    const Family<Y, X>& family() const { return family_; }
    Lin<Word<XBasis>> F(const Cell& c, int k) const { return family_(c, k); }

    Lin<Word<Cell>> Phi(const Cell& c, int k) const
    {
        if (k < 1 || c.dim == 0) return {};
        return phi_memo_.get({c, k}, [&] { return compute_Phi(c, k); });
    }

    /// Omega-tilde f : Omega C(X x Y) -> Omega(C(X) (x) C(Y)).
    AlgebraMap<Cell, Cobar<X>> omega_f() const { return ind(family_); }

    /// Omega nabla : Omega(C(X) (x) C(Y)) -> Omega C(X x Y).
    AlgebraMap<XBasis, Cobar<Y>> omega_nabla() const
    {
        const auto* ez = ez_;
        return cobar_map<X, Y>(Cobar<Y>(ez->total()), [ez](const XBasis& t) { return ez->nabla(t); });
    }

    /// Omega-tilde phi on a generator s^{-1}c.
    Lin<Word<Cell>> omega_phi_letter(const Cell& c) const
    {
        const Y& T = ez_->total();
        Lin<Word<Cell>> out;
        for (int k = 1; k <= std::max(1, c.dim); ++k) {
            const int e = sign_ == HomotopySign::Negative ? -1 : sign_ == HomotopySign::Positive ? 1 : parity_sign(k);
            for (const auto& [w, a] : Phi(c, k)) {
                if (std::any_of(w.letters.begin(), w.letters.end(), [&](const Cell& x) { return T.is_unit(x); })) continue;
                out.add(w, a * e * desuspension_sign(T, w));
            }
        }
        return out;
    }

    /// Omega-tilde phi on a word: the (Omega nabla o Omega-tilde f, 1)-derivation of degree 1
    /// extending the generator values.
    Lin<Word<Cell>> omega_phi(const Word<Cell>& w) const
    {
        const Cobar<Y> target(ez_->total());
        const auto of = omega_f();
        const auto on = omega_nabla();
        std::function<int(const Cell&)> deg = [](const Cell& c) { return c.dim - 1; };
        std::function<Lin<Word<Cell>>(const Word<Cell>&)> left = [&](const Word<Cell>& u) { return on(of(u)); };
        std::function<Lin<Word<Cell>>(const Cell&)> mid = [&](const Cell& c) { return omega_phi_letter(c); };
        std::function<Lin<Word<Cell>>(const Word<Cell>&)> right = [](const Word<Cell>& u) { return Lin<Word<Cell>>(u); };
        return apply_derivation(target, deg, left, mid, right, 1, w);
    }

    void clear_cache()
    {
        family_memo_clear();
        phi_memo_.clear();
    }

private:
    Lin<Word<XBasis>> compute_F(const Cell& c, int k) const
    {
        Lin<Word<XBasis>> out;
        if (k == 1) {
            for (const auto& [t, a] : ez_->f(c)) out.add(letter(t), a);
            return out;
        }
        const Y& T = ez_->total();
        for (const auto& [z, a] : ez_->phi(c))
            for (const auto& [pr, b] : reduced_coproduct(T, z))
                for (int i = 1; i < k; ++i) {
                    const int j = k - i;
                    const auto lhs = F(pr.first, i);
                    if (lhs.is_zero()) continue;
                    const auto rhs = F(pr.second, j);
                    const Int s = -a * b * parity_sign(transfer_sign_exponent(i, k - i, pr.first.dim));
                    for (const auto& [u, cu] : lhs)
                        for (const auto& [v, cv] : rhs) out.add(concat(u, v), s * cu * cv);
                }
        return out;
    }

    Lin<Word<Cell>> nabla_word(const Word<XBasis>& w) const
    {
        std::vector<Lin<Word<Cell>>> parts;
        for (const auto& t : w.letters) {
            Lin<Word<Cell>> p;
            for (const auto& [x, a] : ez_->nabla(t)) p.add(letter(x), a);
            parts.push_back(std::move(p));
        }
        return detail::concat_all(parts);
    }

    Lin<Word<Cell>> compute_Phi(const Cell& c, int k) const
    {
        Lin<Word<Cell>> out;
        if (k == 1) {
            for (const auto& [z, a] : ez_->phi(c)) out.add(letter(z), a);
            return out;
        }
        const Y& T = ez_->total();
        for (const auto& [z, a] : ez_->phi(c))
            for (const auto& [pr, b] : reduced_coproduct(T, z)) {
                const Int ab = a * b;
                for (const auto& [u, cu] : Phi(pr.first, k - 1)) out.add(concat(u, letter(pr.second)), ab * cu);
                for (int i = 1; i < k; ++i) {
                    const int j = k - i;
                    const auto fi = F(pr.first, i);
                    if (fi.is_zero()) continue;
                    const auto pj = Phi(pr.second, j);
                    if (pj.is_zero()) continue;
                    const Int s = ab * parity_sign(static_cast<long long>(j) * pr.first.dim);
                    for (const auto& [w, cw] : fi)
                        for (const auto& [u, cu] : nabla_word(w))
                            for (const auto& [v, cv] : pj) out.add(concat(u, v), s * cw * cu * cv);
                }
            }
        return out;
    }

    void family_memo_clear() { family_ = Family<Y, X>(ez_->total(), ez_->tensor_complex(), [this](const Cell& c, int k) { return compute_F(c, k); }); }

    const EilenbergZilber* ez_;
    HomotopySign sign_;
    Family<Y, X> family_;
    Memo<Pair<Cell, int>, Lin<Word<Cell>>> phi_memo_;
};

/// The strong deformation retract conditions of the transferred data on the cobar
/// constructions, on every word of degree <= max_degree:
/// f nabla = 1, d h + h d = nabla f - 1, f h = 0, h nabla = 0, h h = 0.
inline CheckResult check_transfer(const Transfer& tr, int max_degree)
{
    using X = Transfer::X;
    using XB = Transfer::XBasis;
    CheckResult r;
    const Cobar<SimplicialChains> OY(tr.ez().total());
    const Cobar<X> OX(tr.ez().tensor_complex());
    const auto of = tr.omega_f();
    const auto on = tr.omega_nabla();
    auto h = [&](const Lin<Word<Cell>>& x) { return map_linear(x, [&](const Word<Cell>& u) { return tr.omega_phi(u); }); };
    auto name = [](const auto& w, int n) { return "word of length " + std::to_string(w.size()) + " in degree " + std::to_string(n); };
    for (int n = 0; n <= max_degree; ++n) {
        for (const auto& w : OX.basis(n)) {
            ++r.checked;
            const auto nw = on(w);
            if (of(nw) != Lin<Word<XB>>(w)) r.fail("f nabla != 1 on " + name(w, n));
            if (!h(nw).is_zero()) r.fail("h nabla != 0 on " + name(w, n));
        }
        for (const auto& w : OY.basis(n)) {
            ++r.checked;
            const auto hw = tr.omega_phi(w);
            const auto lhs = differential(OY, hw) + h(OY.d(w));
            if (lhs != on(of(w)) - Lin<Word<Cell>>(w)) r.fail("dh + hd != nabla f - 1 on " + name(w, n));
            if (!of(hw).is_zero()) r.fail("f h != 0 on " + name(w, n));
            if (!h(hw).is_zero()) r.fail("h h != 0 on " + name(w, n));
        }
    }
    return r;
}

/// Ind f commutes with the cobar differentials on words of degree <= max_degree.
template <class C, class D>
CheckResult check_induced_chain_map(const Family<C, D>& f, int max_degree)
{
    CheckResult r;
    const auto I = ind(f);
    const Cobar<C> OS(f.source());
    const Cobar<D> OT(f.target());
    // d Ind and Ind d are both (Ind, Ind)-derivations, so generators suffice
    for (int n = 1; n <= max_degree; ++n)
        for (const auto& c : f.source().basis(n + 1)) {
            if (f.source().is_unit(c)) continue;
            ++r.checked;
            const auto w = letter(c);
            if (differential(OT, I(w)) != I(OS.d(w))) r.fail("d Ind != Ind d on a generator of degree " + std::to_string(n));
        }
    return r;
}

/// Basis element of C(K) v C(L): the shared unit, a cell of K, or a cell of L.
struct WedgeCell {
    enum Side { Unit = 0, Left = 1, Right = 2 };
    int side = Unit;
    Cell cell;
    auto operator<=>(const WedgeCell&) const = default;
};

inline std::string describe(const WedgeCell& w)
{
    return w.side == WedgeCell::Unit ? std::string("1") : (w.side == WedgeCell::Left ? "L" : "R") + describe(w.cell);
}

/// C(K) v C(L) for 0-reduced K, L: the positive parts of both over one unit.
class WedgeCoalgebra {
public:
    using Basis = WedgeCell;

    WedgeCoalgebra(SimplicialChains left, SimplicialChains right) : l_(std::move(left)), r_(std::move(right)) {}

    static WedgeCell left(const Cell& c) { return c.dim == 0 ? WedgeCell{} : WedgeCell{WedgeCell::Left, c}; }
    static WedgeCell right(const Cell& c) { return c.dim == 0 ? WedgeCell{} : WedgeCell{WedgeCell::Right, c}; }

    int degree(const WedgeCell& w) const { return w.side == WedgeCell::Unit ? 0 : w.cell.dim; }
    int top_degree() const { return std::max(l_.top_degree(), r_.top_degree()); }
    WedgeCell unit() const { return {}; }
    bool is_unit(const WedgeCell& w) const { return w.side == WedgeCell::Unit; }

    std::vector<WedgeCell> basis(int n) const
    {
        if (n == 0) return {unit()};
        std::vector<WedgeCell> out;
        for (const auto& c : l_.basis(n)) out.push_back(left(c));
        for (const auto& c : r_.basis(n)) out.push_back(right(c));
        return out;
    }

    Lin<WedgeCell> d(const WedgeCell& w) const
    {
        if (is_unit(w)) return {};
        const bool L = w.side == WedgeCell::Left;
        return map_linear((L ? l_ : r_).d(w.cell), [&](const Cell& c) { return Lin<WedgeCell>(L ? left(c) : right(c)); });
    }

    Lin<Pair<WedgeCell, WedgeCell>> coproduct(const WedgeCell& w) const
    {
        if (is_unit(w)) return Lin<Pair<WedgeCell, WedgeCell>>({unit(), unit()});
        const bool L = w.side == WedgeCell::Left;
        Lin<Pair<WedgeCell, WedgeCell>> out;
        for (const auto& [pr, a] : (L ? l_ : r_).coproduct(w.cell))
            out.add(L ? Pair<WedgeCell, WedgeCell>{left(pr.first), left(pr.second)}
                      : Pair<WedgeCell, WedgeCell>{right(pr.first), right(pr.second)},
                    a);
        return out;
    }

private:
    SimplicialChains l_, r_;
};

/// kappa : C(K) (x) C(L) -> C(K) v C(L); x (x) 1 -> x, 1 (x) y -> y, zero on x (x) y with |x|,|y| > 0.
inline Lin<WedgeCell> kappa(const Pair<Cell, Cell>& t)
{
    if (t.second.dim == 0) return Lin<WedgeCell>(WedgeCoalgebra::left(t.first));
    if (t.first.dim == 0) return Lin<WedgeCell>(WedgeCoalgebra::right(t.second));
    return {};
}

/// kappa applied to every tensor factor.
inline Lin<Word<WedgeCell>> kappa_tensor(const Lin<Word<Pair<Cell, Cell>>>& x)
{
    return map_linear(x, [](const Word<Pair<Cell, Cell>>& w) {
        std::vector<Lin<Word<WedgeCell>>> parts;
        for (const auto& t : w.letters)
            parts.push_back(map_linear(kappa(t), [](const WedgeCell& c) { return Lin<Word<WedgeCell>>(letter(c)); }));
        return detail::concat_all(parts);
    });
}

/// The family Fbar_k : C(K x L) -> (C(K) v C(L))^{(x)k}:
/// Fbar_1 = kappa f, Fbar_k = -sum_{i+j=k} (Fbar_i (x) Fbar_j) phi-hat with the sign of F_k.
class WedgeTransfer {
public:
    explicit WedgeTransfer(const EilenbergZilber& ez)
        : ez_(&ez), family_(ez.total(), WedgeCoalgebra(ez.left(), ez.right()), [this](const Cell& c, int k) {
              return compute(c, k);
          })
    {
    }
    WedgeTransfer(const WedgeTransfer&) = delete;
    WedgeTransfer& operator=(const WedgeTransfer&) = delete;

    const Family<SimplicialChains, WedgeCoalgebra>& family() const { return family_; }
    Family<SimplicialChains, WedgeCoalgebra>& family() { return family_; }
    Lin<Word<WedgeCell>> operator()(const Cell& c, int k) const { return family_(c, k); }

private:
    Lin<Word<WedgeCell>> compute(const Cell& c, int k) const
    {
        Lin<Word<WedgeCell>> out;
        if (k == 1) {
            for (const auto& [t, a] : ez_->f(c))
                for (const auto& [w, b] : kappa(t)) out.add(letter(w), a * b);
            return out;
        }
        const auto& T = ez_->total();
        for (const auto& [z, a] : ez_->phi(c))
            for (const auto& [pr, b] : reduced_coproduct(T, z))
                for (int i = 1; i < k; ++i) {
                    const auto lhs = family_(pr.first, i);
                    if (lhs.is_zero()) continue;
                    const auto rhs = family_(pr.second, k - i);
                    const Int s = -a * b * parity_sign(transfer_sign_exponent(i, k - i, pr.first.dim));
                    for (const auto& [u, cu] : lhs)
                        for (const auto& [v, cv] : rhs) out.add(concat(u, v), s * cu * cv);
                }
        return out;
    }

    const EilenbergZilber* ez_;
    Family<SimplicialChains, WedgeCoalgebra> family_;
};

/// Baues's sign exponent l(a) for 0 < a_1 < ... < a_m < n.
inline long long baues_exponent(const std::vector<int>& a, int n)
{
    const auto m = static_cast<long long>(a.size());
    if (m == 0) return 0;
    long long e = a[0] - 1;
    for (std::size_t i = 1; i < a.size(); ++i) e += static_cast<long long>(i) * (a[i] - a[i - 1] - 1);
    return e + m * (n - a.back() - 1);
}

/// Closed form of Fbar_k(x,y) for 1-reduced K, L: the sum over 0 < i_1 < ... < i_r < n of
/// y_{0 i_1 ... i_r n} (x) x_{0..i_1} (x) ... (x) x_{i_r..n}, where 1-simplices count as the unit
/// and only terms with exactly k nontrivial factors are kept.  The sign is
/// (-1)^{l(i) - (i_1 - 1)} times the desuspension sign of the kept factors times
/// (-1)^{(|y|-1) sum (|x_j|-1)}; it was fitted against the recursion, which disagrees with
/// the plain (-1)^{l(i)} exactly when x_{0..i_1} has even dimension.
inline Lin<Word<WedgeCell>> fbar_closed(const EilenbergZilber& ez, const Cell& c, int k)
{
    const auto& P = *ez.product();
    const auto& [x, y] = P.components(c);
    const int n = c.dim;
    Lin<Word<WedgeCell>> out;
    if (n < 2 || k < 1) return out;
    const WedgeCoalgebra W(ez.left(), ez.right());
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> idx;
        for (int i = 1; i < n; ++i)
            if (mask & (1u << (i - 1))) idx.push_back(i);
        std::vector<int> yv{0};
        yv.insert(yv.end(), idx.begin(), idx.end());
        yv.push_back(n);
        std::vector<int> cuts = yv;

        Word<WedgeCell> w;
        bool zero = false;
        int ydeg = 0;
        long long xdeg = 0;
        auto keep = [&](const Simplex& s, bool left_side) {
            if (s.dim() <= 1) return;
            if (s.degenerate()) {
                zero = true;
                return;
            }
            w.letters.push_back(left_side ? WedgeCoalgebra::left(s.gen) : WedgeCoalgebra::right(s.gen));
            if (left_side)
                xdeg += s.dim() - 1;
            else
                ydeg = s.dim() - 1;
        };
        keep(P.right()->sub_simplex(y, yv), false);
        for (std::size_t j = 0; j + 1 < cuts.size() && !zero; ++j) {
            std::vector<int> v;
            for (int t = cuts[j]; t <= cuts[j + 1]; ++t) v.push_back(t);
            keep(P.left()->sub_simplex(x, v), true);
        }
        if (zero || static_cast<int>(w.size()) != k) continue;
        const long long e = baues_exponent(idx, n) - (idx.empty() ? 0 : idx[0] - 1) + static_cast<long long>(ydeg) * xdeg;
        out.add(w, Int(parity_sign(e) * desuspension_sign(W, w)));
    }
    return out;
}

/// gamma : Omega(C v C') -> Omega C (x) Omega C', s^{-1}c -> s^{-1}c (x) 1, s^{-1}c' -> 1 (x) s^{-1}c'.
inline AlgebraMap<WedgeCell, TensorAlgebra<Cobar<SimplicialChains>, Cobar<SimplicialChains>>> gamma_map(
    const Cobar<SimplicialChains>& left, const Cobar<SimplicialChains>& right)
{
    using T = TensorAlgebra<Cobar<SimplicialChains>, Cobar<SimplicialChains>>;
    return {T(left, right), [](const WedgeCell& w) {
                Lin<T::Basis> out;
                if (w.side == WedgeCell::Left) out.add({letter(w.cell), {}}, 1);
                if (w.side == WedgeCell::Right) out.add({{}, letter(w.cell)}, 1);
                return out;
            }};
}

/// Fbar_k = kappa^{(x)k} F_k on every cell of degree <= max_degree.
inline CheckResult check_fbar_is_kappa_f(const EilenbergZilber& ez, int max_degree)
{
    CheckResult r;
    const Transfer tr(ez);
    const WedgeTransfer fb(ez);
    for (int n = 1; n <= max_degree; ++n)
        for (const auto& c : ez.total().basis(n))
            for (int k = 1; k <= n; ++k) {
                ++r.checked;
                if (fb(c, k) != kappa_tensor(tr.F(c, k))) r.fail("Fbar_" + std::to_string(k) + " != kappa F on " + describe(c));
            }
    return r;
}

/// (Fbar_i (x) Fbar_j) phi-hat = 0 for j >= 2, with phi-hat the full coproduct of phi.
inline CheckResult check_fbar_vanishing(const EilenbergZilber& ez, const WedgeTransfer& fb, int max_degree)
{
    CheckResult r;
    const auto& T = ez.total();
    for (int n = 1; n <= max_degree; ++n)
        for (const auto& c : T.basis(n)) {
            const auto ph = ez.phi(c);
            for (int k = 3; k <= n + 1; ++k)
                for (int j = 2; j < k; ++j) {
                    const int i = k - j;
                    ++r.checked;
                    Lin<Word<WedgeCell>> acc;
                    for (const auto& [z, a] : ph)
                        for (const auto& [pr, b] : T.coproduct(z)) {
                            const auto lhs = fb(pr.first, i);
                            if (lhs.is_zero()) continue;
                            const Int s = a * b * parity_sign(transfer_sign_exponent(i, j, pr.first.dim));
                            for (const auto& [u, cu] : lhs)
                                for (const auto& [v, cv] : fb(pr.second, j)) acc.add(concat(u, v), s * cu * cv);
                        }
                    if (!acc.is_zero())
                        r.fail("(Fbar_" + std::to_string(i) + " (x) Fbar_" + std::to_string(j) + ") phi-hat != 0 on " +
                               describe(c));
                }
        }
    return r;
}

/// Closed form = recursion for every k on every cell of degree <= max_degree.
inline CheckResult check_fbar_closed(const EilenbergZilber& ez, const WedgeTransfer& fb, int max_degree)
{
    CheckResult r;
    for (int n = 2; n <= max_degree; ++n)
        for (const auto& c : ez.total().basis(n))
            for (int k = 1; k <= n + 1; ++k) {
                ++r.checked;
                if (fb(c, k) != fbar_closed(ez, c, k))
                    r.fail("closed form != recursion for k = " + std::to_string(k) + " on " + describe(c));
            }
    return r;
}

/// One term phi^{A,B}(x,y) = (s_{A u {m}} x_{0..r}, s_B y_{0..m r..n}) of the homotopy.
struct HomotopyTerm {
    int m = 0, r = 0;
    std::vector<int> A, B;
    Simplex x, y;
};

/// All terms phi^{A,B}(x,y) for m < r <= n, A u B = [m+1, n], |B| = r - m.
inline std::vector<HomotopyTerm> homotopy_terms(const ProductSet& P, const Simplex& x, const Simplex& y)
{
    std::vector<HomotopyTerm> out;
    const int n = x.dim();
    auto degen = [](Simplex s, std::vector<int> set) {
        std::sort(set.begin(), set.end());
        for (int j : set) s = apply_degeneracy(j, s);
        return s;
    };
    for (int m = 0; m < n; ++m)
        for (int r = m + 1; r <= n; ++r) {
            std::vector<std::vector<int>> Bs;
            detail::subsets_of_size(n - m, r - m, Bs);
            for (const auto& b0 : Bs) {
                HomotopyTerm t{m, r, {}, {}, {}, {}};
                std::vector<bool> inB(static_cast<std::size_t>(n + 1), false);
                for (int j : b0) inB[static_cast<std::size_t>(j + m + 1)] = true;
                for (int j = m + 1; j <= n; ++j) (inB[static_cast<std::size_t>(j)] ? t.B : t.A).push_back(j);
                std::vector<int> xv, yv;
                for (int j = 0; j <= r; ++j) xv.push_back(j);
                for (int j = 0; j <= m; ++j) yv.push_back(j);
                for (int j = r; j <= n; ++j) yv.push_back(j);
                auto Am = t.A;
                Am.push_back(m);
                t.x = degen(P.left()->sub_simplex(x, xv), Am);
                t.y = degen(P.right()->sub_simplex(y, yv), t.B);
                out.push_back(std::move(t));
            }
        }
    return out;
}

/// phi(x,y) is supported on the terms phi^{A,B}(x,y), with coefficients bounded by their multiplicity.
inline CheckResult check_homotopy_terms(const EilenbergZilber& ez, int max_degree)
{
    CheckResult r;
    const auto& P = *ez.product();
    const auto& T = ez.total();
    for (int n = 1; n <= max_degree; ++n)
        for (const auto& c : T.basis(n)) {
            ++r.checked;
            const auto& [x, y] = P.components(c);
            std::map<Cell, int> mult;
            for (const auto& t : homotopy_terms(P, x, y)) {
                const Simplex s = P.make(t.x, t.y);
                if (!s.degenerate()) ++mult[s.gen];
            }
            for (const auto& [z, a] : ez.phi(c))
                if (auto it = mult.find(z); it == mult.end() || abs(a) > it->second)
                    r.fail("phi term outside the explicit formula on " + describe(c));
        }
    return r;
}

/// The evaluation and vanishing cases of Fbar_1 and phi on front and back faces of phi^{A,B}(x,y).
inline CheckResult check_face_lemma(const EilenbergZilber& ez, int max_degree)
{
    CheckResult r;
    const auto& P = *ez.product();
    const auto& T = ez.total();
    const WedgeCoalgebra W(ez.left(), ez.right());
    auto chain = [&](const Simplex& a, const Simplex& b) {
        const Simplex s = P.make(a, b);
        return s.degenerate() ? Lin<Cell>{} : Lin<Cell>(s.gen);
    };
    auto fbar1 = [&](const Lin<Cell>& z) {
        return map_linear(z, [&](const Cell& c) {
            Lin<WedgeCell> out;
            for (const auto& [t, a] : ez.f(c)) out.add_scaled(kappa(t), a);
            return out;
        });
    };
    auto phi = [&](const Lin<Cell>& z) {
        return map_linear(z, [&](const Cell& c) { return c.dim + 1 <= P.full_dim() ? ez.phi(c) : Lin<Cell>{}; });
    };
    auto side = [](const Simplex& s, bool left) {
        if (s.degenerate()) return Lin<WedgeCell>{};
        return Lin<WedgeCell>(left ? WedgeCoalgebra::left(s.gen) : WedgeCoalgebra::right(s.gen));
    };
    auto within = [](const std::vector<int>& set, int lo, int hi) {
        for (int j = lo; j <= hi; ++j)
            if (std::find(set.begin(), set.end(), j) == set.end()) return false;
        return true;
    };
    for (int n = 1; n <= max_degree; ++n)
        for (const auto& c : T.basis(n)) {
            const auto& [x, y] = P.components(c);
            for (const auto& t : homotopy_terms(P, x, y)) {
                const auto& K = *P.left();
                const auto& L = *P.right();
                const int m = t.m, rr = t.r;
                auto where = [&](const std::string& what, int l) {
                    return what + " at l = " + std::to_string(l) + ", m = " + std::to_string(m) + ", r = " +
                           std::to_string(rr) + " on " + describe(c);
                };
                for (int l = 0; l <= n + 1; ++l) {
                    ++r.checked;
                    const auto front = chain(K.front(t.x, l), L.front(t.y, l));
                    const auto back = chain(K.back(t.x, l), L.back(t.y, l));
                    Lin<WedgeCell> ef, eb;
                    if (l == 0)
                        ef = Lin<WedgeCell>(W.unit());
                    else if (l <= m)
                        ef = side(K.front(x, l), true) + side(L.front(y, l), false);
                    else if (within(t.A, m + 1, l - 1)) {
                        std::vector<int> v;
                        for (int j = 0; j <= m; ++j) v.push_back(j);
                        for (int j = rr; j <= rr - m + l - 1; ++j) v.push_back(j);
                        ef = side(L.sub_simplex(y, v), false);
                    }
                    if (l == n + 1)
                        eb = Lin<WedgeCell>(W.unit());
                    else if (l > m && within(t.B, l, n)) {
                        std::vector<int> v;
                        for (int j = rr - n + l - 1; j <= rr; ++j) v.push_back(j);
                        eb = side(K.sub_simplex(x, v), true);
                    } else if (l > m && within(t.A, l, n)) {
                        std::vector<int> v;
                        for (int j = l - 1; j <= n; ++j) v.push_back(j);
                        eb = side(L.sub_simplex(y, v), false);
                    }
                    if (fbar1(front) != ef) r.fail(where("Fbar_1 of the front face", l));
                    if (fbar1(back) != eb) r.fail(where("Fbar_1 of the back face", l));
                    if (l > m && !within(t.A, m + 1, l - 1) && !phi(front).is_zero()) r.fail(where("phi of the front face", l));
                    if (!phi(back).is_zero()) r.fail(where("phi of the back face", l));
                }
            }
        }
    return r;
}

} // namespace awcobar
