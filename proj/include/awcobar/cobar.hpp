#pragma once

#include "awcobar/chains.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

namespace awcobar {

/// A word s^{-1}c_1 ... s^{-1}c_k in a free tensor algebra; empty is the unit.
template <class B>
struct Word {
    std::vector<B> letters;
    auto operator<=>(const Word&) const = default;
    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }
};

template <class B>
Word<B> letter(const B& b)
{
    return Word<B>{{b}};
}

template <class B>
Word<B> concat(const Word<B>& a, const Word<B>& b)
{
    Word<B> out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

/// Product of two elements of an algebra with basis-level `multiply`.
template <class A>
Lin<typename A::Basis> multiply(const A& alg, const Lin<typename A::Basis>& x, const Lin<typename A::Basis>& y)
{
    Lin<typename A::Basis> out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) out.add_scaled(alg.multiply(a, b), ca * cb);
    return out;
}

/// The cobar construction on a simply-connected chain coalgebra.
template <class C>
class Cobar {
public:
    using Coalgebra = C;
    using Letter = typename C::Basis;
    using Basis = Word<Letter>;

    explicit Cobar(C coalg) : c_(std::move(coalg))
    {
        if (c_.basis(0).size() != 1 || !c_.basis(1).empty())
            throw PreconditionError("cobar construction needs a simply-connected coalgebra (C_0 = Z, C_1 = 0)");
    }

    const C& coalgebra() const { return c_; }
    int letter_degree(const Letter& l) const { return c_.degree(l) - 1; }
    int degree(const Basis& w) const
    {
        int n = 0;
        for (const auto& l : w.letters) n += letter_degree(l);
        return n;
    }
    Basis unit() const { return {}; }
    Lin<Basis> multiply(const Basis& a, const Basis& b) const { return Lin<Basis>(concat(a, b)); }

    /// All words of total degree n.
    std::vector<Basis> basis(int n) const
    {
        std::vector<Basis> out;
        Basis cur;
        auto rec = [&](auto&& self, int left) -> void {
            if (left == 0) {
                out.push_back(cur);
                return;
            }
            for (int k = 1; k <= left; ++k)
                for (const auto& c : c_.basis(k + 1)) {
                    cur.letters.push_back(c);
                    self(self, left - k);
                    cur.letters.pop_back();
                }
        };
        rec(rec, n);
        return out;
    }

    /// d(s^{-1}c) = -s^{-1}dc + sum (-1)^{|c'|} s^{-1}c' s^{-1}c'' over the reduced coproduct.
    const Lin<Basis>& d_letter(const Letter& c) const
    {
        {
            std::shared_lock lock(cache_->mutex);
            if (auto it = cache_->d.find(c); it != cache_->d.end()) return it->second;
        }
        Lin<Basis> out;
        for (const auto& [e, k] : c_.d(c))
            if (!c_.is_unit(e)) out.add(letter(e), Int(-k));
        for (const auto& [t, k] : reduced_coproduct(c_, c))
            out.add(Basis{{t.first, t.second}}, k * parity_sign(c_.degree(t.first)));
        std::unique_lock lock(cache_->mutex);
        return cache_->d.try_emplace(c, std::move(out)).first->second;
    }

    /// Derivation extension with the Koszul sign.
    Lin<Basis> d(const Basis& w) const
    {
        Lin<Basis> out;
        int prefix = 0;
        for (std::size_t i = 0; i < w.letters.size(); ++i) {
            const int s = parity_sign(prefix);
            for (const auto& [mid, k] : d_letter(w.letters[i])) {
                Basis x;
                x.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<long>(i));
                x.letters.insert(x.letters.end(), mid.letters.begin(), mid.letters.end());
                x.letters.insert(x.letters.end(), w.letters.begin() + static_cast<long>(i) + 1, w.letters.end());
                out.add(x, k * s);
            }
            prefix += letter_degree(w.letters[i]);
        }
        return out;
    }

private:
    struct Cache {
        std::shared_mutex mutex;
        std::map<Letter, Lin<Basis>> d;
    };
    C c_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Tensor product of two chain algebras: (a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb'.
template <class A1, class A2>
class TensorAlgebra {
public:
    using Basis = Pair<typename A1::Basis, typename A2::Basis>;

    TensorAlgebra(const A1& a, const A2& b) : a_(a), b_(b) {}

    const A1& left() const { return a_; }
    const A2& right() const { return b_; }
    int degree(const Basis& x) const { return a_.degree(x.first) + b_.degree(x.second); }
    Basis unit() const { return {a_.unit(), b_.unit()}; }

    Lin<Basis> multiply(const Basis& x, const Basis& y) const
    {
        const int s = koszul(b_.degree(x.second), a_.degree(y.first));
        Lin<Basis> out = tensor(a_.multiply(x.first, y.first), b_.multiply(x.second, y.second));
        return out * Int(s);
    }

    Lin<Basis> d(const Basis& x) const
    {
        Lin<Basis> out = tensor(a_.d(x.first), Lin<typename A2::Basis>(x.second));
        out.add_scaled(tensor(Lin<typename A1::Basis>(x.first), b_.d(x.second)), parity_sign(a_.degree(x.first)));
        return out;
    }

    std::vector<Basis> basis(int n) const
    {
        std::vector<Basis> out;
        for (int p = 0; p <= n; ++p)
            for (const auto& x : a_.basis(p))
                for (const auto& y : b_.basis(n - p)) out.push_back({x, y});
        return out;
    }

private:
    A1 a_;
    A2 b_;
};

template <class A>
Lin<typename A::Basis> differential(const A& alg, const Lin<typename A::Basis>& x)
{
    return map_linear(x, [&](const auto& b) { return alg.d(b); });
}

/// Multiplicative extension of generator images to a word.
template <class Target, class Letter, class F>
Lin<typename Target::Basis> extend_multiplicatively(const Target& target, F&& on_letter, const Word<Letter>& w)
{
    Lin<typename Target::Basis> out(target.unit());
    for (const auto& l : w.letters) {
        if (out.is_zero()) break;
        out = multiply(target, out, on_letter(l));
    }
    return out;
}

/// Algebra map out of a free tensor algebra, given by its values on letters.
template <class Letter, class Target>
class AlgebraMap {
public:
    using Image = Lin<typename Target::Basis>;
    using Generators = std::function<Image(const Letter&)>;

    AlgebraMap(Target target, Generators gens) : target_(std::move(target)), gens_(std::move(gens)) {}

    const Target& target() const { return target_; }
    Image on_letter(const Letter& l) const { return gens_(l); }
    Image operator()(const Word<Letter>& w) const { return extend_multiplicatively(target_, gens_, w); }
    Image operator()(const Lin<Word<Letter>>& x) const
    {
        return map_linear(x, [&](const Word<Letter>& w) { return (*this)(w); });
    }

private:
    Target target_;
    Generators gens_;
};

/// Value of an (f,g)-derivation h of degree p on a word:
/// sum_i (-1)^{p |l_1..l_{i-1}|} f(l_1..l_{i-1}) h(l_i) g(l_{i+1}..l_n).
template <class Target, class Letter>
Lin<typename Target::Basis> apply_derivation(const Target& target,
                                             const std::function<int(const Letter&)>& letter_degree,
                                             const std::function<Lin<typename Target::Basis>(const Word<Letter>&)>& f,
                                             const std::function<Lin<typename Target::Basis>(const Letter&)>& h,
                                             const std::function<Lin<typename Target::Basis>(const Word<Letter>&)>& g,
                                             int p, const Word<Letter>& w)
{
    Lin<typename Target::Basis> out;
    int prefix = 0;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        Word<Letter> left, right;
        left.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<long>(i));
        right.letters.assign(w.letters.begin() + static_cast<long>(i) + 1, w.letters.end());
        auto mid = h(w.letters[i]);
        if (!mid.is_zero()) {
            auto term = multiply(target, multiply(target, f(left), mid), g(right));
            out.add_scaled(term, Int(parity_sign(static_cast<long long>(p) * prefix)));
        }
        prefix += letter_degree(w.letters[i]);
    }
    return out;
}

/// Omega of a coalgebra map: s^{-1}c -> s^{-1} f(c).
template <class C1, class C2>
AlgebraMap<typename C1::Basis, Cobar<C2>> cobar_map(const Cobar<C2>& target,
                                                    LinearMap<typename C1::Basis, typename C2::Basis> f)
{
    return AlgebraMap<typename C1::Basis, Cobar<C2>>(target, [f, coalg = target.coalgebra()](const typename C1::Basis& c) {
        Lin<Word<typename C2::Basis>> out;
        for (const auto& [e, k] : f(c))
            if (!coalg.is_unit(e)) out.add(letter(e), k);
        return out;
    });
}

/// Degree -1 map from the positive part of a coalgebra into an algebra.
template <class C, class A>
struct TwistingCochain {
    C coalgebra;
    A algebra;
    std::function<Lin<typename A::Basis>(const typename C::Basis&)> table;

    Lin<typename A::Basis> operator()(const typename C::Basis& c) const
    {
        return coalgebra.is_unit(c) ? Lin<typename A::Basis>{} : table(c);
    }
};

/// The canonical cochain c -> s^{-1}c into the cobar construction.
template <class C>
TwistingCochain<C, Cobar<C>> canonical_cochain(const Cobar<C>& omega)
{
    return {omega.coalgebra(), omega, [](const typename C::Basis& c) { return Lin<Word<typename C::Basis>>(letter(c)); }};
}

struct TwistingReport {
    bool ok = true;
    std::string witness;
};

/// Checks dt + td = mu (t (x) t) Delta, where (t (x) t)(c' (x) c'') = (-1)^{|c'|} t(c') t(c'').
template <class C, class A>
TwistingReport check_twisting_cochain(const TwistingCochain<C, A>& t, int max_degree,
                                      const std::function<std::string(const typename C::Basis&)>& name = nullptr)
{
    TwistingReport rep;
    const auto& C_ = t.coalgebra;
    const auto& A_ = t.algebra;
    for (int n = 1; n <= max_degree; ++n)
        for (const auto& c : C_.basis(n)) {
            auto lhs = differential(A_, t(c)) + map_linear(C_.d(c), [&](const auto& e) { return t(e); });
            Lin<typename A::Basis> rhs;
            for (const auto& [pr, k] : C_.coproduct(c)) {
                auto a = t(pr.first);
                if (a.is_zero()) continue;
                rhs.add_scaled(multiply(A_, a, t(pr.second)), k * parity_sign(C_.degree(pr.first)));
            }
            if (lhs != rhs) {
                rep.ok = false;
                rep.witness = "twisting condition fails in degree " + std::to_string(n) +
                              (name ? " on " + name(c) : std::string{});
                return rep;
            }
        }
    return rep;
}

/// Algebra map Omega C -> A determined by a twisting cochain.
template <class C, class A>
AlgebraMap<typename C::Basis, A> cochain_to_algebra_map(const TwistingCochain<C, A>& t)
{
    return AlgebraMap<typename C::Basis, A>(t.algebra, [t](const typename C::Basis& c) { return t(c); });
}

/// t * t' on C (x) C': (x (x) 1) -> t(x) (x) 1, (1 (x) y) -> 1 (x) t'(y), zero on mixed terms.
template <class C1, class A1, class C2, class A2>
TwistingCochain<TensorComplex<C1, C2>, TensorAlgebra<A1, A2>> cartesian_product(const TwistingCochain<C1, A1>& t,
                                                                                  const TwistingCochain<C2, A2>& u)
{
    TensorComplex<C1, C2> C(t.coalgebra, u.coalgebra);
    TensorAlgebra<A1, A2> A(t.algebra, u.algebra);
    auto table = [t, u](const Pair<typename C1::Basis, typename C2::Basis>& x) {
        Lin<Pair<typename A1::Basis, typename A2::Basis>> out;
        const bool unit1 = t.coalgebra.is_unit(x.first), unit2 = u.coalgebra.is_unit(x.second);
        if (unit2 && !unit1) out = tensor(t(x.first), Lin<typename A2::Basis>(u.algebra.unit()));
        if (unit1 && !unit2) out = tensor(Lin<typename A1::Basis>(t.algebra.unit()), u(x.second));
        return out;
    };
    return {C, A, table};
}

/// Milgram's map Omega(C (x) C') -> Omega C (x) Omega C'.
template <class C1, class C2>
AlgebraMap<Pair<typename C1::Basis, typename C2::Basis>, TensorAlgebra<Cobar<C1>, Cobar<C2>>> milgram_q(
    const Cobar<C1>& a, const Cobar<C2>& b)
{
    using Target = TensorAlgebra<Cobar<C1>, Cobar<C2>>;
    Target T(a, b);
    return {T, [ca = a.coalgebra(), cb = b.coalgebra()](const Pair<typename C1::Basis, typename C2::Basis>& x) {
                Lin<typename Target::Basis> out;
                const bool u1 = ca.is_unit(x.first), u2 = cb.is_unit(x.second);
                if (u2 && !u1) out.add({letter(x.first), {}}, 1);
                if (u1 && !u2) out.add({{}, letter(x.second)}, 1);
                return out;
            }};
}

/// Twisted tensor product A (x)_t C with
/// D_t(a (x) c) = da (x) c + (-1)^{|a|} a (x) dc + (-1)^{|a|} sum a t(c') (x) c''.
/// This sign of the twisting term is the one compatible with
/// dt + td = mu (t (x) t) Delta; the opposite sign breaks D_t^2 = 0.
template <class C, class A>
class TwistedTensor {
public:
    using Basis = Pair<typename A::Basis, typename C::Basis>;

    explicit TwistedTensor(TwistingCochain<C, A> t) : t_(std::move(t)) {}

    int degree(const Basis& x) const { return t_.algebra.degree(x.first) + t_.coalgebra.degree(x.second); }

    std::vector<Basis> basis(int n) const
    {
        std::vector<Basis> out;
        for (int p = 0; p <= n; ++p)
            for (const auto& a : t_.algebra.basis(p))
                for (const auto& c : t_.coalgebra.basis(n - p)) out.push_back({a, c});
        return out;
    }

    Lin<Basis> d(const Basis& x) const
    {
        const auto& A_ = t_.algebra;
        const auto& C_ = t_.coalgebra;
        const int sa = parity_sign(A_.degree(x.first));
        Lin<Basis> out = tensor(A_.d(x.first), Lin<typename C::Basis>(x.second));
        out.add_scaled(tensor(Lin<typename A::Basis>(x.first), C_.d(x.second)), sa);
        for (const auto& [pr, k] : C_.coproduct(x.second)) {
            auto tc = t_(pr.first);
            if (tc.is_zero()) continue;
            auto prod = multiply(A_, Lin<typename A::Basis>(x.first), tc);
            out.add_scaled(tensor(prod, Lin<typename C::Basis>(pr.second)), k * Int(sa));
        }
        return out;
    }

private:
    TwistingCochain<C, A> t_;
};

} // namespace awcobar
