#pragma once

#include "awcobar/chains.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace awcobar {

/// Order-preserving vertex map [0,m] -> [0,n]; acts contravariantly on simplices.
using VertexMap = std::vector<int>;
/// A pair of simplicial operators acting on the two factors of a product.
using BiOperator = Pair<VertexMap, VertexMap>;

/// Index shift on simplicial operators: raise every face and
/// degeneracy index up by one.
inline VertexMap shift(const VertexMap& eta)
{
    VertexMap out{0};
    for (int v : eta) out.push_back(v + 1);
    return out;
}

/// Vertex map of the surjection [0,n] -> [0,n-|rep|] repeating at each position in `rep`.
inline VertexMap degeneracy_map(int n, const std::vector<int>& rep)
{
    VertexMap out(n + 1);
    for (int k = 0; k <= n; ++k) {
        int below = 0;
        for (int v : rep) below += v < k ? 1 : 0;
        out[k] = k - below;
    }
    return out;
}

/// Sign of the shuffle whose first block occupies positions `mu` (sorted):
/// (-1)^{sum (mu_i - (i-1))}.
inline int shuffle_sign(const std::vector<int>& mu)
{
    long long s = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) s += mu[i] - static_cast<long long>(i);
    return parity_sign(s);
}

inline std::vector<int> complement(int n, const std::vector<int>& set)
{
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (std::find(set.begin(), set.end(), v) == set.end()) out.push_back(v);
    return out;
}

/// Operator-level description of g = nabla f and of the recursive homotopy.
/// Tables are independent of the spaces; they are built lazily and memoized.
class HomotopyOperators {
public:
    /// g_n as a combination of bi-operators [0,n] -> [0,n].
    Lin<BiOperator> g(int n) const
    {
        Lin<BiOperator> out;
        for (int l = 0; l <= n; ++l) {
            std::vector<std::vector<int>> mus;
            detail::subsets_of_size(n, l, mus);
            for (const auto& mu : mus) {
                const auto nu = complement(n, mu);
                VertexMap alpha = degeneracy_map(n, nu);
                VertexMap beta = degeneracy_map(n, mu);
                for (int& v : beta) v += l;
                out.add({alpha, beta}, shuffle_sign(mu));
            }
        }
        return out;
    }

    /// phi_n = -(g_n)' s_0 + (phi_{n-1})', as bi-operators [0,n+1] -> [0,n], normalized.
    /// The prime is the signed shift h' = -shift(h); with it the recursion
    /// gives d phi + phi d = nabla f - 1.
    const Lin<BiOperator>& phi(int n) const
    {
        {
            std::shared_lock lock(mutex_);
            if (auto it = phi_.find(n); it != phi_.end()) return it->second;
        }
        Lin<BiOperator> out;
        if (n > 0) {
            const VertexMap s0 = degeneracy_map(n + 1, {0});
            for (const auto& [op, c] : g(n))
                out.add({compose_after(s0, shift(op.first)), compose_after(s0, shift(op.second))}, c);
            for (const auto& [op, c] : phi(n - 1)) out.add({shift(op.first), shift(op.second)}, Int(-c));
        }
        out = filter(out, [](const BiOperator& op) { return !jointly_degenerate(op); });
        std::unique_lock lock(mutex_);
        return phi_.try_emplace(n, std::move(out)).first->second;
    }

    /// Test hook: the stored table for phi_n (forces construction).
    Lin<BiOperator>& mutable_phi(int n)
    {
        phi(n);
        std::unique_lock lock(mutex_);
        return phi_.at(n);
    }

    /// Both components repeat the same vertex: the product simplex is degenerate
    /// for every input, so the term vanishes in normalized chains.  Shifting and
    /// composing with s_0 preserve this, so such terms are never stored.
    static bool jointly_degenerate(const BiOperator& op)
    {
        for (std::size_t j = 0; j + 1 < op.first.size(); ++j)
            if (op.first[j] == op.first[j + 1] && op.second[j] == op.second[j + 1]) return true;
        return false;
    }

private:
    /// Vertex map of "apply `first`, then operator with vertex map `then`".
    static VertexMap compose_after(const VertexMap& first, const VertexMap& then)
    {
        VertexMap out(then.size());
        for (std::size_t k = 0; k < then.size(); ++k) out[k] = first[then[k]];
        return out;
    }

    mutable std::shared_mutex mutex_;
    mutable std::map<int, Lin<BiOperator>> phi_;
};

/// The Eilenberg-Zilber strong deformation retract
/// C(K) (x) C(L) <-> C(K x L) with homotopy phi.
class EilenbergZilber {
public:
    using XBasis = Pair<Cell, Cell>;
    using X = TensorComplex<SimplicialChains, SimplicialChains>;

    explicit EilenbergZilber(ProductPtr P, std::shared_ptr<HomotopyOperators> ops = nullptr)
        : P_(std::move(P)),
          CK_(P_->left()),
          CL_(P_->right()),
          CP_(P_->set()),
          X_(CK_, CL_),
          ops_(ops ? std::move(ops) : std::make_shared<HomotopyOperators>())
    {
    }

    const ProductPtr& product() const { return P_; }
    const SimplicialChains& left() const { return CK_; }
    const SimplicialChains& right() const { return CL_; }
    const SimplicialChains& total() const { return CP_; }
    const X& tensor_complex() const { return X_; }
    HomotopyOperators& operators() const { return *ops_; }

    /// Shuffle map: sum over (p,q)-shuffles of sgn (s_nu x, s_mu y), |mu| = p.
    Lin<Cell> nabla(const XBasis& t) const
    {
        const int p = t.first.dim, q = t.second.dim, n = p + q;
        Lin<Cell> out;
        if (n > P_->max_dim()) throw PreconditionError("nabla: degree beyond product bound");
        std::vector<std::vector<int>> mus;
        detail::subsets_of_size(n, p, mus);
        for (const auto& mu : mus) {
            const Simplex s = P_->make(degenerate_at(t.first, complement(n, mu)), degenerate_at(t.second, mu));
            if (!s.degenerate()) out.add(s.gen, shuffle_sign(mu));
        }
        return out;
    }

    /// Alexander-Whitney map: sum over l of a_{0..l} (x) b_{l..n}.
    Lin<XBasis> f(const Cell& c) const
    {
        const auto& [a, b] = P_->components(c);
        Lin<XBasis> out;
        for (int l = 0; l <= c.dim; ++l) {
            const Simplex x = P_->left()->front(a, l), y = P_->right()->back(b, l);
            if (!x.degenerate() && !y.degenerate()) out.add({x.gen, y.gen}, 1);
        }
        return out;
    }

    /// Homotopy from the operator recursion.
    Lin<Cell> phi(const Cell& c) const
    {
        {
            std::shared_lock lock(mutex_);
            if (auto it = phi_cache_.find(c); it != phi_cache_.end()) return it->second;
        }
        Lin<Cell> out;
        if (c.dim + 1 > P_->max_dim() && c.dim + 1 <= P_->full_dim())
            throw PreconditionError("phi: degree beyond product bound");
        if (c.dim + 1 <= P_->max_dim()) {
            const auto& [a, b] = P_->components(c);
            for (const auto& [op, coeff] : ops_->phi(c.dim)) {
                const Simplex x = P_->left()->apply_operator(a, op.first);
                const Simplex y = P_->right()->apply_operator(b, op.second);
                const Simplex s = P_->make(x, y);
                if (!s.degenerate()) out.add(s.gen, coeff);
            }
        }
        std::unique_lock lock(mutex_);
        return phi_cache_.try_emplace(c, std::move(out)).first->second;
    }

    /// Explicit formula: sum over m < r and A u B = [m+1,n], |A| = n-r,
    /// |B| = r-m of (-1)^m sgn(B-(m+1)) (s_{A u {m}} x_{0..r}, s_B y_{0..m r..n}).
    Lin<Cell> phi_closed(const Cell& c) const
    {
        const int n = c.dim;
        Lin<Cell> out;
        if (n + 1 > P_->max_dim() && n + 1 <= P_->full_dim())
            throw PreconditionError("phi: degree beyond product bound");
        if (n + 1 > P_->max_dim()) return out;
        const auto& [a, b] = P_->components(c);
        const auto& K = *P_->left();
        const auto& L = *P_->right();
        for (int m = 0; m < n; ++m)
            for (int r = m + 1; r <= n; ++r) {
                std::vector<std::vector<int>> Bs;
                detail::subsets_of_size(n - m, r - m, Bs);
                for (auto B : Bs) {
                    for (int& v : B) v += m + 1;
                    std::vector<int> A;
                    for (int v = m + 1; v <= n; ++v)
                        if (std::find(B.begin(), B.end(), v) == B.end()) A.push_back(v);
                    std::vector<int> Am = A;
                    Am.insert(Am.begin(), m);
                    Simplex x = K.front(a, r);
                    for (int v : Am) x = apply_degeneracy(v, x);
                    std::vector<int> verts;
                    for (int v = 0; v <= m; ++v) verts.push_back(v);
                    for (int v = r; v <= n; ++v) verts.push_back(v);
                    Simplex y = L.sub_simplex(b, verts);
                    for (int v : B) y = apply_degeneracy(v, y);
                    std::vector<int> mu;
                    for (int v : B) mu.push_back(v - (m + 1));
                    const Simplex s = P_->make(x, y);
                    if (!s.degenerate()) out.add(s.gen, parity_sign(m) * shuffle_sign(mu));
                }
            }
        return out;
    }

    /// Test hook: the stored value phi(c) (forces evaluation).
    Lin<Cell>& mutable_phi_value(const Cell& c)
    {
        phi(c);
        std::unique_lock lock(mutex_);
        return phi_cache_.at(c);
    }

    /// Drops cached phi values (after mutating the operator table).
    void clear_cache() const
    {
        std::unique_lock lock(mutex_);
        phi_cache_.clear();
    }

private:
    ProductPtr P_;
    SimplicialChains CK_, CL_, CP_;
    X X_;
    std::shared_ptr<HomotopyOperators> ops_;
    mutable std::shared_mutex mutex_;
    mutable std::map<Cell, Lin<Cell>> phi_cache_;
};

/// The SDR identities of Eilenberg-Zilber data, on every basis element of
/// degree <= max_degree.
inline CheckResult check_sdr(const EilenbergZilber& ez, int max_degree)
{
    CheckResult res;
    const auto& X = ez.tensor_complex();
    const auto& Y = ez.total();
    const int top = std::min(max_degree, Y.top_degree());
    auto nabla = [&](const auto& t) { return ez.nabla(t); };
    auto f = [&](const Cell& c) { return ez.f(c); };
    auto phi = [&](const Cell& c) { return ez.phi(c); };
    for (int n = 0; n <= top; ++n) {
        for (const auto& t : X.basis(n)) {
            ++res.checked;
            if (map_linear(nabla(t), f) != Lin<EilenbergZilber::XBasis>(t)) res.fail("f nabla != 1 on " + describe(t));
            if (n + 1 <= top && !map_linear(nabla(t), phi).is_zero()) res.fail("phi nabla != 0 on " + describe(t));
        }
        for (const auto& c : Y.basis(n)) {
            ++res.checked;
            Lin<Cell> lhs = boundary(Y, phi(c)) + map_linear(Y.d(c), phi);
            Lin<Cell> rhs = map_linear(f(c), nabla) - Lin<Cell>(c);
            if (lhs != rhs) res.fail("d phi + phi d != nabla f - 1 on " + describe(c));
            if (!map_linear(phi(c), f).is_zero()) res.fail("f phi != 0 on " + describe(c));
            if (!map_linear(phi(c), phi).is_zero()) res.fail("phi phi != 0 on " + describe(c));
        }
    }
    return res;
}

/// Term-by-term comparison of the explicit and recursive homotopies.
inline CheckResult check_phi_closed(const EilenbergZilber& ez, int max_degree)
{
    CheckResult res;
    const auto& Y = ez.total();
    for (int n = 0; n <= std::min(max_degree, Y.top_degree()); ++n)
        for (const auto& c : Y.basis(n)) {
            ++res.checked;
            if (ez.phi(c) != ez.phi_closed(c)) res.fail("closed form != recursion on " + describe(c));
        }
    return res;
}

enum class AdjustFormula {
    /// (nabla f - 1) phi' (nabla f - 1) d (nabla f - 1) phi' (nabla f - 1), as usually quoted.
    Literal,
    /// The negative of the literal formula; satisfies d phi + phi d = nabla f - 1.
    SignCorrected,
};

/// Repairs a homotopy phi' with d phi' + phi' d = nabla f - 1 into one that
/// also satisfies the side conditions. Throws if phi' fails the homotopy
/// identity on the basis up to max_degree.
template <class Y, class XB>
LinearMap<typename Y::Basis, typename Y::Basis> sdr_adjust(const Y& complex,
                                                           LinearMap<XB, typename Y::Basis> nabla,
                                                           LinearMap<typename Y::Basis, XB> f,
                                                           LinearMap<typename Y::Basis, typename Y::Basis> phi_prime,
                                                           int max_degree,
                                                           AdjustFormula formula = AdjustFormula::SignCorrected)
{
    using B = typename Y::Basis;
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& c : complex.basis(n)) {
            Lin<B> lhs = boundary(complex, phi_prime(c)) + map_linear(complex.d(c), phi_prime);
            Lin<B> rhs = map_linear(f(c), nabla) - Lin<B>(c);
            if (lhs != rhs)
                throw PreconditionError("sdr_adjust: d phi' + phi' d != nabla f - 1 in degree " + std::to_string(n));
        }
    const Int sign = formula == AdjustFormula::Literal ? 1 : -1;
    return [complex, nabla, f, phi_prime, sign](const B& c) {
        auto P = [&](const Lin<B>& x) { return map_linear(map_linear(x, f), nabla) - x; };
        auto half = [&](const Lin<B>& x) { return P(map_linear(P(x), phi_prime)); };
        Lin<B> out = half(boundary(complex, half(Lin<B>(c))));
        return out * sign;
    };
}

} // namespace awcobar
