#pragma once

// Coproducts on the cobar construction of a 1-reduced simplicial set: the
// Alexander-Whitney cobar diagonal (built from the transferred Eilenberg-Zilber
// data) and Baues's explicit formula.

#include "awcobar/dcsh.hpp"

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace awcobar {

using CobarWord = Word<Cell>;
using CobarPair = Pair<CobarWord, CobarWord>;
using CobarSquare = TensorAlgebra<Cobar<SimplicialChains>, Cobar<SimplicialChains>>;

/// Images of the generators s^{-1}x (x of degree <= bound + 1) in Omega C(K) (x) Omega C(K).
struct DiagonalResult {
    enum class Method { AlexanderWhitney, Baues };

    SSetPtr space;
    Method method = Method::AlexanderWhitney;
    int bound = 0;
    std::map<Cell, Lin<CobarPair>> images;

    /// Algebra map determined by the stored images.
    AlgebraMap<Cell, CobarSquare> as_map() const
    {
        const Cobar<SimplicialChains> O{SimplicialChains(space)};
        return {CobarSquare(O, O), [imgs = images](const Cell& c) {
                    auto it = imgs.find(c);
                    if (it == imgs.end()) throw PreconditionError("diagonal: generator beyond the computed bound");
                    return it->second;
                }};
    }
};

inline std::string method_name(DiagonalResult::Method m)
{
    return m == DiagonalResult::Method::AlexanderWhitney ? "aw" : "baues";
}

namespace detail {

inline void require_one_reduced(const SSetPtr& K)
{
    if (!K->is_reduced(1)) throw PreconditionError("the cobar diagonal needs a 1-reduced simplicial set");
}

/// Highest generator dimension needed for a cobar degree bound.
inline int generator_top(const SSetPtr& K, int bound) { return std::min(bound + 1, K->top_dimension()); }

} // namespace detail

/// The data behind the Alexander-Whitney cobar diagonal: K x K, the Eilenberg-Zilber
/// contraction and its transfer.  `extra` extra product dimensions are materialized
/// (1 for the diagonal itself, 2 for the cocommutativity homotopy).
class DiagonalContext {
public:
    DiagonalContext(SSetPtr K, int bound, int extra = 1, std::shared_ptr<HomotopyOperators> ops = nullptr)
        : K_((detail::require_one_reduced(K), K)),
          bound_(bound),
          KK_(product(K_, K_, detail::generator_top(K_, bound) + extra)),
          ez_(KK_, std::move(ops)),
          tr_(std::make_unique<Transfer>(ez_)),
          omega_(SimplicialChains(K_)),
          omega_kk_(ez_.total()),
          diag_(diagonal_map(KK_)),
          swap_(swap_map(KK_, KK_))
    {
    }

    const SSetPtr& space() const { return K_; }
    int bound() const { return bound_; }
    const EilenbergZilber& ez() const { return ez_; }
    const Transfer& transfer() const { return *tr_; }
    const Cobar<SimplicialChains>& omega() const { return omega_; }

    /// Drop every memoized value (after mutating the homotopy operators).
    void reset()
    {
        ez_.clear_cache();
        tr_ = std::make_unique<Transfer>(ez_);
    }

    AlgebraMap<Cell, Cobar<SimplicialChains>> omega_diagonal() const
    {
        return cobar_map<SimplicialChains, SimplicialChains>(omega_kk_, induced_chain_map(diag_));
    }
    AlgebraMap<Cell, Cobar<SimplicialChains>> omega_swap() const
    {
        return cobar_map<SimplicialChains, SimplicialChains>(omega_kk_, induced_chain_map(swap_));
    }
    AlgebraMap<Pair<Cell, Cell>, CobarSquare> milgram() const { return milgram_q(omega_, omega_); }

    /// psi_K = q o Omega-tilde f o Omega(Delta) on a generator.
    Lin<CobarPair> psi_generator(const Cell& x) const
    {
        const auto q = milgram();
        return q(tr_->omega_f()(omega_diagonal().on_letter(x)));
    }

    /// H = q o Omega-tilde f o Omega(sw) o Omega-tilde phi o Omega(Delta) on a word.
    Lin<CobarPair> homotopy(const CobarWord& w) const
    {
        const auto q = milgram();
        const auto of = tr_->omega_f();
        const auto sw = omega_swap();
        const auto h = map_linear(omega_diagonal()(w), [&](const CobarWord& u) { return tr_->omega_phi(u); });
        return q(of(sw(h)));
    }

private:
    SSetPtr K_;
    int bound_;
    ProductPtr KK_;
    EilenbergZilber ez_;
    std::unique_ptr<Transfer> tr_;
    Cobar<SimplicialChains> omega_;
    Cobar<SimplicialChains> omega_kk_;
    SimplicialMap diag_, swap_;
};

/// The Alexander-Whitney cobar diagonal on all generators of cobar degree <= ctx.bound().
inline DiagonalResult aw_cobar_diagonal(const DiagonalContext& ctx)
{
    DiagonalResult r{ctx.space(), DiagonalResult::Method::AlexanderWhitney, ctx.bound(), {}};
    for (int n = 2; n <= detail::generator_top(ctx.space(), ctx.bound()); ++n)
        for (const auto& x : ctx.space()->cells(n)) r.images[x] = ctx.psi_generator(x);
    return r;
}

inline DiagonalResult aw_cobar_diagonal(const SSetPtr& K, int bound)
{
    return aw_cobar_diagonal(DiagonalContext(K, bound));
}

/// Sign of the terms of Baues's formula.  Literal is l(a) exactly as written; it is not
/// coassociative under Koszul signs (first failure on Delta[4]/sk_1), so no global sign
/// reconciles it with psi_K.  Compatible drops the (a_1 - 1) summand, i.e. uses the
/// weight (i - 1) for every gap including the first, and equals psi_K.
enum class BauesSign { Compatible, Literal };

inline long long baues_sign_exponent(const std::vector<int>& a, int n, BauesSign s)
{
    const long long e = baues_exponent(a, n);
    return s == BauesSign::Literal || a.empty() ? e : e - (a[0] - 1);
}

/// Baues's formula on a generator s^{-1}x, |x| = n:
/// sum over 0 < a_1 < ... < a_m < n of (-1)^{l(a)} s^{-1}x_{0..a_1} ... s^{-1}x_{a_m..n} (x) s^{-1}x_{0 a_1 ... a_m n},
/// with 1-simplices read as the unit.
inline Lin<CobarPair> baues_generator(const SimplicialSet& K, const Cell& x, BauesSign sign = BauesSign::Compatible)
{
    const int n = x.dim;
    const Simplex sx = nondegenerate(x);
    Lin<CobarPair> out;
    // a letter, the unit (empty word, 1-simplex), or zero (degenerate)
    auto factor = [&](const std::vector<int>& v, CobarWord& w) {
        const Simplex s = K.sub_simplex(sx, v);
        if (s.dim() <= 1) return true;
        if (s.degenerate()) return false;
        w.letters.push_back(s.gen);
        return true;
    };
    for (unsigned mask = 0; mask < (1u << std::max(0, n - 1)); ++mask) {
        std::vector<int> a;
        for (int i = 1; i < n; ++i)
            if (mask & (1u << (i - 1))) a.push_back(i);
        std::vector<int> cuts{0};
        cuts.insert(cuts.end(), a.begin(), a.end());
        cuts.push_back(n);
        CobarWord left, right;
        bool ok = factor(cuts, right);
        for (std::size_t j = 0; ok && j + 1 < cuts.size(); ++j) {
            std::vector<int> v;
            for (int t = cuts[j]; t <= cuts[j + 1]; ++t) v.push_back(t);
            ok = factor(v, left);
        }
        if (ok) out.add({left, right}, parity_sign(baues_sign_exponent(a, n, sign)));
    }
    return out;
}

inline DiagonalResult baues_diagonal(const SSetPtr& K, int bound, BauesSign sign = BauesSign::Compatible)
{
    detail::require_one_reduced(K);
    DiagonalResult r{K, DiagonalResult::Method::Baues, bound, {}};
    for (int n = 2; n <= detail::generator_top(K, bound); ++n)
        for (const auto& x : K->cells(n)) r.images[x] = baues_generator(*K, x, sign);
    return r;
}

namespace detail {

using Triple = std::tuple<CobarWord, CobarWord, CobarWord>;

inline std::string describe_word(const CobarWord& w)
{
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + describe(w.letters[i]);
    return s + "]";
}

inline std::string describe_pair(const CobarPair& p) { return describe_word(p.first) + "(x)" + describe_word(p.second); }

} // namespace detail

/// d psi = psi d on every generator of degree <= bound (both sides are (psi, psi)-derivations).
inline CheckResult check_diagonal_chain_map(const DiagonalResult& D)
{
    CheckResult r;
    const auto psi = D.as_map();
    const Cobar<SimplicialChains> O{SimplicialChains(D.space)};
    for (const auto& [x, img] : D.images) {
        ++r.checked;
        if (differential(psi.target(), img) != psi(O.d(letter(x)))) r.fail("d psi != psi d on s^{-1}" + describe(x));
    }
    return r;
}

/// (psi (x) 1) psi = (1 (x) psi) psi on every generator of degree <= bound.
inline CheckResult check_coassociativity(const DiagonalResult& D)
{
    CheckResult r;
    const auto psi = D.as_map();
    for (const auto& [x, img] : D.images) {
        ++r.checked;
        Lin<detail::Triple> lhs, rhs;
        for (const auto& [pq, a] : img) {
            for (const auto& [uv, b] : psi(pq.first)) lhs.add({uv.first, uv.second, pq.second}, a * b);
            for (const auto& [uv, b] : psi(pq.second)) rhs.add({pq.first, uv.first, uv.second}, a * b);
        }
        if (lhs != rhs) {
            const auto diff = lhs - rhs;
            const auto& [t, c] = *diff.begin();
            r.fail("coassociativity fails on s^{-1}" + describe(x) + ": discrepancy " + c.str() + " * " +
                   detail::describe_word(std::get<0>(t)) + "(x)" + detail::describe_word(std::get<1>(t)) + "(x)" +
                   detail::describe_word(std::get<2>(t)));
        }
    }
    return r;
}

/// Generator-by-generator equality of two diagonals.
inline CheckResult compare_diagonals(const DiagonalResult& a, const DiagonalResult& b)
{
    CheckResult r;
    for (const auto& [x, img] : a.images) {
        ++r.checked;
        auto it = b.images.find(x);
        if (it == b.images.end()) {
            r.fail("generator s^{-1}" + describe(x) + " missing from the " + method_name(b.method) + " diagonal");
            continue;
        }
        if (img != it->second) {
            const auto diff = img - it->second;
            const auto& [t, c] = *diff.begin();
            r.fail(method_name(a.method) + " != " + method_name(b.method) + " on s^{-1}" + describe(x) + ": term " +
                   detail::describe_pair(t) + " differs by " + c.str());
        }
    }
    return r;
}

/// Every term of Baues's formula has a single letter (or the unit) on the right.
inline CheckResult check_right_factor_single_letter(const DiagonalResult& D)
{
    CheckResult r;
    for (const auto& [x, img] : D.images)
        for (const auto& [t, c] : img) {
            ++r.checked;
            if (t.second.size() > 1) r.fail("right factor of length > 1 on s^{-1}" + describe(x));
        }
    return r;
}

/// dH + Hd = sw psi - psi on words of degree <= bound, and the derivation rule
/// H(uv) = H(u) psi(v) + (-1)^{|u|} sw psi(u) H(v) on two-letter words.
inline CheckResult check_cocommutativity_homotopy(const DiagonalContext& ctx, const DiagonalResult& D)
{
    CheckResult r;
    const auto psi = D.as_map();
    const auto& T = psi.target();
    const auto& O = ctx.omega();
    auto swap = [&](const Lin<CobarPair>& x) {
        Lin<CobarPair> out;
        for (const auto& [p, a] : x) out.add({p.second, p.first}, a * koszul(O.degree(p.first), O.degree(p.second)));
        return out;
    };
    auto H = [&](const Lin<CobarWord>& x) { return map_linear(x, [&](const CobarWord& w) { return ctx.homotopy(w); }); };
    for (int n = 0; n <= D.bound; ++n)
        for (const auto& w : O.basis(n)) {
            ++r.checked;
            const Lin<CobarWord> lw(w);
            const auto lhs = differential(T, H(lw)) + H(O.d(w));
            const auto p = psi(w);
            if (lhs != swap(p) - p) r.fail("dH + Hd != sw psi - psi on " + detail::describe_word(w));
            if (w.size() == 2) {
                const CobarWord u{{w.letters[0]}}, v{{w.letters[1]}};
                const auto rule = multiply(T, H(Lin<CobarWord>(u)), psi(v)) +
                                  multiply(T, swap(psi(u)), H(Lin<CobarWord>(v))) * Int(parity_sign(O.degree(u)));
                if (H(lw) != rule) r.fail("derivation rule fails on " + detail::describe_word(w));
            }
        }
    return r;
}

} // namespace awcobar
