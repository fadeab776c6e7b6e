#pragma once

// Named verification suites over a space, shared by the command-line tool and
// the acceptance binary, plus the sign-mutation harness.

#include "awcobar/homology.hpp"
#include "awcobar/json_io.hpp"

#include <chrono>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace awcobar {

struct PropertyReport {
    std::string property;
    std::string space;
    int bound = 0;
    bool ok = true;
    std::vector<std::string> witnesses;
    long long checked = 0;
    double seconds = 0;

    Json to_json() const
    {
        return Json{{"property", property},   {"space", space},   {"bound", bound},
                    {"status", ok ? "pass" : "fail"}, {"witnesses", witnesses}, {"checked", checked},
                    {"seconds", seconds}};
    }
};

inline const std::vector<std::string>& property_registry()
{
    static const std::vector<std::string> names{"d2",      "sdr",           "gm-sdr",         "coassoc",
                                                "cocomm-homotopy", "baues-eq", "fbar-vanishing", "fbar-closed-form",
                                                "milgram", "twisting",      "acyclic-cobar"};
    return names;
}

/// A flipped sign: which table, where, and how it reads.
struct Mutation {
    std::string target;  // "psi" or "phi"
    std::string where;
};

/// Negates one stored coefficient of psi, chosen by the seed.
inline Mutation mutate_psi(DiagonalResult& D, std::uint64_t seed)
{
    std::vector<std::pair<Cell, CobarPair>> entries;
    for (const auto& [x, img] : D.images)
        for (const auto& [t, c] : img) entries.push_back({x, t});
    if (entries.empty()) throw PreconditionError("psi has no stored coefficients to mutate");
    std::mt19937_64 rng(seed);
    const auto& [x, t] = entries[std::uniform_int_distribution<std::size_t>(0, entries.size() - 1)(rng)];
    auto& img = D.images.at(x);
    img.add(t, -2 * img.coeff(t));
    return {"psi", "s^{-1}" + describe(x) + " term " + detail::describe_pair(t)};
}

/// Negates one stored coefficient of the operator table phi_n, 1 <= n <= max_n.
inline Mutation mutate_phi(HomotopyOperators& ops, std::uint64_t seed, int max_n)
{
    std::mt19937_64 rng(seed);
    const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
    auto& table = ops.mutable_phi(n);
    if (table.is_zero()) throw PreconditionError("phi table is empty");
    const auto k = std::uniform_int_distribution<std::size_t>(0, table.size() - 1)(rng);
    const auto [op, c] = *std::next(table.begin(), static_cast<long>(k));
    table.add(op, -2 * c);
    return {"phi", "phi_" + std::to_string(n) + " term #" + std::to_string(k)};
}

/// Negates one coefficient of a stored value phi(c), c ranging over the
/// product cells of degree <= max_degree.
inline Mutation mutate_phi_value(EilenbergZilber& ez, std::uint64_t seed, int max_degree)
{
    std::vector<std::pair<Cell, Cell>> entries;
    const int top = std::min(max_degree, ez.total().top_degree());
    for (int n = 0; n <= top; ++n)
        for (const auto& c : ez.total().basis(n))
            for (const auto& [z, a] : ez.phi(c)) entries.push_back({c, z});
    if (entries.empty()) throw PreconditionError("phi has no stored coefficients to mutate");
    std::mt19937_64 rng(seed);
    const auto& [c, z] = entries[std::uniform_int_distribution<std::size_t>(0, entries.size() - 1)(rng)];
    auto& v = ez.mutable_phi_value(c);
    v.add(z, -2 * v.coeff(z));
    return {"phi", "phi(" + describe(c) + ") term " + describe(z)};
}

/// Runs named properties of one space; heavy data is built on first use.
class Verifier {
public:
    Verifier(SSetPtr K, std::string label, int bound) : K_(std::move(K)), label_(std::move(label)), bound_(bound)
    {
        if (bound_ < 1) throw PreconditionError("bound must be at least 1");
    }

    /// Flip one sign of psi or phi (seeded) before anything is computed.
    Mutation inject(const std::string& target, std::uint64_t seed)
    {
        if (target == "psi") return mutate_psi(psi(), seed);
        if (target == "phi") {
            if (ctx_ || ez_) throw PreconditionError("mutate phi before running any property");
            return mutate_phi(*ops_, seed, std::min(bound_ + 1, 6));
        }
        throw PreconditionError("unknown mutation target '" + target + "' (psi | phi)");
    }

    PropertyReport run(const std::string& property)
    {
        PropertyReport rep;
        rep.property = property;
        rep.space = label_;
        rep.bound = bound_;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto r = evaluate(property);
            rep.ok = r.ok;
            rep.checked = r.checked;
            if (!r.ok) rep.witnesses.push_back(r.witness);
        } catch (const PreconditionError& e) {
            rep.ok = false;
            rep.witnesses.push_back(std::string("precondition: ") + e.what());
        }
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    }

    DiagonalContext& context()
    {
        if (!ctx_) ctx_ = std::make_unique<DiagonalContext>(K_, bound_, 2, ops_);
        return *ctx_;
    }

    DiagonalResult& psi()
    {
        if (!psi_) psi_ = aw_cobar_diagonal(context());
        return *psi_;
    }

private:
    /// E-Z data on K x K, materialized two dimensions beyond the bound.
    const EilenbergZilber& ez()
    {
        if (!ez_) ez_ = std::make_unique<EilenbergZilber>(product(K_, K_, bound_ + 2), ops_);
        return *ez_;
    }

    CheckResult evaluate(const std::string& p)
    {
        if (p == "d2") return check_d2();
        if (p == "sdr") {
            auto r = check_sdr(ez(), bound_);
            if (r.ok) r = check_phi_closed(ez(), bound_);
            return r;
        }
        if (p == "gm-sdr") return check_transfer(context().transfer(), bound_);
        if (p == "coassoc") return check_coassociativity(psi());
        if (p == "cocomm-homotopy") return check_cocommutativity_homotopy(context(), psi());
        if (p == "baues-eq") return compare_diagonals(psi(), baues_diagonal(K_, bound_));
        if (p == "fbar-vanishing") return check_fbar_vanishing(ez(), wedge(), bound_);
        if (p == "fbar-closed-form") return check_fbar_closed(ez(), wedge(), bound_);
        if (p == "milgram") return check_milgram();
        if (p == "twisting") return check_twisting();
        if (p == "acyclic-cobar") return check_acyclic();
        throw PreconditionError("unknown property '" + p + "'");
    }

    const WedgeTransfer& wedge()
    {
        if (!wedge_) wedge_ = std::make_unique<WedgeTransfer>(ez());
        return *wedge_;
    }

    CheckResult check_d2() const
    {
        CheckResult r;
        const SimplicialChains C(K_);
        for (int n = 1; n <= K_->top_dimension(); ++n)
            for (const auto& c : C.basis(n)) {
                ++r.checked;
                if (!boundary(C, C.d(c)).is_zero()) r.fail("d^2 != 0 on the chain " + describe(c));
            }
        const Cobar<SimplicialChains> O(C);
        for (int n = 1; n <= bound_; ++n)
            for (const auto& w : O.basis(n)) {
                ++r.checked;
                if (!differential(O, differential(O, Lin<CobarWord>(w))).is_zero())
                    r.fail("d^2 != 0 on the cobar word " + detail::describe_word(w));
            }
        return r;
    }

    /// q : Omega(C (x) C) -> Omega C (x) Omega C commutes with the differentials on generators.
    CheckResult check_milgram() const
    {
        CheckResult r;
        const SimplicialChains C(K_);
        const Cobar<SimplicialChains> O(C);
        const TensorComplex<SimplicialChains, SimplicialChains> T(C, C);
        const Cobar<TensorComplex<SimplicialChains, SimplicialChains>> OT(T);
        const auto q = milgram_q(O, O);
        for (int n = 2; n <= bound_ + 1; ++n)
            for (const auto& x : T.basis(n)) {
                ++r.checked;
                const auto w = letter(x);
                if (differential(q.target(), q(w)) != q(OT.d(w))) r.fail("d q != q d on " + describe(x));
            }
        return r;
    }

    CheckResult check_twisting() const
    {
        const Cobar<SimplicialChains> O{SimplicialChains(K_)};
        const auto rep = check_twisting_cochain(canonical_cochain(O), bound_ + 1,
                                                std::function<std::string(const Cell&)>([](const Cell& c) { return describe(c); }));
        CheckResult r;
        r.checked = 1;
        if (!rep.ok) r.fail(rep.witness);
        return r;
    }

    /// Omega C (x)_t C has H_0 = Z and H_n = 0 for 1 <= n <= bound.
    CheckResult check_acyclic() const
    {
        CheckResult r;
        const Cobar<SimplicialChains> O{SimplicialChains(K_)};
        const TwistedTensor<SimplicialChains, Cobar<SimplicialChains>> A(canonical_cochain(O));
        for (int n = 0; n <= bound_; ++n) {
            ++r.checked;
            const auto h = homology(A, n);
            if (h != HomologyGroup{n == 0 ? 1 : 0, {}}) r.fail("H_" + std::to_string(n) + " = " + h.to_string());
        }
        return r;
    }

    SSetPtr K_;
    std::string label_;
    int bound_;
    std::shared_ptr<HomotopyOperators> ops_ = std::make_shared<HomotopyOperators>();
    std::unique_ptr<DiagonalContext> ctx_;
    std::optional<DiagonalResult> psi_;
    std::unique_ptr<EilenbergZilber> ez_;
    std::unique_ptr<WedgeTransfer> wedge_;
};

} // namespace awcobar
