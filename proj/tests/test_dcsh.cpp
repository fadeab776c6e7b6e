#include "awcobar/dcsh.hpp"

#include <gtest/gtest.h>

using namespace awcobar;

namespace {

using SC = SimplicialChains;
using X = EilenbergZilber::X;
using XB = EilenbergZilber::XBasis;

struct Fixture {
    ProductPtr P;
    EilenbergZilber ez;
    Cobar<SC> OY;
    Cobar<X> OX;
    explicit Fixture(SSetPtr K, SSetPtr L) : P(product(K, L)), ez(P), OY(ez.total()), OX(ez.tensor_complex()) {}
};

} // namespace

TEST(Ind, CoalgebraMapGivesCobarMap)
{
    SC C(sphere(2));
    auto id = family_of<SC, SC>(C, C, [](const Cell& c) { return Lin<Cell>(c); });
    auto I = ind(id);
    Cobar<SC> O(C);
    for (int n = 0; n <= 4; ++n)
        for (const auto& w : O.basis(n)) EXPECT_EQ(I(w), Lin<Word<Cell>>(w));
}

TEST(Transfer, InducedMapIsChainMap)
{
    Fixture fx(sphere(2), sphere(2));
    Transfer tr(fx.ez);
    const auto r = check_induced_chain_map(tr.family(), 5);
    EXPECT_TRUE(r.ok) << r.witness;
}

TEST(Transfer, StrongDeformationRetract)
{
    Fixture fx(sphere(2), sphere(2));
    Transfer tr(fx.ez);
    const auto r = check_transfer(tr, 5);
    EXPECT_TRUE(r.ok) << r.witness;
    EXPECT_GT(r.checked, 1000);
}

TEST(Transfer, HigherHomotopyComponentsFixTheSign)
{
    // the first product where Phi_2 survives in the cobar construction
    Fixture fx(skeletal_quotient(*standard_simplex(4), 1), sphere(2));
    Transfer good(fx.ez);
    const auto r = check_transfer(good, 3);
    EXPECT_TRUE(r.ok) << r.witness;
    Transfer alt(fx.ez, HomotopySign::Alternating);
    EXPECT_FALSE(check_transfer(alt, 3).ok);
    Transfer pos(fx.ez, HomotopySign::Positive);
    EXPECT_FALSE(check_transfer(pos, 3).ok);
}

TEST(Transfer, FirstComponentsAreTheEilenbergZilberData)
{
    Fixture fx(sphere(2), sphere(3));
    Transfer tr(fx.ez);
    for (int n = 2; n <= 5; ++n)
        for (const auto& c : fx.ez.total().basis(n)) {
            Lin<Word<XB>> f1;
            for (const auto& [t, a] : fx.ez.f(c)) f1.add(letter(t), a);
            EXPECT_EQ(tr.F(c, 1), f1);
            Lin<Word<Cell>> p1;
            for (const auto& [z, a] : fx.ez.phi(c)) p1.add(letter(z), a);
            EXPECT_EQ(tr.Phi(c, 1), p1);
        }
}

namespace {

Family<SC, SC> identity_family(const SC& C)
{
    return family_of<SC, SC>(C, C, [](const Cell& c) { return Lin<Cell>(c); });
}

template <class C1, class D1, class C2, class D2>
void expect_comonoidal(const Family<C1, D1>& f, const Family<C2, D2>& g, int max_degree)
{
    using S = TensorComplex<C1, C2>;
    const auto fg = wedge(f, g);
    const auto Ifg = ind(fg);
    const auto If = ind(f);
    const auto Ig = ind(g);
    Cobar<S> OS(fg.source());
    const auto qs = milgram_q(Cobar<C1>(f.source()), Cobar<C2>(g.source()));
    const auto qt = milgram_q(Cobar<D1>(f.target()), Cobar<D2>(g.target()));
    long long checked = 0;
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& w : OS.basis(n)) {
            const auto lhs = qt(Ifg(w));
            std::remove_cvref_t<decltype(lhs)> rhs;
            for (const auto& [pq, a] : qs(w)) rhs.add_scaled(tensor(If(pq.first), Ig(pq.second)), a);
            ASSERT_EQ(lhs, rhs) << "degree " << n << ", word of length " << w.size();
            ++checked;
        }
    EXPECT_GT(checked, 0);
}

} // namespace

TEST(Families, TransferFamilyHasHigherComponents)
{
    Fixture fx(sphere(2), sphere(2));
    Transfer tr(fx.ez);
    long long higher = 0;
    for (const auto& c : fx.ez.total().basis(3)) higher += tr.F(c, 2).size();
    EXPECT_GT(higher, 0);
}

SSetPtr tetrahedron_quotient() { return skeletal_quotient(*standard_simplex(3), 1); }

void check_compose(SSetPtr K, SSetPtr L, int max_degree)
{
    Fixture fx(K, L);
    Transfer tr(fx.ez);
    const auto* ez = &fx.ez;
    const auto nabla = family_of<X, SC>(fx.ez.tensor_complex(), fx.ez.total(), [ez](const XB& t) { return ez->nabla(t); });
    // F o nabla : X -> X has higher components but induces the identity
    const auto fn = compose(tr.family(), nabla);
    const auto Ifn = ind(fn);
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& w : fx.OX.basis(n)) ASSERT_EQ(Ifn(w), Lin<Word<XB>>(w)) << "degree " << n;

    const auto outer = compose(fn, tr.family());
    const auto lhs = ind(outer);
    const auto If = ind(tr.family());
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& w : fx.OY.basis(n)) ASSERT_EQ(lhs(w), Ifn(If(w))) << "degree " << n;

    const auto nf = compose(nabla, tr.family());
    const auto Inf = ind(nf);
    const auto In = ind(nabla);
    for (int n = 0; n <= max_degree; ++n)
        for (const auto& w : fx.OY.basis(n)) ASSERT_EQ(Inf(w), In(If(w))) << "degree " << n;
}

TEST(Families, ComposeMatchesInd)
{
    check_compose(sphere(2), sphere(2), 5);
    check_compose(sphere(2), sphere(3), 5);
    check_compose(tetrahedron_quotient(), sphere(2), 4);
}

TEST(Families, WedgeIsComonoidal)
{
    for (auto [K, L] : {std::pair{sphere(2), sphere(2)}, std::pair{sphere(2), sphere(3)}}) {
        Fixture fx(K, L);
        Transfer tr(fx.ez);
        const SC C(sphere(3));
        const auto id = identity_family(C);
        expect_comonoidal(id, id, 5);
        expect_comonoidal(tr.family(), id, 5);
        expect_comonoidal(id, tr.family(), 5);
        expect_comonoidal(tr.family(), tr.family(), 5);
    }
}

namespace {

template <class C, class D>
void expect_chain_map(const Family<C, D>& f, int max_degree, const std::string& what)
{
    const auto r = check_induced_chain_map(f, max_degree);
    EXPECT_TRUE(r.ok) << what << ": " << r.witness;
}

} // namespace

TEST(Families, InducedMapsAreChainMaps)
{
    for (auto [K, L] : {std::pair{sphere(2), sphere(2)}, std::pair{sphere(2), sphere(3)},
                        std::pair{tetrahedron_quotient(), sphere(2)}}) {
        Fixture fx(K, L);
        Transfer tr(fx.ez);
        expect_chain_map(tr.family(), 5, "F");
        const SC C(sphere(3));
        const auto id = identity_family(C);
        expect_chain_map(wedge(tr.family(), id), 4, "F^1");
        expect_chain_map(wedge(id, tr.family()), 4, "1^F");
        expect_chain_map(wedge(tr.family(), tr.family()), 4, "F^F");
    }
    // the first product with a nonzero F_3
    Fixture fx(skeletal_quotient(*standard_simplex(4), 1), sphere(2));
    Transfer tr(fx.ez);
    expect_chain_map(tr.family(), 4, "F");
    const SC C(sphere(3));
    const auto id = identity_family(C);
    expect_chain_map(wedge(tr.family(), id), 4, "F^1");
    expect_chain_map(wedge(id, tr.family()), 4, "1^F");
}

TEST(Families, WedgeOfHigherComponentsIsChainMap)
{
    // degree 5 is the first where a higher F_k meets a nontrivial odd factor on the other side
    Fixture fx(sphere(2), sphere(2));
    Transfer tr(fx.ez);
    const SC C(sphere(3));
    const auto id = identity_family(C);
    expect_chain_map(wedge(tr.family(), id), 5, "F^1");
    expect_chain_map(wedge(id, tr.family()), 5, "1^F");
    expect_chain_map(wedge(tr.family(), tr.family()), 5, "F^F");
}

namespace {

SSetPtr quotient(int n, int r) { return skeletal_quotient(*standard_simplex(n), r); }

void expect_ok(const CheckResult& r)
{
    EXPECT_TRUE(r.ok) << r.witness;
    EXPECT_GT(r.checked, 0);
}

} // namespace

TEST(WedgeFamily, FirstComponentIsSumOfComponents)
{
    Fixture fx(sphere(2), sphere(3));
    WedgeTransfer fb(fx.ez);
    const auto& P = *fx.P;
    for (int n = 1; n <= 5; ++n)
        for (const auto& c : fx.ez.total().basis(n)) {
            const auto& [x, y] = P.components(c);
            Lin<Word<WedgeCell>> expect;
            if (!x.degenerate()) expect.add(letter(WedgeCoalgebra::left(x.gen)), 1);
            if (!y.degenerate()) expect.add(letter(WedgeCoalgebra::right(y.gen)), 1);
            EXPECT_EQ(fb(c, 1), expect) << describe(c);
        }
}

TEST(WedgeFamily, IsKappaOfTransferFamily)
{
    // 0-reduced factors suffice for kappa
    expect_ok(check_fbar_is_kappa_f(EilenbergZilber(product(quotient(2, 0), quotient(2, 0))), 4));
    expect_ok(check_fbar_is_kappa_f(EilenbergZilber(product(sphere(2), sphere(2))), 4));
    expect_ok(check_fbar_is_kappa_f(EilenbergZilber(product(quotient(3, 1), sphere(3))), 6));
}

TEST(WedgeFamily, HigherTermsVanish)
{
    for (auto [K, L] : {std::pair{sphere(2), sphere(2)}, std::pair{quotient(3, 1), quotient(3, 1)},
                        std::pair{quotient(2, 0), quotient(2, 0)}}) {
        EilenbergZilber ez(product(K, L));
        WedgeTransfer fb(ez);
        expect_ok(check_fbar_vanishing(ez, fb, ez.product()->max_dim()));
    }
}

TEST(WedgeFamily, ClosedFormMatchesRecursion)
{
    for (auto [K, L] : {std::pair{sphere(2), sphere(2)}, std::pair{sphere(3), sphere(3)},
                        std::pair{quotient(3, 1), quotient(3, 1)}, std::pair{quotient(4, 1), sphere(2)}}) {
        EilenbergZilber ez(product(K, L));
        WedgeTransfer fb(ez);
        expect_ok(check_fbar_closed(ez, fb, std::min(6, ez.product()->max_dim())));
    }
}

TEST(WedgeFamily, ClosedFormOnSmallDiagonal)
{
    // n = 2, (x,x): k = 1 gives x + x (left and right), nothing survives for k = 2
    auto K = quotient(2, 1);
    EilenbergZilber ez(product(K, K));
    const auto c = ez.product()->make(nondegenerate(Cell{2, 0}), nondegenerate(Cell{2, 0})).gen;
    Lin<Word<WedgeCell>> expect;
    expect.add(letter(WedgeCoalgebra::left(Cell{2, 0})), 1);
    expect.add(letter(WedgeCoalgebra::right(Cell{2, 0})), 1);
    EXPECT_EQ(fbar_closed(ez, c, 1), expect);
    EXPECT_TRUE(fbar_closed(ez, c, 2).is_zero());
    EXPECT_TRUE(fbar_closed(ez, c, 7).is_zero());
}

TEST(WedgeFamily, HomotopyTermsAndFaceLemma)
{
    for (auto [K, L] : {std::pair{sphere(2), sphere(2)}, std::pair{quotient(3, 1), quotient(3, 1)}}) {
        EilenbergZilber ez(product(K, L));
        expect_ok(check_homotopy_terms(ez, ez.product()->max_dim()));
        expect_ok(check_face_lemma(ez, ez.product()->max_dim()));
    }
}

TEST(Gamma, FactorsMilgramMap)
{
    const SC C(sphere(2));
    const Cobar<SC> O(C);
    const Cobar<X> OX(X(C, C));
    const auto q = milgram_q(O, O);
    const auto g = gamma_map(O, O);
    const Cobar<WedgeCoalgebra> OW(WedgeCoalgebra(C, C));
    const auto tk = cobar_map<X, WedgeCoalgebra>(OW, [](const XB& t) { return kappa(t); });
    for (int n = 0; n <= 5; ++n)
        for (const auto& w : OX.basis(n)) ASSERT_EQ(q(w), g(tk(w))) << "degree " << n;
}

TEST(Gamma, ChainMapAndMultiplicative)
{
    const SC C(sphere(2)), D(sphere(3));
    const Cobar<SC> O(C), P(D);
    const auto g = gamma_map(O, P);
    const Cobar<WedgeCoalgebra> OW(WedgeCoalgebra(C, D));
    const TensorAlgebra<Cobar<SC>, Cobar<SC>> T(O, P);
    for (int n = 1; n <= 5; ++n)
        for (const auto& w : OW.basis(n)) ASSERT_EQ(differential(T, g(w)), g(OW.d(w))) << "degree " << n;
    // a mixed word s^{-1}c s^{-1}c' goes to (s^{-1}c (x) 1)(1 (x) s^{-1}c')
    const Word<WedgeCell> mixed{{WedgeCoalgebra::left(Cell{2, 0}), WedgeCoalgebra::right(Cell{3, 0})}};
    Lin<Pair<Word<Cell>, Word<Cell>>> expect;
    expect.add({letter(Cell{2, 0}), letter(Cell{3, 0})}, 1);
    EXPECT_EQ(g(mixed), expect);
}

TEST(Gamma, FactorsTransferredMap)
{
    Fixture fx(sphere(2), sphere(2));
    Transfer tr(fx.ez);
    WedgeTransfer fb(fx.ez);
    const Cobar<SC> O(SC(sphere(2)));
    const auto q = milgram_q(O, O);
    const auto g = gamma_map(O, O);
    const auto of = tr.omega_f();
    const auto ib = ind(fb.family());
    for (int n = 0; n <= 5; ++n)
        for (const auto& w : fx.OY.basis(n)) ASSERT_EQ(q(of(w)), g(ib(w))) << "degree " << n;
}
