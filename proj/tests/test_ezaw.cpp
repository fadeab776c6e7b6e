#include "awcobar/ezaw.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace awcobar;

namespace {

using XB = EilenbergZilber::XBasis;

EilenbergZilber make_ez(SSetPtr K, SSetPtr L) { return EilenbergZilber(product(std::move(K), std::move(L))); }

Cell product_cell(const ProductSet& P, const Simplex& a, const Simplex& b)
{
    const Simplex s = P.make(a, b);
    EXPECT_FALSE(s.degenerate());
    return s.gen;
}

} // namespace

TEST(Shuffle, OneByOne)
{
    auto D1 = standard_simplex(1);
    auto ez = make_ez(D1, D1);
    const Cell e{1, 0};
    const Simplex x = nondegenerate(e);
    Lin<Cell> expect;
    expect.add(product_cell(*ez.product(), apply_degeneracy(1, x), apply_degeneracy(0, x)), 1);
    expect.add(product_cell(*ez.product(), apply_degeneracy(0, x), apply_degeneracy(1, x)), -1);
    EXPECT_EQ(ez.nabla({e, e}), expect);
}

TEST(Shuffle, PointFactorAndTermCount)
{
    auto S2 = sphere(2);
    auto ez = make_ez(S2, S2);
    const Cell p{0, 0}, x{2, 0};
    auto v = ez.nabla({p, x});
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v.begin()->second, 1);
    EXPECT_EQ(ez.product()->components(v.begin()->first), std::make_pair(basepoint_in(2), nondegenerate(x)));
    EXPECT_EQ(ez.nabla({x, x}).size(), static_cast<std::size_t>(awcobar::testing::binom(4, 2)));
}

TEST(AlexanderWhitney, Examples)
{
    auto D2 = standard_simplex(2);
    auto ez = make_ez(D2, D2);
    const Simplex top = nondegenerate({2, 0});
    const Cell diag = product_cell(*ez.product(), top, top);
    Lin<XB> expect;
    auto cell = [&](std::vector<int> v) { return D2->sub_simplex(top, v).gen; };
    expect.add({cell({0}), cell({0, 1, 2})}, 1);
    expect.add({cell({0, 1}), cell({1, 2})}, 1);
    expect.add({cell({0, 1, 2}), cell({2})}, 1);
    EXPECT_EQ(ez.f(diag), expect);

    auto S2 = sphere(2);
    auto ez2 = make_ez(S2, S2);
    const Cell x{2, 0}, p{0, 0};
    const Cell dx = product_cell(*ez2.product(), nondegenerate(x), nondegenerate(x));
    Lin<XB> e2;
    e2.add({p, x}, 1);
    e2.add({x, p}, 1);
    EXPECT_EQ(ez2.f(dx), e2);
}

TEST(Homotopy, BottomDegreeAndNablaImage)
{
    auto D1 = standard_simplex(1);
    auto ez = make_ez(D1, D1);
    for (const auto& c : ez.total().basis(0)) EXPECT_TRUE(ez.phi(c).is_zero());
    const Cell e{1, 0};
    EXPECT_TRUE(map_linear(ez.nabla({e, e}), [&](const Cell& c) { return ez.phi(c); }).is_zero());
}

TEST(Homotopy, DegreeOneOffDiagonal)
{
    auto D1 = standard_simplex(1);
    auto ez = make_ez(D1, D1);
    const auto& Y = ez.total();
    for (const auto& c : Y.basis(1)) {
        Lin<Cell> lhs = boundary(Y, ez.phi(c)) + map_linear(Y.d(c), [&](const Cell& z) { return ez.phi(z); });
        Lin<Cell> rhs = map_linear(ez.f(c), [&](const XB& t) { return ez.nabla(t); }) - Lin<Cell>(c);
        EXPECT_EQ(lhs, rhs);
    }
    // the diagonal edge (e, e) is the only one where phi is nonzero
    const Simplex e = nondegenerate({1, 0});
    const Cell diag = product_cell(*ez.product(), e, e);
    EXPECT_FALSE(ez.phi(diag).is_zero());
}

TEST(Homotopy, ClosedFormDegreeOneVanishes)
{
    auto D1 = standard_simplex(1);
    auto ez = make_ez(D1, D1);
    for (const auto& c : ez.total().basis(0)) EXPECT_TRUE(ez.phi_closed(c).is_zero());
}

TEST(Sdr, IdentitiesOnSampleProducts)
{
    std::vector<std::pair<SSetPtr, SSetPtr>> cases{
        {standard_simplex(1), standard_simplex(1)}, {standard_simplex(1), standard_simplex(2)},
        {standard_simplex(2), standard_simplex(2)}, {sphere(2), sphere(2)},
        {skeletal_quotient(*standard_simplex(2), 0), sphere(2)}};
    for (const auto& [K, L] : cases) {
        auto ez = make_ez(K, L);
        auto r = check_sdr(ez, 6);
        EXPECT_TRUE(r.ok) << r.witness;
        auto c = check_phi_closed(ez, 6);
        EXPECT_TRUE(c.ok) << c.witness;
    }
}

TEST(Sdr, TruncatedProductRejectsHomotopyAtBound)
{
    auto S2 = sphere(2);
    auto ez = EilenbergZilber(product(S2, S2, 3));
    EXPECT_THROW(ez.phi(ez.total().basis(3).front()), PreconditionError);
}

// Delta nabla = (nabla (x) nabla)(1 (x) T (x) 1)(Delta (x) Delta)
TEST(Sdr, NablaIsCoalgebraMap)
{
    auto K = standard_simplex(2), L = standard_simplex(1);
    auto ez = make_ez(K, L);
    const auto& CK = ez.left();
    const auto& CL = ez.right();
    const auto& Y = ez.total();
    for (int n = 0; n <= 3; ++n)
        for (const auto& t : ez.tensor_complex().basis(n)) {
            auto lhs = map_linear(ez.nabla(t), [&](const Cell& c) { return Y.coproduct(c); });
            Lin<Pair<Cell, Cell>> rhs;
            for (const auto& [a, ca] : CK.coproduct(t.first))
                for (const auto& [b, cb] : CL.coproduct(t.second)) {
                    const Int sign = ca * cb * koszul(a.second.dim, b.first.dim);
                    auto left = ez.nabla({a.first, b.first});
                    auto right = ez.nabla({a.second, b.second});
                    rhs.add_scaled(tensor(left, right), sign);
                }
            EXPECT_EQ(lhs, rhs);
        }
}

TEST(Sdr, Naturality)
{
    auto D2 = standard_simplex(2);
    auto S2 = sphere(2);
    auto q = quotient_map(D2, S2, 1);
    auto src = product(D2, D2);
    auto dst = product(S2, S2);
    auto hk = product_map(src, dst, q, q);
    ASSERT_EQ(hk.check(), "");
    EilenbergZilber a(src), b(dst);
    auto hk_ch = induced_chain_map(hk);
    auto q_ch = induced_chain_map(q);
    for (int n = 0; n <= 4; ++n) {
        for (const auto& c : a.total().basis(n)) {
            EXPECT_EQ(apply_map(hk_ch, a.phi(c)), map_linear(hk_ch(c), [&](const Cell& z) { return b.phi(z); }));
            auto lhs = map_linear(a.f(c), [&](const XB& t) { return tensor(q_ch(t.first), q_ch(t.second)); });
            EXPECT_EQ(lhs, map_linear(hk_ch(c), [&](const Cell& z) { return b.f(z); }));
        }
        for (const auto& t : a.tensor_complex().basis(n)) {
            auto lhs = apply_map(hk_ch, a.nabla(t));
            auto rhs = map_linear(tensor(q_ch(t.first), q_ch(t.second)), [&](const XB& u) { return b.nabla(u); });
            EXPECT_EQ(lhs, rhs);
        }
    }
}

TEST(Adjust, PreservesGoodHomotopy)
{
    auto D1 = standard_simplex(1);
    auto ez = make_ez(D1, D1);
    const auto& Y = ez.total();
    LinearMap<XB, Cell> nabla = [&](const XB& t) { return ez.nabla(t); };
    LinearMap<Cell, XB> f = [&](const Cell& c) { return ez.f(c); };
    LinearMap<Cell, Cell> phi = [&](const Cell& c) { return ez.phi(c); };
    auto adj = sdr_adjust(Y, nabla, f, phi, 2);
    for (int n = 0; n <= 2; ++n)
        for (const auto& c : Y.basis(n)) {
            Lin<Cell> lhs = boundary(Y, adj(c)) + map_linear(Y.d(c), adj);
            EXPECT_EQ(lhs, map_linear(f(c), nabla) - Lin<Cell>(c));
            EXPECT_TRUE(map_linear(adj(c), f).is_zero());
            EXPECT_TRUE(map_linear(adj(c), adj).is_zero());
        }
    for (int n = 0; n <= 2; ++n)
        for (const auto& t : ez.tensor_complex().basis(n)) EXPECT_TRUE(map_linear(nabla(t), adj).is_zero());
}

TEST(Adjust, TrivialDeformation)
{
    SimplicialChains C(standard_simplex(2));
    LinearMap<Cell, Cell> id = [](const Cell& c) { return Lin<Cell>(c); };
    LinearMap<Cell, Cell> zero = [](const Cell&) { return Lin<Cell>{}; };
    auto adj = sdr_adjust<SimplicialChains, Cell>(C, id, id, zero, 2);
    for (int n = 0; n <= 2; ++n)
        for (const auto& c : C.basis(n)) EXPECT_TRUE(adj(c).is_zero());
}

// Randomized degree-2 noise: phi' = phi + d c - c d still satisfies the
// homotopy identity but breaks the side conditions.
TEST(Adjust, RepairsNoisyHomotopy)
{
    auto D1 = standard_simplex(1);
    auto ez = make_ez(D1, D1);
    const auto& Y = ez.total();
    LinearMap<XB, Cell> nabla = [&](const XB& t) { return ez.nabla(t); };
    LinearMap<Cell, XB> f = [&](const Cell& c) { return ez.f(c); };
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int trial = 0; trial < 5; ++trial) {
        std::map<Cell, Lin<Cell>> noise;
        for (const auto& c : Y.basis(0))
            for (const auto& z : Y.basis(2)) noise[c].add(z, coeff(rng));
        LinearMap<Cell, Cell> cmap = [noise](const Cell& c) {
            auto it = noise.find(c);
            return it == noise.end() ? Lin<Cell>{} : it->second;
        };
        LinearMap<Cell, Cell> noisy = [&, cmap](const Cell& c) {
            return ez.phi(c) + boundary(Y, cmap(c)) - map_linear(Y.d(c), cmap);
        };
        bool side_broken = false;
        for (const auto& c : Y.basis(0)) side_broken |= !map_linear(noisy(c), f).is_zero() || !map_linear(noisy(c), noisy).is_zero();
        auto adj = sdr_adjust(Y, nabla, f, noisy, 2);
        for (int n = 0; n <= 2; ++n)
            for (const auto& c : Y.basis(n)) {
                EXPECT_EQ(boundary(Y, adj(c)) + map_linear(Y.d(c), adj), map_linear(f(c), nabla) - Lin<Cell>(c));
                EXPECT_TRUE(map_linear(adj(c), f).is_zero());
                EXPECT_TRUE(map_linear(adj(c), adj).is_zero());
            }
        for (int n = 0; n <= 2; ++n)
            for (const auto& t : ez.tensor_complex().basis(n)) EXPECT_TRUE(map_linear(nabla(t), adj).is_zero());
        (void)side_broken;
    }
}

// The formula as usually quoted produces d phi + phi d = 1 - nabla f.
TEST(Adjust, LiteralFormulaHasOppositeSign)
{
    auto D1 = standard_simplex(1);
    auto ez = make_ez(D1, D1);
    const auto& Y = ez.total();
    LinearMap<XB, Cell> nabla = [&](const XB& t) { return ez.nabla(t); };
    LinearMap<Cell, XB> f = [&](const Cell& c) { return ez.f(c); };
    LinearMap<Cell, Cell> phi = [&](const Cell& c) { return ez.phi(c); };
    auto lit = sdr_adjust(Y, nabla, f, phi, 2, AdjustFormula::Literal);
    bool witnessed = false;
    for (int n = 0; n <= 2; ++n)
        for (const auto& c : Y.basis(n)) {
            Lin<Cell> lhs = boundary(Y, lit(c)) + map_linear(Y.d(c), lit);
            Lin<Cell> one_minus = Lin<Cell>(c) - map_linear(f(c), nabla);
            EXPECT_EQ(lhs, one_minus);
            witnessed |= !one_minus.is_zero();
        }
    EXPECT_TRUE(witnessed);
}

TEST(Adjust, RejectsNonHomotopy)
{
    auto D1 = standard_simplex(1);
    auto ez = make_ez(D1, D1);
    LinearMap<XB, Cell> nabla = [&](const XB& t) { return ez.nabla(t); };
    LinearMap<Cell, XB> f = [&](const Cell& c) { return ez.f(c); };
    LinearMap<Cell, Cell> zero = [](const Cell&) { return Lin<Cell>{}; };
    EXPECT_THROW(sdr_adjust(ez.total(), nabla, f, zero, 2), PreconditionError);
}
