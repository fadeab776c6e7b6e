// awcobar: build spaces, compute cobar diagonals, run verification suites.
//
// Exit status: 0 success, 1 a requested verification failed, 2 bad input.

#include "awcobar/spaces.hpp"
#include "awcobar/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace awcobar;

namespace {

struct Options {
    std::string space;
    int bound = 4;
    std::string method = "both";
    std::string sign = "compatible";
    std::string properties = "all";
    std::string format = "table";
    std::string mutate;
    std::uint64_t seed = 0;
    std::string out;
};

std::string cell_name(const SimplicialSet& K, const Cell& c)
{
    const auto& l = K.label(c);
    return l.empty() ? describe(c) : l;
}

std::string word_name(const SimplicialSet& K, const CobarWord& w)
{
    if (w.empty()) return "1";
    std::string s;
    for (const auto& l : w.letters) s += (s.empty() ? "" : " ") + ("s^-1 " + cell_name(K, l));
    return s;
}

std::string image_table(const SimplicialSet& K, const DiagonalResult& D)
{
    std::ostringstream os;
    os << "# " << method_name(D.method) << " diagonal, bound " << D.bound << "\n";
    for (const auto& [x, img] : D.images) {
        os << "s^-1 " << cell_name(K, x) << " ->";
        for (const auto& [t, c] : img)
            os << "\n    " << (c > 0 ? "+" : "") << c.str() << "  (" << word_name(K, t.first) << ") (x) ("
               << word_name(K, t.second) << ")";
        os << "\n";
    }
    return os.str();
}

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw PreconditionError("cannot write " + o.out);
    f << text;
}

std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_build(const Options& o)
{
    const auto K = parse_space(o.space);
    if (o.format == "json") {
        emit(o, to_json(*K).dump(2) + "\n");
        return 0;
    }
    std::ostringstream os;
    os << "space " << o.space << "\nnondegenerate simplices per dimension:";
    for (int c : K->counts()) os << " " << c;
    os << "\n";
    emit(o, os.str());
    return 0;
}

int cmd_diagonal(const Options& o)
{
    const auto K = parse_space(o.space);
    const auto sign = o.sign == "literal" ? BauesSign::Literal : BauesSign::Compatible;
    std::vector<DiagonalResult> results;
    if (o.method == "aw" || o.method == "both") results.push_back(aw_cobar_diagonal(K, o.bound));
    if (o.method == "baues" || o.method == "both") results.push_back(baues_diagonal(K, o.bound, sign));
    std::optional<CheckResult> eq;
    if (o.method == "both") eq = compare_diagonals(results[0], results[1]);

    if (o.format == "json") {
        Json j{{"space", o.space}, {"bound", o.bound}, {"diagonals", Json::array()}};
        for (const auto& d : results) j["diagonals"].push_back(to_json(d));
        if (eq) j["verdict"] = eq->ok ? "equal" : "different: " + eq->witness;
        emit(o, j.dump(2) + "\n");
    } else {
        std::string text;
        for (const auto& d : results) text += image_table(*K, d);
        if (eq) text += std::string("verdict: ") + (eq->ok ? "equal" : "different: " + eq->witness) + "\n";
        emit(o, text);
    }
    return eq && !eq->ok ? 1 : 0;
}

int cmd_verify(const Options& o)
{
    const auto K = parse_space(o.space);
    std::vector<std::string> props = o.properties == "all" ? property_registry() : split(o.properties);
    for (const auto& p : props)
        if (std::find(property_registry().begin(), property_registry().end(), p) == property_registry().end())
            throw PreconditionError("unknown property '" + p + "'");
    Verifier v(K, o.space, o.bound);
    std::optional<Mutation> m;
    if (!o.mutate.empty()) m = v.inject(o.mutate, o.seed);

    std::vector<PropertyReport> reps;
    bool all = true;
    for (const auto& p : props) {
        reps.push_back(v.run(p));
        all = all && reps.back().ok;
    }
    if (o.format == "json") {
        Json j = Json::array();
        for (const auto& r : reps) j.push_back(r.to_json());
        Json doc{{"space", o.space}, {"bound", o.bound}, {"reports", j}};
        if (m) doc["mutation"] = Json{{"target", m->target}, {"where", m->where}, {"seed", o.seed}};
        emit(o, doc.dump(2) + "\n");
    } else {
        std::ostringstream os;
        if (m) os << "mutation: " << m->target << " at " << m->where << " (seed " << o.seed << ")\n";
        for (const auto& r : reps) {
            os << (r.ok ? "PASS " : "FAIL ") << r.property << "  [" << r.checked << " checks, " << r.seconds << " s]";
            for (const auto& w : r.witnesses) os << "\n     witness: " << w;
            os << "\n";
        }
        emit(o, os.str());
    }
    return all ? 0 : 1;
}

template <class Complex>
std::vector<HomologyGroup> homology_table(const Complex& c, int top)
{
    std::vector<HomologyGroup> out;
    for (int n = 0; n <= top; ++n) out.push_back(homology(c, n));
    return out;
}

int cmd_homology(const Options& o)
{
    std::vector<HomologyGroup> hs;
    const std::string cobar = "cobar:", twisted = "twisted-cobar:";
    if (o.space.rfind(twisted, 0) == 0) {
        const Cobar<SimplicialChains> O{SimplicialChains(parse_space(o.space.substr(twisted.size())))};
        hs = homology_table(TwistedTensor<SimplicialChains, Cobar<SimplicialChains>>(canonical_cochain(O)), o.bound);
    } else if (o.space.rfind(cobar, 0) == 0) {
        hs = homology_table(Cobar<SimplicialChains>(SimplicialChains(parse_space(o.space.substr(cobar.size())))), o.bound);
    } else {
        hs = homology_table(SimplicialChains(parse_space(o.space)), o.bound);
    }
    if (o.format == "json") {
        Json j = Json::array();
        for (std::size_t n = 0; n < hs.size(); ++n) {
            Json tors = Json::array();
            for (const auto& t : hs[n].torsion) tors.push_back(to_json(t));
            j.push_back(Json{{"degree", n}, {"betti", hs[n].betti}, {"torsion", tors}});
        }
        emit(o, Json{{"complex", o.space}, {"homology", j}}.dump(2) + "\n");
    } else {
        std::ostringstream os;
        for (std::size_t n = 0; n < hs.size(); ++n) os << "H_" << n << " = " << hs[n].to_string() << "\n";
        emit(o, os.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cobar constructions, the Alexander-Whitney cobar diagonal and Baues's coproduct"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sc, int default_bound) {
        o.bound = default_bound;
        sc->add_option("space,--space", o.space,
                       "sphere:n | delta:n | delta-bar:n | quotient:n:r | product:A,B | path to JSON")
            ->required();
        sc->add_option("--format", o.format, "json | table")->check(CLI::IsMember({"json", "table"}));
        sc->add_option("--out", o.out, "write to this file instead of stdout");
    };

    auto* build = app.add_subcommand("build", "emit a space as JSON");
    common(build, 0);
    auto* diag = app.add_subcommand("diagonal", "generator images of the cobar diagonal");
    common(diag, 4);
    diag->add_option("--bound", o.bound, "cobar degree bound")->check(CLI::PositiveNumber);
    diag->add_option("--method", o.method, "aw | baues | both")->check(CLI::IsMember({"aw", "baues", "both"}));
    diag->add_option("--sign", o.sign, "sign of Baues's formula: compatible | literal")
        ->check(CLI::IsMember({"compatible", "literal"}));
    auto* verify = app.add_subcommand("verify", "run verification properties");
    common(verify, 4);
    verify->add_option("--bound", o.bound, "cobar degree bound")->check(CLI::PositiveNumber);
    verify->add_option("--properties", o.properties, "comma-separated list or 'all'");
    verify->add_option("--mutate", o.mutate, "test mode: flip one stored sign of psi | phi")
        ->check(CLI::IsMember({"psi", "phi"}));
    verify->add_option("--seed", o.seed, "seed selecting the mutated sign");
    auto* hom = app.add_subcommand("homology", "integral homology of C(K), cobar:K or twisted-cobar:K");
    common(hom, 4);
    hom->add_option("--bound", o.bound, "highest degree")->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);
    try {
        if (build->parsed()) return cmd_build(o);
        if (diag->parsed()) return cmd_diagonal(o);
        if (verify->parsed()) return cmd_verify(o);
        return cmd_homology(o);
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
