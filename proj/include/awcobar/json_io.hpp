#pragma once

// JSON forms of simplicial sets, chains and diagonal tables.

#include "awcobar/diagonal.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace awcobar {

using Json = nlohmann::ordered_json;

inline Json to_json(const Cell& c) { return Json{{"dim", c.dim}, {"index", c.index}}; }

inline Json to_json(const Simplex& s) { return Json{{"word", s.word}, {"dim", s.gen.dim}, {"index", s.gen.index}}; }

/// Coefficients stay exact: numbers when they fit in 64 bits, decimal strings otherwise.
inline Json to_json(const Int& k)
{
    if (k >= std::numeric_limits<long long>::min() && k <= std::numeric_limits<long long>::max())
        return Json(static_cast<long long>(k));
    return Json(k.str());
}

template <class B>
Json to_json(const Word<B>& w)
{
    Json out = Json::array();
    for (const auto& l : w.letters) out.push_back(to_json(l));
    return out;
}

template <class A, class B>
Json to_json(const Pair<A, B>& p)
{
    return Json::array({to_json(p.first), to_json(p.second)});
}

template <class B>
Json to_json(const Lin<B>& x)
{
    Json out = Json::array();
    for (const auto& [b, k] : x) out.push_back(Json{{"basis", to_json(b)}, {"coefficient", to_json(k)}});
    return out;
}

/// { "generators": [[labels per dim]], "faces": { "<dim>/<index>": [face simplices] } }
inline Json to_json(const SimplicialSet& K)
{
    Json out;
    out["generators"] = K.labels();
    Json faces = Json::object();
    for (int n = 1; n <= K.top_dimension(); ++n)
        for (const auto& c : K.cells(n)) {
            Json fs = Json::array();
            for (const auto& f : K.generator_faces(c)) fs.push_back(to_json(f));
            faces[describe(c)] = std::move(fs);
        }
    out["faces"] = std::move(faces);
    return out;
}

/// Inverse of to_json; validates the simplicial identities before accepting.
inline SSetPtr simplicial_set_from_json(const Json& j)
{
    try {
        auto labels = j.at("generators").get<std::vector<std::vector<std::string>>>();
        std::vector<std::vector<std::vector<Simplex>>> faces(labels.size());
        for (std::size_t n = 0; n < labels.size(); ++n) {
            faces[n].resize(labels[n].size());
            if (n == 0) continue;
            for (std::size_t k = 0; k < labels[n].size(); ++k) {
                const auto key = std::to_string(n) + "/" + std::to_string(k);
                if (!j.at("faces").contains(key)) throw PreconditionError("missing faces of generator " + key);
                for (const auto& f : j.at("faces").at(key))
                    faces[n][k].push_back(
                        Simplex{f.at("word").get<std::vector<int>>(), Cell{f.at("dim").get<int>(), f.at("index").get<int>()}});
            }
        }
        auto K = std::make_shared<SimplicialSet>(std::move(labels), std::move(faces));
        if (const auto err = K->check_identities(); !err.empty()) throw PreconditionError("invalid simplicial set: " + err);
        return K;
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("invalid simplicial set JSON: ") + e.what());
    }
}

inline Json to_json(const DiagonalResult& D)
{
    Json gens = Json::array();
    for (const auto& [x, img] : D.images) gens.push_back(Json{{"generator", to_json(x)}, {"image", to_json(img)}});
    return Json{{"method", method_name(D.method)}, {"bound", D.bound}, {"generators", std::move(gens)}};
}

} // namespace awcobar
