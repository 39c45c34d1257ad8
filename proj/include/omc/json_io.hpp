#pragma once

// JSON (de)serialization.
//
// category.v1: { "schema": "category.v1", "name"?, "cap",
//                "cells": [{"dim","id"}...],
//                "src":   [{"from","to","dim"?}...],   // dim of "from"
//                "tgt":   [{"from","to","dim"?}...],
//                "units": [{"of","is","dim"?}...],     // dim of "of"
//                "comps": [{"dimK","dimP","left","right","result"}...] }
// Entries without "dim" are resolved by id across dimensions and must be
// unambiguous. Writers always emit "dim".
//
// functor.v1: { "schema": "functor.v1", "name"?, "dom": <category.v1>,
//               "cod": <category.v1>, "map": [{"dim","from","to"}...] }
// "to" may name a cell of lower dimension: the image is its unit pad.

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "omc/category.hpp"
#include "omc/functor.hpp"
#include "omc/report.hpp"

namespace omc {

using Json = nlohmann::ordered_json;

inline Json report_to_json(const CheckReport& rep) {
    Json j;
    j["subject"] = rep.subject();
    j["verdict"] = rep.ok() ? "ok" : (rep.refuted() ? "failed" : "inconclusive");
    j["checked"] = rep.checked();
    j["failures"] = rep.failures();
    j["inconclusive"] = rep.inconclusives();
    Json v = Json::array();
    for (const auto& x : rep.violations()) v.push_back({{"law", x.law}, {"detail", x.detail}});
    j["violations"] = v;
    return j;
}

inline Json category_to_json(const FiniteOmegaCat& C) {
    Json j;
    j["schema"] = "category.v1";
    if (!C.name().empty()) j["name"] = C.name();
    j["cap"] = C.cap();
    Json cells = Json::array(), src = Json::array(), tgt = Json::array(),
         units = Json::array(), comps = Json::array();
    for (int k = 0; k <= C.stored_cap(); ++k)
        for (auto c : C.cells_at(k)) {
            cells.push_back({{"dim", k}, {"id", C.display(c)}});
            if (k > 0) {
                src.push_back({{"dim", k}, {"from", C.display(c)}, {"to", C.display(C.src(c))}});
                tgt.push_back({{"dim", k}, {"from", C.display(c)}, {"to", C.display(C.tgt(c))}});
            }
            if (k < C.stored_cap())
                units.push_back({{"dim", k}, {"of", C.display(c)}, {"is", C.display(C.unit(c))}});
        }
    for (int k = 1; k <= C.stored_cap(); ++k)
        for (int p = 0; p < k; ++p)
            for (const auto& [ab, c] : C.comp_entries(k, p))
                comps.push_back({{"dimK", k},
                                 {"dimP", p},
                                 {"left", C.id_of(ab.first)},
                                 {"right", C.id_of(ab.second)},
                                 {"result", C.id_of(c)}});
    j["cells"] = cells;
    j["src"] = src;
    j["tgt"] = tgt;
    j["units"] = units;
    j["comps"] = comps;
    return j;
}

namespace detail {
// Id -> dim lookup for schema entries that omit "dim".
class IdDims {
public:
    void add(int dim, const std::string& id) { dims_[id].push_back(dim); }
    int resolve(const Json& entry, const char* field, const std::string& id) const {
        if (entry.contains("dim")) return entry.at("dim").get<int>();
        auto it = dims_.find(id);
        if (it == dims_.end()) throw schema_error("unknown cell id '" + id + "'");
        if (it->second.size() > 1)
            throw schema_error("ambiguous cell id '" + id + "' (give \"dim\" in " +
                               std::string(field) + ")");
        return it->second.front();
    }

private:
    std::map<std::string, std::vector<int>> dims_;
};
} // namespace detail

inline CatPtr category_from_json(const Json& j) {
    if (!j.is_object() || j.value("schema", "") != "category.v1")
        throw schema_error("expected a category.v1 object");
    if (!j.contains("cap") || !j.at("cap").is_number_integer())
        throw schema_error("category.v1: missing integer cap");
    int cap = j.at("cap").get<int>();
    std::string name = j.value("name", "");

    struct RawCell {
        int dim;
        std::string id, src, tgt;
    };
    std::map<std::pair<int, std::string>, RawCell> raw;
    detail::IdDims dims;
    for (const auto& e : j.value("cells", Json::array())) {
        int d = e.at("dim").get<int>();
        std::string id = e.at("id").get<std::string>();
        if (raw.count({d, id})) throw schema_error("duplicate cell " + id);
        raw[{d, id}] = RawCell{d, id, "", ""};
        dims.add(d, id);
    }
    auto fill = [&](const char* field, bool src_side) {
        for (const auto& e : j.value(field, Json::array())) {
            std::string from = e.at("from").get<std::string>();
            int d = dims.resolve(e, field, from);
            auto it = raw.find({d, from});
            if (it == raw.end()) throw schema_error(std::string(field) + ": unknown cell " + from);
            (src_side ? it->second.src : it->second.tgt) = e.at("to").get<std::string>();
        }
    };
    fill("src", true);
    fill("tgt", false);

    CatBuilder b(name, cap);
    for (const auto& [key, c] : raw) {
        if (c.dim > 0 && (c.src.empty() || c.tgt.empty()))
            throw schema_error("cell '" + c.id + "' lacks boundaries");
        b.add_cell(c.dim, c.id, c.src, c.tgt);
    }
    for (const auto& e : j.value("units", Json::array())) {
        std::string of = e.at("of").get<std::string>();
        int d = dims.resolve(e, "units", of);
        b.set_unit(d, of, e.at("is").get<std::string>());
    }
    for (const auto& e : j.value("comps", Json::array()))
        b.add_comp(e.at("dimK").get<int>(), e.at("dimP").get<int>(),
                   e.at("left").get<std::string>(), e.at("right").get<std::string>(),
                   e.at("result").get<std::string>());
    return b.build();
}

inline Json functor_to_json(const OmegaFunctor& f) {
    Json j;
    j["schema"] = "functor.v1";
    if (!f.name().empty()) j["name"] = f.name();
    j["dom"] = category_to_json(*f.dom());
    j["cod"] = category_to_json(*f.cod());
    Json map = Json::array();
    const auto& D = *f.dom();
    const auto& C = *f.cod();
    for (int k = 0; k <= D.stored_cap(); ++k)
        for (auto c : D.cells_at(k)) {
            VCell img = f.apply(c);
            map.push_back({{"dim", k},
                           {"from", D.display(c)},
                           {"to", C.id_of(img.base)},
                           {"toDim", img.base.dim}});
        }
    j["map"] = map;
    return j;
}

inline OmegaFunctor functor_from_json(const Json& j) {
    if (!j.is_object() || j.value("schema", "") != "functor.v1")
        throw schema_error("expected a functor.v1 object");
    CatPtr dom = category_from_json(j.at("dom"));
    CatPtr cod = category_from_json(j.at("cod"));
    std::vector<std::vector<VCell>> m(dom->stored_cap() + 1);
    for (int k = 0; k <= dom->stored_cap(); ++k)
        m[k].assign(dom->size(k), VCell{});
    std::vector<std::vector<bool>> seen(dom->stored_cap() + 1);
    for (int k = 0; k <= dom->stored_cap(); ++k) seen[k].assign(dom->size(k), false);
    for (const auto& e : j.value("map", Json::array())) {
        int d = e.at("dim").get<int>();
        auto c = dom->find(d, e.at("from").get<std::string>());
        if (!c) throw schema_error("functor map: unknown domain cell " + e.at("from").dump());
        std::string to = e.at("to").get<std::string>();
        if (e.contains("toDim")) {
            auto t = cod->find(e.at("toDim").get<int>(), to);
            if (!t) throw schema_error("functor map: unknown codomain cell " + to);
            m[d][c->idx] = cod->pad(cod->vcell(*t), d);
        } else {
            m[d][c->idx] = cod->resolve(CellRef{d, to});
        }
        seen[d][c->idx] = true;
    }
    for (int k = 0; k <= dom->stored_cap(); ++k)
        for (std::size_t i = 0; i < seen[k].size(); ++i)
            if (!seen[k][i])
                throw schema_error("functor map: no image for " +
                                   dom->display(VCell{Cell{k, static_cast<int>(i)}, k}));
    return OmegaFunctor(dom, cod, std::move(m), j.value("name", ""));
}

} // namespace omc
