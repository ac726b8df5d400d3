#pragma once

#include <json.hpp>

#include "uorbits/supercharacters.hpp"

namespace uorbits {

using json = nlohmann::json; // object keys are kept sorted, so dumps are canonical

inline json positions_json(const std::vector<Position>& ps) {
    json arr = json::array();
    for (auto p : ps) arr.push_back({p.i, p.j});
    return arr;
}

inline json field_elem_json(const FieldCtx& F, fq_t x) {
    if (F.k() == 1) return static_cast<int>(x);
    return json(F.coeffs(x));
}

inline json cyc_json(const CycNum& z) { return json(z.coeffs()); }

inline json label_json(const Context& ctx, const CharLabel& A) {
    json obj = json::object();
    for (auto p : support(ctx, A))
        obj[std::to_string(p.i) + "," + std::to_string(p.j)] =
            field_elem_json(ctx.fq, label_at(ctx, A, p.i, p.j));
    return obj;
}

inline json classification_json(const Context& ctx, const Classification& cls) {
    json j;
    j["mc"] = positions_json(cls.mc);
    j["lmc"] = positions_json(cls.lmc);
    j["rmc"] = positions_json(cls.rmc);
    j["minc"] = positions_json(cls.minc);
    j["suppl"] = positions_json(cls.suppl);
    j["places"] = positions_json(cls.places);
    j["limb"] = positions_json(cls.limb);
    j["j_set"] = positions_json(cls.j_set);
    j["verge"] = label_json(ctx, cls.verge);
    j["staircase"] = cls.staircase;
    j["main_separated"] = cls.main_separated;
    j["is_core"] = cls.is_core;
    j["is_verge"] = cls.is_verge;
    return j;
}

inline json orbit_json(const Context& ctx, const OrbitRecord& O, bool with_members = false) {
    json j;
    j["base"] = label_to_string(ctx, O.base);
    j["size"] = O.size;
    j["n_cores"] = O.n_cores;
    j["mc"] = positions_json(O.cls.mc);
    j["staircase"] = O.cls.staircase;
    j["main_separated"] = O.cls.main_separated;
    if (with_members) {
        json arr = json::array();
        for (const auto& m : O.members) arr.push_back(label_to_string(ctx, m));
        j["members"] = arr;
    }
    return j;
}

inline json mat_json(const FieldCtx& F, const Mat& m) {
    json rows = json::array();
    for (int i = 1; i <= m.N; ++i) {
        json row = json::array();
        for (int j = 1; j <= m.N; ++j) row.push_back(field_elem_json(F, m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

} // namespace uorbits
