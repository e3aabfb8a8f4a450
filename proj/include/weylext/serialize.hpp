// serialize.hpp — JSON/CSV/binary interchange for the CLI and file formats.
//
//   SymplecticMatrix  <-> {"half_dim": m, "rows": [[...], ...]}
//   ExtensionSpec     <-> {"n": n, "k": k, "s": {...}, "maslov": m}
//   OperatorMatrix     -> column-major complex binary + JSON sidecar
//                         {"shape": [rows, cols], "grid": {...}, "layout": ...}

#pragma once

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

#include "weylext/extension.hpp"
#include "weylext/grid.hpp"
#include "weylext/numerics.hpp"
#include "weylext/symplectic.hpp"

namespace weylext {

using json = nlohmann::ordered_json;

inline json to_json(const RMat& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline RMat rmat_from_json(const json& rows) {
    const long r = static_cast<long>(rows.size());
    if (r == 0) throw std::invalid_argument("rmat_from_json: empty matrix");
    const long c = static_cast<long>(rows.at(0).size());
    RMat m(r, c);
    for (long i = 0; i < r; ++i) {
        if (static_cast<long>(rows.at(i).size()) != c)
            throw std::invalid_argument("rmat_from_json: ragged rows");
        for (long j = 0; j < c; ++j) m(i, j) = rows.at(i).at(j).get<double>();
    }
    return m;
}

inline json to_json(const SymplecticMatrix& s) {
    return json{{"half_dim", s.half_dim}, {"rows", to_json(s.s)}};
}

inline SymplecticMatrix symplectic_from_json(const json& j) {
    SymplecticMatrix s(rmat_from_json(j.at("rows")));
    if (s.half_dim != j.at("half_dim").get<int>())
        throw std::invalid_argument("symplectic_from_json: half_dim does not match rows");
    return s;
}

inline json to_json(const Grid& g) {
    json axes = json::array();
    for (const auto& a : g.axes()) axes.push_back(json{{"half_width", a.half_width}, {"n", a.n}});
    return json{{"axes", axes}};
}

inline Grid grid_from_json(const json& j) {
    std::vector<Axis> axes;
    for (const auto& a : j.at("axes")) axes.push_back(Axis{a.at("half_width").get<double>(), a.at("n").get<int>()});
    return Grid(std::move(axes));
}

inline json to_json(const ExtensionSpec& spec, int maslov = 0) {
    return json{{"n", spec.n}, {"k", spec.k}, {"s", to_json(spec.s)}, {"maslov", maslov}};
}

inline ExtensionSpec extension_spec_from_json(const json& j) {
    return ExtensionSpec(j.at("n").get<int>(), j.at("k").get<int>(), symplectic_from_json(j.at("s")));
}

// raw column-major complex doubles; sidecar documents shape, grids and layout
inline void write_operator_binary(const OperatorMatrix& op, const std::string& path_base) {
    std::ofstream bin(path_base + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("write_operator_binary: cannot open " + path_base + ".bin");
    bin.write(reinterpret_cast<const char*>(op.m.data()),
              static_cast<std::streamsize>(sizeof(cplx) * static_cast<size_t>(op.m.size())));
    json side{{"shape", {op.m.rows(), op.m.cols()}},
              {"layout", "column-major complex128, index ordering x-major"},
              {"quadrature_absorbed", op.quadrature_absorbed},
              {"in_grid", to_json(op.in_grid)},
              {"out_grid", to_json(op.out_grid)}};
    std::ofstream sc(path_base + ".json");
    sc << side.dump(2) << "\n";
}

}  // namespace weylext
