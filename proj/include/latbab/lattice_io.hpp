#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "latbab/catalog.hpp"
#include "latbab/errors.hpp"
#include "latbab/lattice.hpp"
#include "latbab/scalar_expr.hpp"

namespace latbab {

// Lattice file format: { "n": int, "basis": [[entry, ...], ...] } where
// basis[j] is the j-th basis vector (column convention) and each entry is an
// integer, a string "p/q" / decimal / "r*sqrt(s)", or a JSON number.
// Non-integer JSON numbers are normalized to the nearest small rational;
// use string entries for exact control.
inline LatticeBasis parse_lattice_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ParseError("lattice file: missing integer field 'n'");
    if (!j.contains("basis") || !j["basis"].is_array())
        throw ParseError("lattice file: missing array field 'basis'");
    const std::size_t n = j["n"].get<std::size_t>();
    if (n < 1 || n > 24) throw ParseError("lattice file: n must be in [1, 24]");
    const auto& basis = j["basis"];
    if (basis.size() != n)
        throw DimensionMismatch("lattice file: expected " + std::to_string(n) +
                                " basis vectors, got " + std::to_string(basis.size()));
    ExactColumns cols(n);
    for (std::size_t col = 0; col < n; ++col) {
        const auto& vecj = basis[col];
        if (!vecj.is_array() || vecj.size() != n)
            throw DimensionMismatch("lattice file: basis vector " + std::to_string(col) +
                                    " must have " + std::to_string(n) + " components");
        for (std::size_t row = 0; row < n; ++row) {
            const auto& ej = vecj[row];
            try {
                if (ej.is_number_integer()) {
                    cols[col].push_back(ScalarExpr(Rational(ej.get<long long>())));
                } else if (ej.is_number_float()) {
                    cols[col].push_back(
                        ScalarExpr(rational_reconstruct(ej.get<double>(), 1000000000, 1e-9)));
                } else if (ej.is_string()) {
                    cols[col].push_back(parse_scalar_expr(ej.get<std::string>()));
                } else {
                    throw ParseError("entry is neither a number nor a string");
                }
            } catch (const Error& err) {
                throw ParseError("lattice file: basis vector " + std::to_string(col) +
                                 ", component " + std::to_string(row) + ": " + err.what());
            }
        }
    }
    return LatticeBasis(cols);
}

inline LatticeBasis parse_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("lattice file: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("lattice file '" + path + "': " + e.what());
    }
    return parse_lattice_json(j);
}

inline nlohmann::json lattice_to_json(const LatticeBasis& b) {
    nlohmann::json j;
    j["n"] = b.dim();
    nlohmann::json basis = nlohmann::json::array();
    for (std::size_t col = 0; col < b.dim(); ++col) {
        nlohmann::json vec = nlohmann::json::array();
        for (std::size_t row = 0; row < b.dim(); ++row) {
            if (b.exact())
                vec.push_back((*b.exact())[col][row].str());
            else
                vec.push_back(b.matrix()(row, col));
        }
        basis.push_back(vec);
    }
    j["basis"] = basis;
    return j;
}

// Resolves a --lattice argument: an existing file wins, otherwise a catalog
// name with a stored basis.
inline LatticeBasis load_lattice(const std::string& name_or_path) {
    std::ifstream probe(name_or_path);
    if (probe.good()) return parse_lattice_file(name_or_path);
    CatalogEntry e = catalog_lookup(name_or_path);
    if (!e.basis)
        throw UnknownLattice("lattice '" + name_or_path +
                             "' has no stored basis (published sizes only)");
    return *e.basis;
}

}  // namespace latbab
