/**
 * JSON loaders for operad input files: algebras with involution and generic
 * per-arity composition tables.  Every load ends with a full axiom check, so
 * a malformed input reports the first violated identity.
 */

#ifndef BRKZ_OPERAD_JSON_HPP
#define BRKZ_OPERAD_JSON_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "brkz/cyclic.hpp"
#include "brkz/errors.hpp"
#include "brkz/matrix.hpp"
#include "brkz/rational.hpp"

namespace brkz::cyclic {

namespace detail {

inline Rational json_rational(const nlohmann::json& j)
{
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return rational_from_string(j.get<std::string>());
        } catch (const std::exception& e) {
            throw validation_error(std::string("operad json: bad rational: ") + e.what());
        }
    }
    throw validation_error("operad json: rational entries must be integers or \"p/q\" strings");
}

inline RationalMatrix json_matrix(const nlohmann::json& j, int rows, int cols,
                                  const std::string& what)
{
    if (!j.is_array() || (int)j.size() != rows)
        throw validation_error("operad json: " + what + " must have " + std::to_string(rows) +
                               " rows");
    RationalMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || (int)j[i].size() != cols)
            throw validation_error("operad json: " + what + " row " + std::to_string(i) +
                                   " must have " + std::to_string(cols) + " entries");
        for (int k = 0; k < cols; ++k) {
            Rational v = json_rational(j[i][k]);
            if (v != 0) m.add_entry(i, k, v);
        }
    }
    return m;
}

} // namespace detail

/** Parse {"type":"involutive_algebra", ...}; validates all algebra axioms. */
inline AlgebraWithInvolution algebra_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || j.value("type", "") != "involutive_algebra")
        throw validation_error("operad json: expected type \"involutive_algebra\"");
    AlgebraWithInvolution b;
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw validation_error("operad json: missing integer \"dim\"");
    b.dim = j["dim"].get<int>();
    if (b.dim < 0) throw validation_error("operad json: negative dim");
    if (!j.contains("mult")) throw validation_error("operad json: missing \"mult\"");
    const auto& mj = j["mult"];
    if (!mj.is_array() || (int)mj.size() != b.dim)
        throw validation_error("operad json: mult must be a dim x dim x dim table");
    b.mult.assign(b.dim, std::vector<std::vector<Rational>>(b.dim));
    for (int i = 0; i < b.dim; ++i) {
        if (!mj[i].is_array() || (int)mj[i].size() != b.dim)
            throw validation_error("operad json: mult must be a dim x dim x dim table");
        for (int k = 0; k < b.dim; ++k) {
            if (!mj[i][k].is_array() || (int)mj[i][k].size() != b.dim)
                throw validation_error("operad json: mult must be a dim x dim x dim table");
            b.mult[i][k].resize(b.dim);
            for (int l = 0; l < b.dim; ++l) b.mult[i][k][l] = detail::json_rational(mj[i][k][l]);
        }
    }
    if (!j.contains("sigma")) throw validation_error("operad json: missing \"sigma\"");
    b.sigma = detail::json_matrix(j["sigma"], b.dim, b.dim, "sigma");
    if (j.contains("unit")) {
        const auto& uj = j["unit"];
        if (!uj.is_array() || (int)uj.size() != b.dim)
            throw validation_error("operad json: unit must have dim entries");
        b.unital = true;
        b.unit.resize(b.dim);
        for (int i = 0; i < b.dim; ++i) b.unit[i] = detail::json_rational(uj[i]);
    }
    if (j.contains("names")) {
        for (const auto& s : j["names"]) b.names.push_back(s.get<std::string>());
        if ((int)b.names.size() != b.dim)
            throw validation_error("operad json: names must have dim entries");
    }
    b.validate();
    return b;
}

/**
 * Parse an operad input file.  "involutive_algebra" yields the support-2
 * operad of the algebra; "tables" gives full per-arity data:
 *   {"type":"tables",
 *    "arities": {"3": {"dim":d, "gens":[mat,...], "labels":[...]}, ...},
 *    "comp":    [{"m":3, "n":3, "matrix":mat}, ...]}
 * with gens the adjacent transpositions s_0..s_{n-2} and comp matrices of
 * shape dim(m+n-2) x dim(m)*dim(n), columns indexed i*dim(n)+j.
 * Validation reports the first violated identity.
 */
inline CyclicOperadData operad_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw validation_error("operad json: missing string \"type\"");
    std::string type = j["type"].get<std::string>();
    if (type == "involutive_algebra") return operad_from_involutive_algebra(algebra_from_json(j));
    if (type != "tables")
        throw validation_error("operad json: unknown type \"" + type + "\"");
    CyclicOperadData c;
    if (!j.contains("arities") || !j["arities"].is_object())
        throw validation_error("operad json: missing object \"arities\"");
    for (const auto& [key, aj] : j["arities"].items()) {
        int n;
        try {
            n = std::stoi(key);
        } catch (const std::exception&) {
            throw validation_error("operad json: arity key \"" + key + "\" is not an integer");
        }
        if (n < 1) throw validation_error("operad json: arity must be positive");
        if (!aj.contains("dim") || !aj["dim"].is_number_integer())
            throw validation_error("operad json: arity " + key + " missing integer \"dim\"");
        int d = aj["dim"].get<int>();
        if (d <= 0) throw validation_error("operad json: arity " + key + " dim must be positive");
        c.underlying.dims[n] = d;
        const auto& gj = aj.contains("gens") ? aj["gens"] : nlohmann::json::array();
        if ((int)gj.size() != std::max(0, n - 1))
            throw validation_error("operad json: arity " + key + " needs " +
                                   std::to_string(std::max(0, n - 1)) + " generator matrices");
        std::vector<RationalMatrix> gens;
        for (int k = 0; k < (int)gj.size(); ++k)
            gens.push_back(detail::json_matrix(gj[k], d, d,
                                               "arity " + key + " generator " + std::to_string(k)));
        c.underlying.gens[n] = std::move(gens);
        if (aj.contains("labels")) {
            std::vector<std::string> lbl;
            for (const auto& s : aj["labels"]) lbl.push_back(s.get<std::string>());
            if ((int)lbl.size() != d)
                throw validation_error("operad json: arity " + key + " labels size mismatch");
            c.underlying.labels[n] = std::move(lbl);
        }
    }
    if (j.contains("comp")) {
        if (!j["comp"].is_array()) throw validation_error("operad json: \"comp\" must be a list");
        for (const auto& cj : j["comp"]) {
            if (!cj.contains("m") || !cj.contains("n") || !cj.contains("matrix"))
                throw validation_error("operad json: comp entries need m, n, matrix");
            int m = cj["m"].get<int>(), n = cj["n"].get<int>();
            if (c.dim(m) == 0 || c.dim(n) == 0 || m + n - 2 < 0 || c.dim(m + n - 2) == 0)
                throw validation_error("operad json: comp at unsupported pair (" +
                                       std::to_string(m) + "," + std::to_string(n) + ")");
            c.comp[{m, n}] = detail::json_matrix(cj["matrix"], c.dim(m + n - 2),
                                                 c.dim(m) * c.dim(n),
                                                 "comp(" + std::to_string(m) + "," +
                                                     std::to_string(n) + ")");
        }
    }
    try {
        c.validate();
    } catch (const invariant_error& e) {
        // axiom failures in user input are validation problems
        throw validation_error(e.what());
    }
    return c;
}

inline nlohmann::json algebra_to_json(const AlgebraWithInvolution& b)
{
    nlohmann::json j;
    j["type"] = "involutive_algebra";
    j["dim"] = b.dim;
    auto rat = [](const Rational& v) { return nlohmann::json(rational_to_string(v)); };
    nlohmann::json mj = nlohmann::json::array();
    for (int i = 0; i < b.dim; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < b.dim; ++k) {
            nlohmann::json entry = nlohmann::json::array();
            for (int l = 0; l < b.dim; ++l) entry.push_back(rat(b.mult[i][k][l]));
            row.push_back(std::move(entry));
        }
        mj.push_back(std::move(row));
    }
    j["mult"] = std::move(mj);
    nlohmann::json sj = nlohmann::json::array();
    for (int i = 0; i < b.dim; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < b.dim; ++k) row.push_back(rat(b.sigma.at(i, k)));
        sj.push_back(std::move(row));
    }
    j["sigma"] = std::move(sj);
    if (b.unital) {
        nlohmann::json uj = nlohmann::json::array();
        for (int i = 0; i < b.dim; ++i) uj.push_back(rat(b.unit[i]));
        j["unit"] = std::move(uj);
    }
    if (!b.names.empty()) j["names"] = b.names;
    return j;
}

} // namespace brkz::cyclic

#endif
