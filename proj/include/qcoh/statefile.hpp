#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcoh/density.hpp"
#include "qcoh/matrix.hpp"

namespace qcoh {

/// On-disk state interchange format: {"dim": d, "re": [[...]], "im": [[...]]},
/// row-major real and imaginary parts.
struct StateFile {
    int dim = 0;
    std::vector<std::vector<double>> re;
    std::vector<std::vector<double>> im;

    static StateFile from_matrix(const Matrix& m) {
        StateFile f;
        f.dim = static_cast<int>(m.dim());
        f.re.assign(m.dim(), std::vector<double>(m.dim()));
        f.im.assign(m.dim(), std::vector<double>(m.dim()));
        for (std::size_t i = 0; i < m.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) {
                f.re[i][j] = m(i, j).real();
                f.im[i][j] = m(i, j).imag();
            }
        return f;
    }

    Matrix to_matrix() const {
        if (dim < 1) throw ParseError("state file: dim must be a positive integer");
        const auto n = static_cast<std::size_t>(dim);
        if (re.size() != n || im.size() != n)
            throw ParseError("state file: re/im must have dim rows");
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (re[i].size() != n || im[i].size() != n)
                throw ParseError("state file: re/im must have dim columns per row");
            for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex{re[i][j], im[i][j]};
        }
        return m;
    }
};

inline void to_json(nlohmann::json& j, const StateFile& f) {
    j = nlohmann::json{{"dim", f.dim}, {"re", f.re}, {"im", f.im}};
}

inline void from_json(const nlohmann::json& j, StateFile& f) {
    if (!j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw ParseError("state file: required keys are dim, re, im");
    try {
        j.at("dim").get_to(f.dim);
        j.at("re").get_to(f.re);
        j.at("im").get_to(f.im);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("state file: ") + e.what());
    }
}

/// Reads and validates a density matrix; throws ParseError for malformed
/// files and InvalidDensityMatrixError naming the violated invariant.
inline DensityMatrix read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("state file is not valid JSON: ") + e.what());
    }
    const StateFile f = j.get<StateFile>();
    return DensityMatrix(f.to_matrix());
}

inline void write_state_file(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write state file: " + path);
    const nlohmann::json j = StateFile::from_matrix(m);
    out << j.dump(2) << "\n";
}

}  // namespace qcoh
