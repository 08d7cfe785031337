#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcoh/bloch.hpp"
#include "qcoh/density.hpp"
#include "qcoh/enhancement.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/purification.hpp"
#include "qcoh/statefile.hpp"

namespace qcoh {

/// Combined verdict sheet for one input state.
struct AnalysisReport {
    StateFile input;
    double c_l1;
    double gamma;
    double lambda_max;
    double ceiling;
    bool enhanceable;
    double condition_residual;
    bool purifiable_possible;
    bool full_rank;
    double lambda_min;
    std::optional<StochasticSIO> kraus_witness;
    std::optional<DecompositionWitness> decomposition_witness;
};

/// Runs the full measure/enhancement/purification analysis. Incoherent
/// inputs get vacuous-false verdicts instead of errors; the m-matrix
/// spectrum is still reported (it degenerates to the support indicator,
/// so the ceiling reads 0).
inline AnalysisReport analyze(const DensityMatrix& rho, double residual_tol = 1e-9) {
    AnalysisReport r{StateFile::from_matrix(rho.matrix()),
                     c_l1(rho),
                     0.0,
                     hermitian_eig(m_matrix(rho)).max(),
                     0.0,
                     false,
                     0.0,
                     false,
                     false,
                     0.0,
                     std::nullopt,
                     std::nullopt};
    r.ceiling = r.lambda_max - 1.0;

    if (r.c_l1 > tol::kIncoherent) {
        EnhancementReport enh = enhancement_check(rho, residual_tol);
        r.enhanceable = enh.enhanceable;
        r.condition_residual = enh.condition_residual;
        r.kraus_witness = std::move(enh.witness);
    }

    PurificationReport pur = purifiability_check(rho);
    r.gamma = pur.gamma;
    r.purifiable_possible = pur.purifiable_possible;
    r.full_rank = pur.full_rank;
    r.lambda_min = pur.lambda_min;
    r.decomposition_witness = std::move(pur.witness);
    return r;
}

/// Numbers are printed with 12 significant digits in text mode; JSON mode
/// carries full doubles, so both agree to 12 digits.
inline std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline nlohmann::json report_to_json(const AnalysisReport& r) {
    nlohmann::json witnesses = nlohmann::json::object();
    if (r.kraus_witness) {
        nlohmann::json ops = nlohmann::json::array();
        for (const KrausOperator& k : r.kraus_witness->kraus())
            ops.push_back(StateFile::from_matrix(k.matrix()));
        witnesses["kraus"] = std::move(ops);
    }
    if (r.decomposition_witness) {
        const DecompositionWitness& w = *r.decomposition_witness;
        witnesses["decomposition"] = {{"lambda", w.lambda},
                                      {"sigma", StateFile::from_matrix(w.sigma.matrix())},
                                      {"tau", StateFile::from_matrix(w.tau.matrix())},
                                      {"degenerate", w.degenerate}};
    }
    return nlohmann::json{{"input", r.input},
                          {"c_l1", r.c_l1},
                          {"gamma", r.gamma},
                          {"lambda_max", r.lambda_max},
                          {"ceiling", r.ceiling},
                          {"enhanceable", r.enhanceable},
                          {"condition_residual", r.condition_residual},
                          {"purifiable_possible", r.purifiable_possible},
                          {"full_rank", r.full_rank},
                          {"lambda_min", r.lambda_min},
                          {"witnesses", std::move(witnesses)}};
}

inline void report_to_text(std::ostream& out, const AnalysisReport& r) {
    out << "dim:                 " << r.input.dim << "\n";
    out << "c_l1:                " << fmt12(r.c_l1) << "\n";
    out << "gamma:               " << fmt12(r.gamma) << "\n";
    out << "lambda_max:          " << fmt12(r.lambda_max) << "\n";
    out << "ceiling:             " << fmt12(r.ceiling) << "\n";
    out << "enhanceable:         " << (r.enhanceable ? "true" : "false") << "\n";
    out << "condition_residual:  " << fmt12(r.condition_residual) << "\n";
    out << "purifiable_possible: " << (r.purifiable_possible ? "true" : "false") << "\n";
    out << "full_rank:           " << (r.full_rank ? "true" : "false") << "\n";
    out << "lambda_min:          " << fmt12(r.lambda_min) << "\n";
    if (r.kraus_witness) {
        out << "kraus_witness:       diag(";
        const Matrix& k = r.kraus_witness->kraus().front().matrix();
        for (std::size_t i = 0; i < k.dim(); ++i)
            out << (i ? ", " : "") << fmt12(k(i, i).real());
        out << ")\n";
    }
    if (r.decomposition_witness)
        out << "decomposition:       lambda = " << fmt12(r.decomposition_witness->lambda)
            << (r.decomposition_witness->degenerate ? " (maximally mixed)" : "") << "\n";
}

/// Bloch survey CSV: fixed header, one row per cell in grid order, numbers
/// at 12 significant digits. Deterministic, so re-runs are byte identical.
inline void write_bloch_csv(std::ostream& out, const std::vector<BlochCell>& cells) {
    out << "r,theta,phi,c_l1,ceiling,enhanceable,purifiable_possible\n";
    for (const BlochCell& c : cells) {
        out << fmt12(c.bloch.r) << ',' << fmt12(c.bloch.theta) << ',' << fmt12(c.bloch.phi)
            << ',' << fmt12(c.c_l1) << ',' << fmt12(c.ceiling) << ','
            << (c.enhanceable ? "true" : "false") << ','
            << (c.purifiable_possible ? "true" : "false") << "\n";
    }
}

}  // namespace qcoh
