#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fskan/scalar.hpp"

namespace fskan {

// Flow family of the similarity equation f''' + beta0*f*f'' + beta*(1 - f'^2) = 0.
struct FlowParams {
    double beta0 = 1.0;
    double beta = 0.0;
};

// Existence boundary for the similarity problem: below this beta the
// shooting layer reports bracket failure instead of converging.
inline constexpr double kBetaMin = -0.198837735;

template <class Real>
struct InitialTriple {
    Real f{};    // f(eta0)
    Real fp{};   // f'(eta0)
    Real fpp{};  // f''(eta0)
};

template <class Real>
struct StateTriple {
    double eta = 0.0;
    Real f{};
    Real fp{};
    Real fpp{};
};

// Scaled derivatives a_k = f^(k)(eta0)/k! of one series block.
template <class Real>
struct CoeffBlock {
    double eta0 = 0.0;
    std::vector<Real> coeffs;  // a_0 .. a_K
    FlowParams params;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct SolverConfig {
    double h = 1.0;          // continuation step in eta
    double eta_max = 20.0;   // march horizon
    int terms = 30;          // series order K per block
    double tol = 1e-14;      // acceleration tolerance per partial-sum limit
    Tier tier = Tier::Standard;
    int max_halvings = 6;    // local step halvings before giving up
    double tau_inf = 5e-7;   // |1 - f'| threshold for the free boundary
    bool stop_on_classification = true;
};

// Defaults tuned per tier; horizon widened for beta < 0 where the free
// boundary sits further out.
inline SolverConfig default_config(const FlowParams& p, Tier tier = Tier::Standard)
{
    SolverConfig cfg;
    cfg.tier = tier;
    cfg.eta_max = p.beta < 0.0 ? 30.0 : 20.0;
    if (tier == Tier::Extended) {
        cfg.tol = 1e-30;
        cfg.terms = 48;
    }
    return cfg;
}

enum class TrajClass { Overshoot, Undershoot, Undecided };

inline const char* to_cstring(TrajClass c)
{
    switch (c) {
        case TrajClass::Overshoot: return "overshoot";
        case TrajClass::Undershoot: return "undershoot";
        default: return "undecided";
    }
}

// One continuation interval: series block expanded at eta0, valid on
// [eta0, eta0 + width].
template <class Real>
struct TrajBlock {
    double eta0 = 0.0;
    double width = 0.0;
    CoeffBlock<Real> block;
};

template <class Real>
struct Trajectory {
    FlowParams params;
    Real alpha{};
    std::vector<StateTriple<Real>> points;   // retained grid 0, h, 2h, ...
    std::vector<TrajBlock<Real>> blocks;     // contiguous cover of [0, stop_eta]
    TrajClass classification = TrajClass::Undecided;
    double stop_eta = 0.0;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Acceleration of a partial-sum sequence did not reach the requested
// tolerance; carries the component and the best error estimate seen.
struct NonConvergence : SolverError {
    NonConvergence(const std::string& which, double best)
        : SolverError("acceleration did not converge for " + which +
                      " (best e_We " + std::to_string(best) + ")"),
          component(which), best_err(best) {}
    std::string component;
    double best_err;
};

// A continuation step kept failing after all local halvings.
struct StepFailure : SolverError {
    StepFailure(double where, double fp, const std::string& detail)
        : SolverError("continuation step failed at eta = " + std::to_string(where) + ": " + detail),
          eta(where), last_fp(fp) {}
    double eta;
    double last_fp;  // f' at the last good point, for branch triage
};

struct BracketFailure : SolverError {
    using SolverError::SolverError;
};

struct MaxIterations : SolverError {
    using SolverError::SolverError;
};

// eta_infinity scan exhausted the march horizon.
struct NotReached : SolverError {
    using SolverError::SolverError;
};

// displacement plateau not found before eta_max.
struct NoPlateau : SolverError {
    using SolverError::SolverError;
};

} // namespace fskan
