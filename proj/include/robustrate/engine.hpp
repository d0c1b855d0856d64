#pragma once

// Iterative credibility/trust fixed point.
//
// Starting from normalised vote counts, the engine alternates
//
//   trust:        T_r      = sum of rho over the items voter r chose
//   credibility:  rho_li   = S_li / ||S_l||_2,  S_li = sum_{r chose li} T_r^alpha
//
// until successive credibility vectors are within epsilon. The credibility
// map is the per-list normalised gradient of F(rho) = sum_r T_r^(alpha+1), so
// its fixed points are stationary points of F on the product of unit spheres
// (one sphere per voted list). Each step is guarded by a line search along the
// chord rho -> rho*; the step is shortened only when F has an interior
// stationary point on that chord.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "robustrate/core.hpp"
#include "robustrate/kernels.hpp"

namespace robustrate {

/// Every voter on some voted list has zero trust, so the list's credibility
/// vector cannot be normalised.
class AllZeroTrustOnList : public Error {
public:
    explicit AllZeroTrustOnList(Index list);
    Index list() const { return list_; }

private:
    Index list_;
};

enum class ZeroTrustPolicy {
    raise,     ///< throw AllZeroTrustOnList
    fallback,  ///< reuse the count-based credibilities for the affected list
};

struct EngineParams {
    double alpha = 2.0;
    double epsilon = 1e-9;
    std::size_t max_iters = 200;
    double p_exponent = 2.0;
    ZeroTrustPolicy zero_trust = ZeroTrustPolicy::raise;
    kernels::Backend backend = kernels::Backend::parallel;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

struct RunResult {
    CredibilityState rho;
    TrustState trust;
    std::size_t iterations = 0;
    std::vector<double> objective_trace;  ///< F at the initial state and after every iteration
    double final_residual = 0.0;
    std::size_t line_search_activations = 0;
    bool converged = false;
};

/// Called with the state after initialisation (iteration 0) and after every
/// completed iteration.
using IterationObserver =
    std::function<void(std::size_t iteration, const CredibilityState& rho, const TrustState& trust)>;

/// Normalised vote counts.
CredibilityState initialize(const VoteGraph& graph);

TrustState update_trust(const VoteGraph& graph, const CredibilityState& rho,
                        kernels::Backend backend = kernels::Backend::parallel);

CredibilityState update_credibility(const VoteGraph& graph, const TrustState& trust, double alpha,
                                    ZeroTrustPolicy policy = ZeroTrustPolicy::raise,
                                    kernels::Backend backend = kernels::Backend::parallel);

/// F(rho) = sum_r T_r(rho)^(alpha+1).
double objective(const VoteGraph& graph, const CredibilityState& rho, double alpha);
double objective(const TrustState& trust, double alpha);

/// dF/drho_li = (alpha+1) * sum_{r chose li} T_r^alpha, over the flat item space.
std::vector<double> gradient(const VoteGraph& graph, const CredibilityState& rho, double alpha);

/// ||rho - rho*|| where rho* is the credibility image of rho's trust.
double fixed_point_residual(const VoteGraph& graph, const CredibilityState& rho, double alpha);

/// Smallest t in (0, 1) where `derivative` vanishes, located by scanning a
/// uniform grid for a sign change and bisecting the first bracket to `tol`.
std::optional<double> smallest_stationary_point(const std::function<double(double)>& derivative,
                                                double tol = 1e-12, std::size_t grid = 256);

struct LineSearchStep {
    CredibilityState rho;
    bool activated = false;
    double t = 1.0;
};

/// Safeguarded move from `rho` toward `rho_star`. With f(t) = F(rho + t (rho* - rho)),
/// returns the per-list renormalised point at the smallest interior
/// stationary t of f when one exists, otherwise `rho_star` itself.
LineSearchStep line_search_step(const VoteGraph& graph, const CredibilityState& rho,
                                const CredibilityState& rho_star, double alpha);

RunResult run(const VoteGraph& graph, const EngineParams& params, const IterationObserver& observer = {});

}  // namespace robustrate
