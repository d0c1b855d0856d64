#include "robustrate/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace robustrate {

namespace {
// Neumaier-compensated sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

CredibilityState credibility_from_trust(const VoteGraph& graph, std::span<const double> trust, double alpha,
                                        ZeroTrustPolicy policy, kernels::Backend backend) {
    std::vector<double> powered(trust.size());
    kernels::power(backend, trust, alpha, powered);

    CredibilityState next(graph);
    kernels::support(backend, graph, powered, next.values());
    std::vector<std::uint8_t> degenerate(graph.num_lists(), 0);
    kernels::normalize(backend, graph, next.values(), degenerate);

    std::optional<CredibilityState> counts;
    for (Index l = 0; l < graph.num_lists(); ++l) {
        if (!graph.has_votes(l)) continue;
        if (degenerate[l]) {
            if (policy == ZeroTrustPolicy::raise) throw AllZeroTrustOnList(l);
            if (!counts) counts = initialize(graph);
            const auto src = counts->list(l);
            const auto dst = next.list(l);
            std::copy(src.begin(), src.end(), dst.begin());
        }
        next.set_has_data(l, true);
    }
    return next;
}

double chord_derivative(std::span<const double> base, std::span<const double> delta, double alpha, double t) {
    double sum = 0.0;
    for (std::size_t r = 0; r < base.size(); ++r) {
        if (delta[r] == 0.0) continue;
        const double x = std::max(0.0, base[r] + t * delta[r]);
        sum += delta[r] * std::pow(x, alpha);
    }
    return (alpha + 1.0) * sum;
}

// Bound on the rounding error of chord_derivative at t = 0: each delta_r
// carries about one ulp of error per item the voter chose.
double slope_noise(const VoteGraph& graph, std::span<const double> trust, double alpha) {
    double bound = 0.0;
    for (Index r = 0; r < graph.num_voters(); ++r)
        bound += static_cast<double>(graph.items_of(r).size() + 1) * std::pow(trust[r], alpha);
    return 8.0 * std::numeric_limits<double>::epsilon() * (alpha + 1.0) * bound;
}

LineSearchStep safeguarded_step(const VoteGraph& graph, const CredibilityState& rho, const CredibilityState& rho_star,
                                std::span<const double> trust, double alpha) {
    // Trust is linear in rho, so along the chord T(t) = T(rho) + t * T(rho* - rho).
    // The difference is formed per item first to keep it accurate near convergence.
    std::vector<double> step(rho.size());
    for (std::size_t k = 0; k < step.size(); ++k) step[k] = rho_star[k] - rho[k];
    std::vector<double> delta(graph.num_voters());
    kernels::trust_serial(graph, step, delta);

    const auto derivative = [&](double t) { return chord_derivative(trust, delta, alpha, t); };

    // For alpha >= 1 the chord objective is convex, so its derivative is
    // nondecreasing and a nonnegative slope at t = 0 rules out an interior
    // maximum. Near convergence the slope is a sum of cancelling terms, so
    // values within rounding noise of zero count as nonnegative.
    std::optional<double> t0;
    if (!(alpha >= 1.0 && derivative(0.0) >= -slope_noise(graph, trust, alpha))) t0 = smallest_stationary_point(derivative);
    if (!t0) return {rho_star, false, 1.0};

    CredibilityState moved(graph);
    std::vector<double> scratch;
    for (Index l = 0; l < graph.num_lists(); ++l) {
        if (!rho.has_data(l)) continue;
        const auto a = rho.list(l);
        const auto b = rho_star.list(l);
        const auto out = moved.list(l);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + *t0 * (b[i] - a[i]);
        const double norm = kernels::list_norm(out, scratch);
        for (double& v : out) v /= norm;
        moved.set_has_data(l, true);
    }
    return {std::move(moved), true, *t0};
}

}  // namespace

AllZeroTrustOnList::AllZeroTrustOnList(Index list)
    : Error("every voter on list " + std::to_string(list) + " has zero trust"), list_(list) {}

void EngineParams::validate() const {
    if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be >= 1");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(p_exponent >= 1.0)) throw std::invalid_argument("p must be >= 1");
}

CredibilityState initialize(const VoteGraph& graph) {
    CredibilityState rho(graph);
    std::vector<double> scratch;
    for (Index l = 0; l < graph.num_lists(); ++l) {
        if (!graph.has_votes(l)) continue;
        const auto values = rho.list(l);
        const std::size_t offset = graph.item_offset(l);
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = static_cast<double>(graph.voters_of(offset + i).size());
        const double norm = kernels::list_norm(values, scratch);
        for (double& v : values) v /= norm;
        rho.set_has_data(l, true);
    }
    return rho;
}

TrustState update_trust(const VoteGraph& graph, const CredibilityState& rho, kernels::Backend backend) {
    rho.check_shape(graph);
    TrustState trust{std::vector<double>(graph.num_voters())};
    kernels::trust(backend, graph, rho.values(), trust.t);
    return trust;
}

CredibilityState update_credibility(const VoteGraph& graph, const TrustState& trust, double alpha,
                                    ZeroTrustPolicy policy, kernels::Backend backend) {
    if (trust.size() != graph.num_voters())
        throw DimensionMismatch("trust vector has " + std::to_string(trust.size()) + " entries, graph has " +
                                std::to_string(graph.num_voters()) + " voters");
    if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be >= 1");
    return credibility_from_trust(graph, trust.t, alpha, policy, backend);
}

double objective(const TrustState& trust, double alpha) {
    CompensatedSum sum;
    for (double t : trust.t) sum.add(std::pow(t, alpha + 1.0));
    return sum.value();
}

double objective(const VoteGraph& graph, const CredibilityState& rho, double alpha) {
    return objective(update_trust(graph, rho, kernels::Backend::serial), alpha);
}

std::vector<double> gradient(const VoteGraph& graph, const CredibilityState& rho, double alpha) {
    const TrustState trust = update_trust(graph, rho, kernels::Backend::serial);
    std::vector<double> powered(trust.size());
    kernels::power_serial(trust.t, alpha, powered);
    std::vector<double> grad(graph.num_items());
    kernels::support_serial(graph, powered, grad);
    for (double& g : grad) g *= alpha + 1.0;
    return grad;
}

double fixed_point_residual(const VoteGraph& graph, const CredibilityState& rho, double alpha) {
    const TrustState trust = update_trust(graph, rho, kernels::Backend::serial);
    const CredibilityState image =
        update_credibility(graph, trust, alpha, ZeroTrustPolicy::raise, kernels::Backend::serial);
    return residual_norm(rho, image);
}

std::optional<double> smallest_stationary_point(const std::function<double(double)>& derivative, double tol,
                                                std::size_t grid) {
    double lo_t = 0.0;
    double lo_d = derivative(0.0);
    for (std::size_t j = 1; j <= grid; ++j) {
        const double hi_t = static_cast<double>(j) / static_cast<double>(grid);
        const double hi_d = derivative(hi_t);
        if (j < grid && hi_d == 0.0) return hi_t;
        if ((lo_d < 0.0 && hi_d > 0.0) || (lo_d > 0.0 && hi_d < 0.0)) {
            double a = lo_t;
            double b = hi_t;
            double da = lo_d;
            while (b - a > tol) {
                const double m = 0.5 * (a + b);
                const double dm = derivative(m);
                if (dm == 0.0) return m;
                if ((dm < 0.0) == (da < 0.0)) {
                    a = m;
                    da = dm;
                } else {
                    b = m;
                }
            }
            const double root = 0.5 * (a + b);
            if (root > 0.0 && root < 1.0) return root;
            return std::nullopt;
        }
        lo_t = hi_t;
        lo_d = hi_d;
    }
    return std::nullopt;
}

LineSearchStep line_search_step(const VoteGraph& graph, const CredibilityState& rho,
                                const CredibilityState& rho_star, double alpha) {
    rho.check_shape(graph);
    rho_star.check_shape(graph);
    const TrustState trust = update_trust(graph, rho, kernels::Backend::serial);
    return safeguarded_step(graph, rho, rho_star, trust.t, alpha);
}

RunResult run(const VoteGraph& graph, const EngineParams& params, const IterationObserver& observer) {
    params.validate();
    const auto backend = params.backend;

    RunResult result;
    CredibilityState rho = initialize(graph);
    TrustState trust = update_trust(graph, rho, backend);
    result.objective_trace.push_back(objective(trust, params.alpha));
    if (observer) observer(0, rho, trust);

    for (std::size_t it = 1; it <= params.max_iters; ++it) {
        const CredibilityState star =
            credibility_from_trust(graph, trust.t, params.alpha, params.zero_trust, backend);
        LineSearchStep step = safeguarded_step(graph, rho, star, trust.t, params.alpha);
        if (step.activated) ++result.line_search_activations;

        result.final_residual = residual_norm(step.rho, rho);
        rho = std::move(step.rho);
        trust = update_trust(graph, rho, backend);
        result.iterations = it;
        result.objective_trace.push_back(objective(trust, params.alpha));
        if (observer) observer(it, rho, trust);

        if (result.final_residual < params.epsilon) {
            result.converged = true;
            break;
        }
    }

    result.rho = std::move(rho);
    result.trust = std::move(trust);
    return result;
}

}  // namespace robustrate
