// Serial vs OpenMP kernels on a planted corpus.
//
//   bench_kernels [num_voters] [lists_per_voter] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "robustrate/engine.hpp"
#include "robustrate/kernels.hpp"
#include "robustrate/simulate.hpp"

using namespace robustrate;

namespace {

double time_ms(const std::function<void()>& body, int repeats) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < repeats; ++k) body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

void row(const char* name, double serial, double parallel, bool same) {
    std::printf("%-12s %12.3f %12.3f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
                same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    CorpusParams cp;
    cp.num_voters = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 50000;
    cp.lists_per_voter = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 40;
    cp.num_lists = 2000;
    cp.low_lists = 400;
    cp.high_lists = 400;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 20;

    const VoteGraph graph = gen_corpus(cp, 7);
    std::printf("voters %zu  lists %zu  votes %zu  threads %d\n", graph.num_voters(), graph.num_lists(),
                graph.num_votes(), omp_get_max_threads());
    std::printf("%-12s %12s %12s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

    const CredibilityState rho = initialize(graph);
    std::vector<double> ts(graph.num_voters()), tp(graph.num_voters());
    const double trust_s = time_ms([&] { kernels::trust_serial(graph, rho.values(), ts); }, repeats);
    const double trust_p = time_ms([&] { kernels::trust_parallel(graph, rho.values(), tp); }, repeats);
    row("trust", trust_s, trust_p, ts == tp);

    std::vector<double> ws(ts.size()), wp(ts.size());
    const double pow_s = time_ms([&] { kernels::power_serial(ts, 2.0, ws); }, repeats);
    const double pow_p = time_ms([&] { kernels::power_parallel(ts, 2.0, wp); }, repeats);
    row("power", pow_s, pow_p, ws == wp);

    std::vector<double> ss(graph.num_items()), sp(graph.num_items());
    const double sup_s = time_ms([&] { kernels::support_serial(graph, ws, ss); }, repeats);
    const double sup_p = time_ms([&] { kernels::support_parallel(graph, ws, sp); }, repeats);
    row("support", sup_s, sup_p, ss == sp);

    std::vector<std::uint8_t> ds(graph.num_lists()), dp(graph.num_lists());
    std::vector<double> ns, np;
    const double norm_s = time_ms([&] { ns = ss; kernels::normalize_serial(graph, ns, ds); }, repeats);
    const double norm_p = time_ms([&] { np = sp; kernels::normalize_parallel(graph, np, dp); }, repeats);
    row("normalize", norm_s, norm_p, ns == np);

    EngineParams params;
    RunResult rs, rp;
    params.backend = kernels::Backend::serial;
    const double run_s = time_ms([&] { rs = run(graph, params); }, 1);
    params.backend = kernels::Backend::parallel;
    const double run_p = time_ms([&] { rp = run(graph, params); }, 1);
    row("full run", run_s, run_p, rs.rho == rp.rho && rs.trust == rp.trust);
    std::printf("iterations %zu, converged %s\n", rp.iterations, rp.converged ? "yes" : "no");
    return 0;
}
