// Compares the serial reference kernels against their OpenMP versions and
// the quadratic packer against the load-ordered streaming packer.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "rollpack/expectation.hpp"
#include "rollpack/instances.hpp"
#include "rollpack/structure.hpp"

using namespace rollpack;

namespace {

double time_once(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-38s %10.3fs %10.3fs %9.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
    const int cores = omp_get_max_threads();
    std::printf("threads available: %d\n", cores);
    std::printf("%-38s %11s %11s %10s\n", "kernel", "serial", "parallel", "speedup");

    {
        const LmInstance lm = large_lb_instance(4, rat(1, 100));
        Rat serial_value, parallel_value;
        const double s = time_once([&] { serial_value = theorem1_check(lm, TieRule::EarliestOpened, 1).expected_bf; });
        const double par = time_once([&] { parallel_value = theorem1_check(lm, TieRule::EarliestOpened, cores).expected_bf; });
        row("theorem1 enumeration (8 items, 8!)", s, par);
        if (serial_value != parallel_value) std::printf("  MISMATCH!\n");
    }

    {
        const Instance inst = abs_lb_instance(rat(1, 1000));
        double serial_est, parallel_est;
        const double s = time_once([&] {
            serial_est = monte_carlo_expectation(inst, Alg::BestFit, 2000000, 1, TieRule::EarliestOpened, 1).estimate;
        });
        const double par = time_once([&] {
            parallel_est = monte_carlo_expectation(inst, Alg::BestFit, 2000000, 1, TieRule::EarliestOpened, cores).estimate;
        });
        row("monte carlo (5 items, 2e6 samples)", s, par);
        if (serial_est != parallel_est) std::printf("  MISMATCH!\n");
    }

    {
        FuzzOptions serial_opts, parallel_opts;
        serial_opts.threads = 1;
        parallel_opts.threads = cores;
        const double s = time_once([&] { monotonicity_fuzz(20000, 9, serial_opts); });
        const double par = time_once([&] { monotonicity_fuzz(20000, 9, parallel_opts); });
        row("monotonicity fuzz (2e4 trials)", s, par);
    }

    {
        // quadratic reference packer vs the load-ordered streaming packer
        const DiscreteDistribution dist = quarter_third_distribution(rat(3, 5));
        constexpr int kItems = 10000;
        IidSampler sampler(dist, 5);
        Instance replay;
        for (int i = 0; i < kItems; ++i)
            replay.items.push_back(dist.support[sampler.next()].first);

        long long stream_bins = 0;
        int quadratic_bins = 0;
        const double stream = time_once([&] { stream_bins = iid_simulate(dist, kItems, 5).bins_used; });
        const double quadratic = time_once([&] {
            quadratic_bins = bins_used(replay.items, identity_permutation(kItems), Alg::BestFit);
        });
        std::printf("%-38s %10.3fs %10.3fs %9.2fx\n", "best fit stream vs quadratic (1e4)", quadratic,
                    stream, quadratic / stream);
        if (stream_bins != quadratic_bins) std::printf("  MISMATCH!\n");
    }

    return 0;
}
