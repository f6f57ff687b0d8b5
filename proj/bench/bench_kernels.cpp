// Compares the parallel kernels against their serial reference on fixed
// mid-sized inputs: cell enumeration, per-dimension field ranks, and the
// all-sources diameter sweep.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef GRAPHCFG_HAS_OPENMP
#include <omp.h>
#endif

#include "graphcfg/complex.hpp"
#include "graphcfg/invariants.hpp"
#include "graphcfg/planner.hpp"
#include "graphcfg/verify.hpp"

using namespace graphcfg;

namespace {

double seconds(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-34s %9.3fs %11.3fs %8.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

} // namespace

int main() {
    int workers = 1;
#ifdef GRAPHCFG_HAS_OPENMP
    workers = omp_get_max_threads();
#endif
    std::printf("workers: %d\n", workers);
    std::printf("%-34s %10s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    Graph h = fixture_graph("h.graph");
    Graph y = fixture_graph("y.graph");

    {
        SubdividedGraph s = subdivide(h, 3);
        CubeComplex a, b;
        double ts = seconds([&] { a = build_complex_serial(s, 4); });
        double tp = seconds([&] { b = build_complex(s, 4); });
        if (a.cells != b.cells) {
            std::printf("builder outputs differ; benchmark void\n");
            return 1;
        }
        row("enumerate 4 tokens on the bridge", ts, tp);
    }

    {
        CubeComplex c = build_complex(subdivide(h, 4), 3);
        std::vector<long long> bs, bp;
#ifdef GRAPHCFG_HAS_OPENMP
        omp_set_num_threads(1);
#endif
        double ts = seconds([&] { bs = betti_numbers(c); });
#ifdef GRAPHCFG_HAS_OPENMP
        omp_set_num_threads(workers);
#endif
        double tp = seconds([&] { bp = betti_numbers(c); });
        if (bs != bp) {
            std::printf("rank results differ; benchmark void\n");
            return 1;
        }
        row("field ranks, 3 tokens on the bridge", ts, tp);
    }

    {
        SubdividedGraph s = subdivide(y, 4);
        DiameterResult ds, dp;
#ifdef GRAPHCFG_HAS_OPENMP
        omp_set_num_threads(1);
#endif
        double ts = seconds([&] { ds = diameter(s, 3); });
#ifdef GRAPHCFG_HAS_OPENMP
        omp_set_num_threads(workers);
#endif
        double tp = seconds([&] { dp = diameter(s, 3); });
        if (ds.diameter != dp.diameter || ds.from != dp.from || ds.to != dp.to) {
            std::printf("diameter results differ; benchmark void\n");
            return 1;
        }
        row("diameter sweep, 3 tokens on spokes", ts, tp);
    }

    return 0;
}
