// Times the OpenMP kernels against their serial references and checks that
// both produce identical output.
#include <chrono>
#include <cstdlib>
#include <iostream>

#include "dimtower/families.hpp"
#include "dimtower/scan.hpp"

using namespace dimtower;

template <typename F> double time_ms(F &&f)
{
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int main(int argc, char **argv)
{
    std::uint64_t p_end = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 100;
    std::uint64_t d_end = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 60;
    int jobs = resolve_jobs(0);

    std::vector<EquivalenceRow> a, b;
    double ts = time_ms([&] { a = serial::equivalence_grid(p_end, d_end); });
    double tp = time_ms([&] { b = equivalence_grid(p_end, d_end, jobs); });
    bool same = a == b;
    std::cout << "equivalence_grid p<" << p_end << " D<" << d_end << " (" << a.size() << " pairs)\n"
              << "  serial   " << ts << " ms\n"
              << "  parallel " << tp << " ms  (" << jobs << " threads)  " << (same ? "identical" : "MISMATCH") << "\n";

    std::vector<ScanRow> sa, sb;
    ts = time_ms([&] { sa = serial::scan_w(Int(7), 2000); });
    tp = time_ms([&] { sb = scan_w(Int(7), 2000, 2, jobs); });
    bool same_scan = sa == sb;
    std::cout << "scan_w p=7 D<=2000 (" << sa.size() << " fields)\n"
              << "  serial   " << ts << " ms\n"
              << "  parallel " << tp << " ms  " << (same_scan ? "identical" : "MISMATCH") << "\n";

    T1Range range{Int(13), Int(2), 2, 3, 0, -1};
    Enumeration ea, eb;
    ts = time_ms([&] { ea = serial::enumerate_family(range, SIZE_MAX); });
    tp = time_ms([&] { eb = enumerate_family(range, SIZE_MAX, jobs); });
    bool same_fam = ea.certificates == eb.certificates;
    std::cout << "enumerate_family T1 p=13 q=2 r=2..3 (" << ea.certificates.size() << " certificates)\n"
              << "  serial   " << ts << " ms\n"
              << "  parallel " << tp << " ms  " << (same_fam ? "identical" : "MISMATCH") << "\n";

    return same && same_scan && same_fam ? 0 : 1;
}
