// Runs both grid sweeps and prints the maxima.

#include <iostream>

#include "rsum/sweep.hpp"

int main() {
    using namespace rsum;
    for (auto family : {ProgramFamily::SevenCell, ProgramFamily::FiveCell}) {
        SweepReport report = family == ProgramFamily::SevenCell ? sweep_L_prime() : sweep_M_prime();
        std::cout << (family == ProgramFamily::SevenCell ? "seven-cell" : "five-cell") << " sweep: "
                  << report.grid_points.size() << " grid points, max " << fraction_string(report.max_value)
                  << " = " << decimal_string(report.max_value) << " at (" << fraction_string(report.max_a1p)
                  << ", " << fraction_string(report.max_a2p) << "), all below "
                  << fraction_string(report.threshold) << ": " << (report.all_below ? "yes" : "no") << "\n";
    }
    return 0;
}
