// Renders one synthetic text line and walks through its 54-value feature
// vector block by block.

#include <iomanip>
#include <iostream>

#include <scriptid/scriptid.hpp>

int main() {
    using namespace scriptid;

    SynthSpec spec;
    spec.seed = 3;
    const GrayImage line = render_synth_line(spec, 5, 0);  // the loop-texture class
    const FeatureVector fv = extract_features(line);

    std::cout << std::fixed << std::setprecision(4);
    std::cout << "chain-code histogram (directions 0-7):\n ";
    for (int i = 0; i < 8; ++i) std::cout << ' ' << fv.values[kCchOffset + i];
    std::cout << "\nfirst-difference histogram (turns -3..+3):\n ";
    for (int i = 0; i < 7; ++i) std::cout << ' ' << fv.values[kFirstDiffOffset + i];
    std::cout << "\nperimeter: " << fv.values[kPerimeterIndex]
              << "\ncircularity: " << fv.values[kCircularityIndex]
              << "\nslope distribution (0/45/90/135/180 deg):\n ";
    for (int i = 0; i < 5; ++i) std::cout << ' ' << fv.values[kSlopeOffset + i];
    std::cout << "\nspectral block stats (mean, std per 4x4 cell):\n";
    for (int b = 0; b < 16; ++b) {
        std::cout << "  cell " << std::setw(2) << b << ": " << fv.values[kSpectralOffset + 2 * b]
                  << ", " << fv.values[kSpectralOffset + 2 * b + 1] << '\n';
    }
    return 0;
}
