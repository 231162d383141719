#include "foundry/text_metrics.hpp"

namespace foundry {
namespace {

// Classic Helvetica AFM advance widths, 1000 units per em, ASCII 32..126.
constexpr double kRegular[95] = {
    278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333,
    278, 278, 556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 278, 278,
    584, 584, 584, 556, 1015, 667, 667, 722, 722, 667, 611, 778, 722, 278,
    500, 667, 556, 833, 722, 778, 667, 778, 722, 667, 611, 722, 667, 944,
    667, 667, 611, 278, 278, 278, 469, 556, 333, 556, 556, 500, 556, 556,
    278, 556, 556, 222, 222, 500, 222, 833, 556, 556, 556, 556, 333, 500,
    278, 556, 500, 722, 500, 500, 500, 334, 260, 334, 584,
};

constexpr double kBold[95] = {
    278, 333, 474, 556, 556, 889, 722, 238, 333, 333, 389, 584, 278, 333,
    278, 278, 556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 333, 333,
    584, 584, 584, 611, 975, 722, 722, 722, 722, 667, 611, 778, 722, 278,
    556, 722, 611, 833, 722, 778, 667, 778, 722, 667, 611, 722, 667, 944,
    667, 667, 611, 333, 278, 333, 584, 556, 333, 556, 611, 556, 611, 556,
    333, 611, 611, 278, 278, 556, 278, 889, 611, 611, 611, 611, 389, 556,
    333, 611, 556, 778, 556, 556, 500, 389, 280, 389, 584,
};

FontMetrics build(const double* widths) {
    std::unordered_map<char32_t, double> adv;
    adv.reserve(95);
    for (int i = 0; i < 95; ++i) adv[static_cast<char32_t>(32 + i)] = widths[i];
    return FontMetrics(1000.0, 718.0, 207.0, 600.0, std::move(adv));
}

} // namespace

const FontMetrics& FontMetrics::builtin() {
    static const FontMetrics m = build(kRegular);
    return m;
}

const FontMetrics& FontMetrics::builtin_bold() {
    static const FontMetrics m = build(kBold);
    return m;
}

} // namespace foundry
