#include "foundry/scene.hpp"

#include <cstdlib>

namespace foundry {

namespace {

Rgb hex(const char* s) {
    auto c = parse_color(s);
    return c ? *c : Rgb{0, 0, 0};
}

// Curated pool. Orderings alternate hue families (or lightness within a
// family) so neighbouring swatches stay far apart perceptually.
std::vector<Palette> build_pool() {
    std::vector<Palette> pool;
    auto add = [&](const char* bg, std::initializer_list<const char*> cs) {
        Palette p;
        p.background = hex(bg);
        for (const char* c : cs) p.colors.push_back(hex(c));
        pool.push_back(std::move(p));
    };

    add("#ffffff", {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1"});
    add("#ffffff", {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf"});
    add("#ffffff", {"#8dd3c7", "#bc80bd", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#d9a0c2"});
    add("#f8f9fa", {"#1b6ca8", "#c9a227", "#7d3c98", "#2e8b57", "#c0392b", "#34495e"});
    add("#faf7f2", {"#8c510a", "#01665e", "#d8b365", "#35978f", "#bf812d", "#5ab4ac"});
    add("#ffffff", {"#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46c4f0"});
    add("#ffffff", {"#023e8a", "#48cae4", "#0077b6", "#90e0ef", "#03045e", "#00b4d8"});
    add("#fffdf7", {"#ffb703", "#d00000", "#ffd166", "#e85d04", "#9d0208", "#fb8500"});
    add("#f6fff8", {"#2d6a4f", "#95d5b2", "#1b4332", "#74c69d", "#081c15", "#52b788"});
    add("#ffffff", {"#7209b7", "#f72585", "#3a0ca3", "#ff70a6", "#560bad", "#b5179e"});
    add("#fbfbf8", {"#264653", "#e9c46a", "#2a9d8f", "#e76f51", "#6d597a"});
    add("#1a1a2e", {"#00f5d4", "#f15bb5", "#fee440", "#00bbf9", "#9b5de5"});
    add("#ffffff", {"#212529", "#adb5bd", "#e03131", "#495057", "#74c0fc", "#c92a2a"});
    add("#ffffff", {"#ff6b6b", "#4ecdc4", "#ffc94d", "#1a535c", "#ff9f1c"});
    add("#eceff4", {"#5e81ac", "#ebcb8b", "#bf616a", "#a3be8c", "#b48ead", "#4c708e"});
    add("#fffcf5", {"#6a040f", "#f48c06", "#370617", "#faa307", "#9d0208", "#ffba08"});
    add("#ffffff", {"#006d77", "#e29578", "#83c5be", "#bf4342", "#456990"});
    add("#fdfbff", {"#10002b", "#e0aaff", "#3c096c", "#c77dff", "#5a189a", "#ff9e00"});
    add("#ffffff", {"#386641", "#f4d35e", "#bc4749", "#a7c957", "#2f3e46"});
    add("#ffffff", {"#0b7285", "#f783ac", "#15aabf", "#e64980", "#66d9e8"});
    add("#121212", {"#bb86fc", "#03dac6", "#cf6679", "#ffd54f", "#4fc3f7"});
    add("#ffffff", {"#1d3557", "#e63946", "#457b9d", "#f1a208", "#7bc6cc"});

    return pool;
}

} // namespace

const std::vector<Palette>& builtin_palettes() {
    static const std::vector<Palette> pool = build_pool();
    return pool;
}

} // namespace foundry
