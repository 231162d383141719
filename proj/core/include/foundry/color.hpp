#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace foundry {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

struct Lab {
    double l = 0.0;
    double a = 0.0;
    double b = 0.0;
};

struct Lch {
    double l = 0.0;
    double c = 0.0;
    double h = 0.0; // degrees
};

/// Parse a CSS color: #rgb/#rrggbb/#rrggbbaa, rgb()/rgba(), hsl()/hsla(),
/// or a CSS named color. Returns nullopt for "none", "transparent",
/// "currentColor", url(...) references, and anything unrecognized.
std::optional<Rgb> parse_color(std::string_view text);

/// Lowercase #rrggbb.
std::string format_color(Rgb c);

/// sRGB (D65) to CIE Lab.
Lab rgb_to_lab(Rgb c);

/// CIE Lab to sRGB with channel clamping.
Rgb lab_to_rgb(const Lab& lab);

Lch lab_to_lch(const Lab& lab);
Lab lch_to_lab(const Lch& lch);

/// CIEDE2000 color difference.
double ciede2000(const Lab& c1, const Lab& c2);
double ciede2000(Rgb c1, Rgb c2);

/// Similarity in [0,1]: 1 - dE00/100, clipped.
double color_similarity(Rgb c1, Rgb c2);

} // namespace foundry
