#include "foundry/color.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_map>
#include <vector>

namespace foundry {
namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }
double rad2deg(double r) { return r * 180.0 / kPi; }

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::optional<Rgb> parse_hex(std::string_view s) {
    // s excludes the leading '#'
    auto nib = [&](std::size_t i) { return hex_nibble(s[i]); };
    if (s.size() == 3 || s.size() == 4) {
        int r = nib(0), g = nib(1), b = nib(2);
        if (r < 0 || g < 0 || b < 0) return std::nullopt;
        return Rgb{static_cast<std::uint8_t>(r * 17), static_cast<std::uint8_t>(g * 17),
                   static_cast<std::uint8_t>(b * 17)};
    }
    if (s.size() == 6 || s.size() == 8) {
        int v[6];
        for (int i = 0; i < 6; ++i) {
            v[i] = nib(static_cast<std::size_t>(i));
            if (v[i] < 0) return std::nullopt;
        }
        return Rgb{static_cast<std::uint8_t>(v[0] * 16 + v[1]),
                   static_cast<std::uint8_t>(v[2] * 16 + v[3]),
                   static_cast<std::uint8_t>(v[4] * 16 + v[5])};
    }
    return std::nullopt;
}

// Comma- or space-separated numeric arguments of a functional color notation.
std::optional<std::vector<double>> parse_args(std::string_view body, std::vector<bool>* percent_out) {
    std::vector<double> vals;
    std::vector<bool> pct;
    std::size_t i = 0;
    while (i < body.size()) {
        while (i < body.size() && (std::isspace(static_cast<unsigned char>(body[i])) ||
                                   body[i] == ',' || body[i] == '/'))
            ++i;
        if (i >= body.size()) break;
        std::size_t j = i;
        while (j < body.size() && body[j] != ',' && body[j] != '/' &&
               !std::isspace(static_cast<unsigned char>(body[j])))
            ++j;
        std::string_view tok = body.substr(i, j - i);
        bool is_pct = !tok.empty() && tok.back() == '%';
        if (is_pct) tok.remove_suffix(1);
        double v = 0.0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
        vals.push_back(v);
        pct.push_back(is_pct);
        i = j;
    }
    if (percent_out) *percent_out = pct;
    return vals;
}

std::uint8_t clamp_byte(double v) {
    return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0) + 0.5);
}

Rgb hsl_to_rgb(double h, double s, double l) {
    h = std::fmod(std::fmod(h, 360.0) + 360.0, 360.0);
    s = std::clamp(s, 0.0, 1.0);
    l = std::clamp(l, 0.0, 1.0);
    double c = (1.0 - std::fabs(2.0 * l - 1.0)) * s;
    double hp = h / 60.0;
    double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else { r = c; b = x; }
    double m = l - c / 2.0;
    return {clamp_byte((r + m) * 255.0), clamp_byte((g + m) * 255.0), clamp_byte((b + m) * 255.0)};
}

const std::unordered_map<std::string, Rgb>& named_colors() {
    // CSS3 extended color keywords.
    static const std::unordered_map<std::string, Rgb> table = {
        {"aliceblue", {240, 248, 255}}, {"antiquewhite", {250, 235, 215}},
        {"aqua", {0, 255, 255}}, {"aquamarine", {127, 255, 212}},
        {"azure", {240, 255, 255}}, {"beige", {245, 245, 220}},
        {"bisque", {255, 228, 196}}, {"black", {0, 0, 0}},
        {"blanchedalmond", {255, 235, 205}}, {"blue", {0, 0, 255}},
        {"blueviolet", {138, 43, 226}}, {"brown", {165, 42, 42}},
        {"burlywood", {222, 184, 135}}, {"cadetblue", {95, 158, 160}},
        {"chartreuse", {127, 255, 0}}, {"chocolate", {210, 105, 30}},
        {"coral", {255, 127, 80}}, {"cornflowerblue", {100, 149, 237}},
        {"cornsilk", {255, 248, 220}}, {"crimson", {220, 20, 60}},
        {"cyan", {0, 255, 255}}, {"darkblue", {0, 0, 139}},
        {"darkcyan", {0, 139, 139}}, {"darkgoldenrod", {184, 134, 11}},
        {"darkgray", {169, 169, 169}}, {"darkgreen", {0, 100, 0}},
        {"darkgrey", {169, 169, 169}}, {"darkkhaki", {189, 183, 107}},
        {"darkmagenta", {139, 0, 139}}, {"darkolivegreen", {85, 107, 47}},
        {"darkorange", {255, 140, 0}}, {"darkorchid", {153, 50, 204}},
        {"darkred", {139, 0, 0}}, {"darksalmon", {233, 150, 122}},
        {"darkseagreen", {143, 188, 143}}, {"darkslateblue", {72, 61, 139}},
        {"darkslategray", {47, 79, 79}}, {"darkslategrey", {47, 79, 79}},
        {"darkturquoise", {0, 206, 209}}, {"darkviolet", {148, 0, 211}},
        {"deeppink", {255, 20, 147}}, {"deepskyblue", {0, 191, 255}},
        {"dimgray", {105, 105, 105}}, {"dimgrey", {105, 105, 105}},
        {"dodgerblue", {30, 144, 255}}, {"firebrick", {178, 34, 34}},
        {"floralwhite", {255, 250, 240}}, {"forestgreen", {34, 139, 34}},
        {"fuchsia", {255, 0, 255}}, {"gainsboro", {220, 220, 220}},
        {"ghostwhite", {248, 248, 255}}, {"gold", {255, 215, 0}},
        {"goldenrod", {218, 165, 32}}, {"gray", {128, 128, 128}},
        {"green", {0, 128, 0}}, {"greenyellow", {173, 255, 47}},
        {"grey", {128, 128, 128}}, {"honeydew", {240, 255, 240}},
        {"hotpink", {255, 105, 180}}, {"indianred", {205, 92, 92}},
        {"indigo", {75, 0, 130}}, {"ivory", {255, 255, 240}},
        {"khaki", {240, 230, 140}}, {"lavender", {230, 230, 250}},
        {"lavenderblush", {255, 240, 245}}, {"lawngreen", {124, 252, 0}},
        {"lemonchiffon", {255, 250, 205}}, {"lightblue", {173, 216, 230}},
        {"lightcoral", {240, 128, 128}}, {"lightcyan", {224, 255, 255}},
        {"lightgoldenrodyellow", {250, 250, 210}}, {"lightgray", {211, 211, 211}},
        {"lightgreen", {144, 238, 144}}, {"lightgrey", {211, 211, 211}},
        {"lightpink", {255, 182, 193}}, {"lightsalmon", {255, 160, 122}},
        {"lightseagreen", {32, 178, 170}}, {"lightskyblue", {135, 206, 250}},
        {"lightslategray", {119, 136, 153}}, {"lightslategrey", {119, 136, 153}},
        {"lightsteelblue", {176, 196, 222}}, {"lightyellow", {255, 255, 224}},
        {"lime", {0, 255, 0}}, {"limegreen", {50, 205, 50}},
        {"linen", {250, 240, 230}}, {"magenta", {255, 0, 255}},
        {"maroon", {128, 0, 0}}, {"mediumaquamarine", {102, 205, 170}},
        {"mediumblue", {0, 0, 205}}, {"mediumorchid", {186, 85, 211}},
        {"mediumpurple", {147, 112, 219}}, {"mediumseagreen", {60, 179, 113}},
        {"mediumslateblue", {123, 104, 238}}, {"mediumspringgreen", {0, 250, 154}},
        {"mediumturquoise", {72, 209, 204}}, {"mediumvioletred", {199, 21, 133}},
        {"midnightblue", {25, 25, 112}}, {"mintcream", {245, 255, 250}},
        {"mistyrose", {255, 228, 225}}, {"moccasin", {255, 228, 181}},
        {"navajowhite", {255, 222, 173}}, {"navy", {0, 0, 128}},
        {"oldlace", {253, 245, 230}}, {"olive", {128, 128, 0}},
        {"olivedrab", {107, 142, 35}}, {"orange", {255, 165, 0}},
        {"orangered", {255, 69, 0}}, {"orchid", {218, 112, 214}},
        {"palegoldenrod", {238, 232, 170}}, {"palegreen", {152, 251, 152}},
        {"paleturquoise", {175, 238, 238}}, {"palevioletred", {219, 112, 147}},
        {"papayawhip", {255, 239, 213}}, {"peachpuff", {255, 218, 185}},
        {"peru", {205, 133, 63}}, {"pink", {255, 192, 203}},
        {"plum", {221, 160, 221}}, {"powderblue", {176, 224, 230}},
        {"purple", {128, 0, 128}}, {"rebeccapurple", {102, 51, 153}},
        {"red", {255, 0, 0}}, {"rosybrown", {188, 143, 143}},
        {"royalblue", {65, 105, 225}}, {"saddlebrown", {139, 69, 19}},
        {"salmon", {250, 128, 114}}, {"sandybrown", {244, 164, 96}},
        {"seagreen", {46, 139, 87}}, {"seashell", {255, 245, 238}},
        {"sienna", {160, 82, 45}}, {"silver", {192, 192, 192}},
        {"skyblue", {135, 206, 235}}, {"slateblue", {106, 90, 205}},
        {"slategray", {112, 128, 144}}, {"slategrey", {112, 128, 144}},
        {"snow", {255, 250, 250}}, {"springgreen", {0, 255, 127}},
        {"steelblue", {70, 130, 180}}, {"tan", {210, 180, 140}},
        {"teal", {0, 128, 128}}, {"thistle", {216, 191, 216}},
        {"tomato", {255, 99, 71}}, {"turquoise", {64, 224, 208}},
        {"violet", {238, 130, 238}}, {"wheat", {245, 222, 179}},
        {"white", {255, 255, 255}}, {"whitesmoke", {245, 245, 245}},
        {"yellow", {255, 255, 0}}, {"yellowgreen", {154, 205, 50}},
    };
    return table;
}

double srgb_linearize(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double srgb_delinearize(double c) {
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

// D65 reference white.
constexpr double kXn = 0.95047;
constexpr double kYn = 1.00000;
constexpr double kZn = 1.08883;

double lab_f(double t) {
    constexpr double d = 6.0 / 29.0;
    return t > d * d * d ? std::cbrt(t) : t / (3.0 * d * d) + 4.0 / 29.0;
}

double lab_f_inv(double t) {
    constexpr double d = 6.0 / 29.0;
    return t > d ? t * t * t : 3.0 * d * d * (t - 4.0 / 29.0);
}

} // namespace

std::optional<Rgb> parse_color(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) return std::nullopt;
    if (s.front() == '#') return parse_hex(s.substr(1));

    std::string ls = lower(s);
    if (ls == "none" || ls == "transparent" || ls == "currentcolor") return std::nullopt;
    if (ls.rfind("url(", 0) == 0) return std::nullopt;

    auto paren = ls.find('(');
    if (paren != std::string::npos && ls.back() == ')') {
        std::string fn = ls.substr(0, paren);
        std::string body = ls.substr(paren + 1, ls.size() - paren - 2);
        std::vector<bool> pct;
        auto args = parse_args(body, &pct);
        if (!args || args->size() < 3) return std::nullopt;
        if (fn == "rgb" || fn == "rgba") {
            auto chan = [&](int i) {
                double v = (*args)[static_cast<std::size_t>(i)];
                return pct[static_cast<std::size_t>(i)] ? v * 255.0 / 100.0 : v;
            };
            return Rgb{clamp_byte(chan(0)), clamp_byte(chan(1)), clamp_byte(chan(2))};
        }
        if (fn == "hsl" || fn == "hsla") {
            return hsl_to_rgb((*args)[0], (*args)[1] / 100.0, (*args)[2] / 100.0);
        }
        return std::nullopt;
    }

    auto it = named_colors().find(ls);
    if (it != named_colors().end()) return it->second;
    return std::nullopt;
}

std::string format_color(Rgb c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

Lab rgb_to_lab(Rgb c) {
    double r = srgb_linearize(c.r / 255.0);
    double g = srgb_linearize(c.g / 255.0);
    double b = srgb_linearize(c.b / 255.0);
    double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
    double fx = lab_f(x / kXn);
    double fy = lab_f(y / kYn);
    double fz = lab_f(z / kZn);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Rgb lab_to_rgb(const Lab& lab) {
    double fy = (lab.l + 16.0) / 116.0;
    double fx = fy + lab.a / 500.0;
    double fz = fy - lab.b / 200.0;
    double x = kXn * lab_f_inv(fx);
    double y = kYn * lab_f_inv(fy);
    double z = kZn * lab_f_inv(fz);
    double r = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
    double g = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
    double b = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;
    return {clamp_byte(srgb_delinearize(std::clamp(r, 0.0, 1.0)) * 255.0),
            clamp_byte(srgb_delinearize(std::clamp(g, 0.0, 1.0)) * 255.0),
            clamp_byte(srgb_delinearize(std::clamp(b, 0.0, 1.0)) * 255.0)};
}

Lch lab_to_lch(const Lab& lab) {
    double c = std::hypot(lab.a, lab.b);
    double h = rad2deg(std::atan2(lab.b, lab.a));
    if (h < 0) h += 360.0;
    return {lab.l, c, h};
}

Lab lch_to_lab(const Lch& lch) {
    double hr = deg2rad(lch.h);
    return {lch.l, lch.c * std::cos(hr), lch.c * std::sin(hr)};
}

double ciede2000(const Lab& c1, const Lab& c2) {
    // Sharma, Wu, Dalal (2005) formulation.
    double C1 = std::hypot(c1.a, c1.b);
    double C2 = std::hypot(c2.a, c2.b);
    double Cbar = (C1 + C2) / 2.0;
    double Cbar7 = std::pow(Cbar, 7.0);
    double G = 0.5 * (1.0 - std::sqrt(Cbar7 / (Cbar7 + std::pow(25.0, 7.0))));

    double a1p = (1.0 + G) * c1.a;
    double a2p = (1.0 + G) * c2.a;
    double C1p = std::hypot(a1p, c1.b);
    double C2p = std::hypot(a2p, c2.b);

    auto hue_deg = [](double a, double b) {
        if (a == 0.0 && b == 0.0) return 0.0;
        double h = rad2deg(std::atan2(b, a));
        return h < 0 ? h + 360.0 : h;
    };
    double h1p = hue_deg(a1p, c1.b);
    double h2p = hue_deg(a2p, c2.b);

    double dLp = c2.l - c1.l;
    double dCp = C2p - C1p;

    double dhp;
    if (C1p * C2p == 0.0) {
        dhp = 0.0;
    } else {
        dhp = h2p - h1p;
        if (dhp > 180.0) dhp -= 360.0;
        else if (dhp < -180.0) dhp += 360.0;
    }
    double dHp = 2.0 * std::sqrt(C1p * C2p) * std::sin(deg2rad(dhp) / 2.0);

    double Lbarp = (c1.l + c2.l) / 2.0;
    double Cbarp = (C1p + C2p) / 2.0;

    double hbarp;
    if (C1p * C2p == 0.0) {
        hbarp = h1p + h2p;
    } else {
        double diff = std::fabs(h1p - h2p);
        double sum = h1p + h2p;
        if (diff <= 180.0) hbarp = sum / 2.0;
        else if (sum < 360.0) hbarp = (sum + 360.0) / 2.0;
        else hbarp = (sum - 360.0) / 2.0;
    }

    double T = 1.0 - 0.17 * std::cos(deg2rad(hbarp - 30.0)) + 0.24 * std::cos(deg2rad(2.0 * hbarp)) +
               0.32 * std::cos(deg2rad(3.0 * hbarp + 6.0)) - 0.20 * std::cos(deg2rad(4.0 * hbarp - 63.0));

    double dTheta = 30.0 * std::exp(-std::pow((hbarp - 275.0) / 25.0, 2.0));
    double Cbarp7 = std::pow(Cbarp, 7.0);
    double RC = 2.0 * std::sqrt(Cbarp7 / (Cbarp7 + std::pow(25.0, 7.0)));
    double Lm50 = (Lbarp - 50.0) * (Lbarp - 50.0);
    double SL = 1.0 + 0.015 * Lm50 / std::sqrt(20.0 + Lm50);
    double SC = 1.0 + 0.045 * Cbarp;
    double SH = 1.0 + 0.015 * Cbarp * T;
    double RT = -std::sin(deg2rad(2.0 * dTheta)) * RC;

    double tL = dLp / SL;
    double tC = dCp / SC;
    double tH = dHp / SH;
    return std::sqrt(tL * tL + tC * tC + tH * tH + RT * tC * tH);
}

double ciede2000(Rgb c1, Rgb c2) {
    return ciede2000(rgb_to_lab(c1), rgb_to_lab(c2));
}

double color_similarity(Rgb c1, Rgb c2) {
    return std::clamp(1.0 - ciede2000(c1, c2) / 100.0, 0.0, 1.0);
}

} // namespace foundry
