#include "foundry/text_metrics.hpp"

#include <nlohmann/json.hpp>

#include "foundry/errors.hpp"

namespace foundry {

std::vector<char32_t> decode_utf8_all(std::string_view s) {
    std::vector<char32_t> out;
    std::size_t i = 0;
    while (i < s.size()) out.push_back(decode_utf8(s, i));
    return out;
}

char32_t decode_utf8(std::string_view s, std::size_t& i) {
    auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) {
        return k < s.size() && (byte(k) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
        char32_t cp = static_cast<char32_t>((b0 & 0x1F) << 6 | (byte(i + 1) & 0x3F));
        i += 2;
        return cp;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
        char32_t cp = static_cast<char32_t>((b0 & 0x0F) << 12 | (byte(i + 1) & 0x3F) << 6 |
                                            (byte(i + 2) & 0x3F));
        i += 3;
        return cp;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
        char32_t cp = static_cast<char32_t>((b0 & 0x07) << 18 | (byte(i + 1) & 0x3F) << 12 |
                                            (byte(i + 2) & 0x3F) << 6 | (byte(i + 3) & 0x3F));
        i += 4;
        return cp;
    }
    ++i;
    return 0xFFFD;
}

TextSize FontMetrics::measure(std::string_view utf8, double size) const {
    if (utf8.empty()) return {0.0, 0.0};
    double units = 0.0;
    std::size_t i = 0;
    while (i < utf8.size()) units += advance_units(decode_utf8(utf8, i));
    double scale = size / units_per_em_;
    return {units * scale, (ascent_ + descent_) * scale};
}

FontMetrics FontMetrics::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("glyphs"))
        throw Error(ErrorCode::MalformedInput, "text_metrics", "invalid font metrics JSON");
    double upem = j.value("units_per_em", 1000.0);
    double ascent = j.value("ascent", 750.0);
    double descent = j.value("descent", 250.0);
    double fallback = j.value("fallback_advance", 600.0);
    std::unordered_map<char32_t, double> adv;
    for (auto& [key, val] : j.at("glyphs").items()) {
        std::size_t i = 0;
        char32_t cp = decode_utf8(key, i);
        adv[cp] = val.get<double>();
    }
    return FontMetrics(upem, ascent, descent, fallback, std::move(adv));
}

} // namespace foundry
