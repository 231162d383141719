#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace foundry {

struct TextSize {
    double w = 0.0;
    double h = 0.0;
};

/// Per-glyph advance widths in font units, plus vertical metrics.
/// Widths scale linearly with font size: w = sum(advance) / units_per_em * size.
class FontMetrics {
public:
    /// Built-in sans metrics (regular weight).
    static const FontMetrics& builtin();
    /// Built-in sans metrics (bold weight).
    static const FontMetrics& builtin_bold();

    /// Load from JSON: {"units_per_em": N, "ascent": N, "descent": N,
    ///                  "glyphs": {"<glyph>": advance, ...}}
    static FontMetrics from_json(const std::string& text);

    FontMetrics(double units_per_em, double ascent, double descent,
                double fallback_advance,
                std::unordered_map<char32_t, double> advances)
        : units_per_em_(units_per_em), ascent_(ascent), descent_(descent),
          fallback_advance_(fallback_advance), advances_(std::move(advances)) {}

    double units_per_em() const { return units_per_em_; }
    double ascent() const { return ascent_; }
    double descent() const { return descent_; }

    double advance_units(char32_t glyph) const {
        auto it = advances_.find(glyph);
        return it != advances_.end() ? it->second : fallback_advance_;
    }

    /// Measured box of a UTF-8 string at the given size.
    /// Height is ascent + descent scaled; the empty string measures 0 x 0.
    TextSize measure(std::string_view utf8, double size) const;

    /// Distance from the top of the measured box down to the baseline.
    double baseline_offset(double size) const {
        return ascent_ / units_per_em_ * size;
    }

private:
    double units_per_em_;
    double ascent_;
    double descent_;
    double fallback_advance_;
    std::unordered_map<char32_t, double> advances_;
};

/// Decode one UTF-8 code point starting at i; advances i.
/// Invalid bytes decode as U+FFFD and advance by one.
char32_t decode_utf8(std::string_view s, std::size_t& i);

/// Decode a whole string into code points.
std::vector<char32_t> decode_utf8_all(std::string_view s);

} // namespace foundry
