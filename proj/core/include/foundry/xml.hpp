#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace foundry {

/// Minimal XML DOM node. Elements carry a tag plus attributes/children;
/// text nodes have an empty tag and their decoded content in `text`.
struct XmlNode {
    std::string tag;
    std::string text;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<XmlNode> children;

    bool is_text() const { return tag.empty(); }
    const std::string* attr(std::string_view name) const {
        for (const auto& [k, v] : attrs)
            if (k == name) return &v;
        return nullptr;
    }
};

/// Parse a standalone XML document and return its root element.
/// Comments, processing instructions and DOCTYPE are skipped; CDATA becomes
/// text; entities (named + numeric) are decoded. Throws Error(MalformedSvg)
/// on structural problems.
XmlNode parse_xml(std::string_view src);

/// Escape text for use inside an XML text node or attribute value.
std::string xml_escape(std::string_view s);

} // namespace foundry
