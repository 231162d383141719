#include "foundry/xml.hpp"

#include <cctype>
#include <charconv>

#include "foundry/errors.hpp"

namespace foundry {

namespace {

[[noreturn]] void fail(const std::string& why) {
    throw Error(ErrorCode::MalformedSvg, "svg-parse", why);
}

void append_codepoint(std::string& out, unsigned long cp) {
    if (cp <= 0x7F) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7FF) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0xFFFF) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0x10FFFF) {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out += "\xEF\xBF\xBD";
    }
}

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        std::size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back(s[i++]); // bare ampersand, keep as-is
            continue;
        }
        std::string_view name = s.substr(i + 1, semi - i - 1);
        if (name == "amp") out.push_back('&');
        else if (name == "lt") out.push_back('<');
        else if (name == "gt") out.push_back('>');
        else if (name == "quot") out.push_back('"');
        else if (name == "apos") out.push_back('\'');
        else if (!name.empty() && name[0] == '#') {
            unsigned long cp = 0;
            bool ok = false;
            if (name.size() > 1 && (name[1] == 'x' || name[1] == 'X')) {
                auto r = std::from_chars(name.data() + 2, name.data() + name.size(), cp, 16);
                ok = r.ec == std::errc{} && r.ptr == name.data() + name.size();
            } else {
                auto r = std::from_chars(name.data() + 1, name.data() + name.size(), cp, 10);
                ok = r.ec == std::errc{} && r.ptr == name.data() + name.size();
            }
            if (ok) append_codepoint(out, cp);
            else out.append(s.substr(i, semi - i + 1));
        } else {
            out.append(s.substr(i, semi - i + 1)); // unknown entity, literal
        }
        i = semi + 1;
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : s_(src) {}

    XmlNode document() {
        skip_misc();
        if (eof()) fail("empty document");
        XmlNode root = element();
        skip_misc();
        if (!eof()) fail("trailing content after root element");
        return root;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;

    bool eof() const { return i_ >= s_.size(); }
    char peek() const { return s_[i_]; }
    bool starts_with(std::string_view p) const { return s_.substr(i_, p.size()) == p; }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    void skip_until(std::string_view terminator, const char* what) {
        std::size_t pos = s_.find(terminator, i_);
        if (pos == std::string_view::npos) fail(std::string("unterminated ") + what);
        i_ = pos + terminator.size();
    }

    // Whitespace, comments, PIs, DOCTYPE between top-level constructs.
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<!--")) {
                i_ += 4;
                skip_until("-->", "comment");
            } else if (starts_with("<?")) {
                i_ += 2;
                skip_until("?>", "processing instruction");
            } else if (starts_with("<!DOCTYPE") || starts_with("<!doctype")) {
                // Tolerate an internal subset in brackets.
                int depth = 0;
                while (!eof()) {
                    char c = s_[i_++];
                    if (c == '[') ++depth;
                    else if (c == ']') --depth;
                    else if (c == '>' && depth <= 0) break;
                }
            } else {
                return;
            }
        }
    }

    std::string name() {
        std::size_t start = i_;
        while (!eof()) {
            char c = s_[i_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
                c == ':' || c == '.')
                ++i_;
            else
                break;
        }
        if (i_ == start) fail("expected a name");
        return std::string(s_.substr(start, i_ - start));
    }

    XmlNode element() {
        if (eof() || peek() != '<') fail("expected an element");
        ++i_;
        XmlNode node;
        node.tag = name();

        for (;;) {
            skip_ws();
            if (eof()) fail("unterminated start tag <" + node.tag + ">");
            if (peek() == '>') {
                ++i_;
                break;
            }
            if (starts_with("/>")) {
                i_ += 2;
                return node;
            }
            std::string key = name();
            skip_ws();
            if (eof() || peek() != '=') fail("attribute '" + key + "' missing value");
            ++i_;
            skip_ws();
            if (eof() || (peek() != '"' && peek() != '\'')) fail("unquoted attribute value");
            char quote = s_[i_++];
            std::size_t end = s_.find(quote, i_);
            if (end == std::string_view::npos) fail("unterminated attribute value");
            node.attrs.emplace_back(std::move(key), decode_entities(s_.substr(i_, end - i_)));
            i_ = end + 1;
        }

        // Content until the matching close tag.
        std::string pending_text;
        auto flush_text = [&] {
            if (pending_text.empty()) return;
            XmlNode t;
            t.text = std::move(pending_text);
            pending_text.clear();
            node.children.push_back(std::move(t));
        };
        for (;;) {
            if (eof()) fail("unterminated element <" + node.tag + ">");
            if (starts_with("</")) {
                flush_text();
                i_ += 2;
                std::string close = name();
                if (close != node.tag)
                    fail("mismatched close tag </" + close + "> for <" + node.tag + ">");
                skip_ws();
                if (eof() || peek() != '>') fail("malformed close tag");
                ++i_;
                return node;
            }
            if (starts_with("<!--")) {
                i_ += 4;
                skip_until("-->", "comment");
                continue;
            }
            if (starts_with("<![CDATA[")) {
                i_ += 9;
                std::size_t end = s_.find("]]>", i_);
                if (end == std::string_view::npos) fail("unterminated CDATA");
                pending_text.append(s_.substr(i_, end - i_));
                i_ = end + 3;
                continue;
            }
            if (starts_with("<?")) {
                i_ += 2;
                skip_until("?>", "processing instruction");
                continue;
            }
            if (peek() == '<') {
                flush_text();
                node.children.push_back(element());
                continue;
            }
            std::size_t next = s_.find('<', i_);
            if (next == std::string_view::npos) fail("unterminated element <" + node.tag + ">");
            pending_text += decode_entities(s_.substr(i_, next - i_));
            i_ = next;
        }
    }
};

} // namespace

XmlNode parse_xml(std::string_view src) {
    return Parser(src).document();
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

} // namespace foundry
