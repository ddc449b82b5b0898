#include "sns/text.hpp"

namespace sns {

namespace {

// Decode one UTF-8 codepoint at s[i]; advances i. Invalid bytes decode as
// U+FFFD and advance by one so tokenization degrades gracefully on dirty data.
uint32_t decode_utf8(std::string_view s, size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](size_t k) {
        return i + k < s.size() &&
               (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        uint32_t cp = (b0 & 0x1Fu) << 6 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
        i += 2;
        return cp >= 0x80 ? cp : 0xFFFD;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        uint32_t cp = (b0 & 0x0Fu) << 12 |
                      (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6 |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
        i += 3;
        return cp >= 0x800 ? cp : 0xFFFD;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        uint32_t cp = (b0 & 0x07u) << 18 |
                      (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12 |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6 |
                      (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
        i += 4;
        return cp >= 0x10000 && cp <= 0x10FFFF ? cp : 0xFFFD;
    }
    ++i;
    return 0xFFFD;
}

void encode_utf8(uint32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

}  // namespace

uint32_t fold_codepoint(uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp < 0x80) return cp;
    // Latin-1 supplement: À..Þ except ×.
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    // Latin Extended-A: mostly paired upper/lower.
    if (cp >= 0x100 && cp <= 0x137) return cp | 1u;
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return cp | 1u;
    if (cp == 0x178) return 0xFF;  // Ÿ -> ÿ
    if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x130) return 'i';  // İ (dotted capital I) -> i
    // Greek: Α..Ρ, Σ..Ω.
    if (cp >= 0x391 && cp <= 0x3A1) return cp + 0x20;
    if (cp >= 0x3A3 && cp <= 0x3AB) return cp + 0x20;
    // Cyrillic: А..Я and Ѐ..Џ.
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    return cp;
}

bool is_word_codepoint(uint32_t cp) {
    if (cp < 0x80) {
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
               (cp >= 'A' && cp <= 'Z');
    }
    // Non-ASCII: treat as a letter unless it falls into a known punctuation,
    // symbol or whitespace block. Approximate but adequate for social text.
    if (cp <= 0x9F) return false;                    // C1 controls
    if (cp >= 0xA0 && cp <= 0xBF) return false;      // Latin-1 punctuation
    if (cp == 0xD7 || cp == 0xF7) return false;      // ×, ÷
    if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
    if (cp >= 0x2070 && cp <= 0x2BFF) return false;  // super/sub, currency, arrows, math, symbols
    if (cp >= 0x2E00 && cp <= 0x2E7F) return false;  // supplemental punctuation
    if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
    if (cp >= 0xFE30 && cp <= 0xFE6F) return false;  // compat forms, small variants
    if (cp >= 0xFF01 && cp <= 0xFF0F) return false;  // fullwidth punctuation
    if (cp >= 0x1F000 && cp <= 0x1FAFF) return false;  // emoji and pictographs
    if (cp == 0xFFFD) return false;
    return true;
}

std::string fold_case(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) encode_utf8(fold_codepoint(decode_utf8(s, i)), out);
    return out;
}

void for_each_token(std::string_view s, const std::function<void(std::string_view)>& fn) {
    std::string tok;
    size_t i = 0;
    while (i < s.size()) {
        uint32_t cp = decode_utf8(s, i);
        if (is_word_codepoint(cp)) {
            encode_utf8(fold_codepoint(cp), tok);
        } else if (!tok.empty()) {
            fn(tok);
            tok.clear();
        }
    }
    if (!tok.empty()) fn(tok);
}

std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> out;
    for_each_token(s, [&](std::string_view t) { out.emplace_back(t); });
    return out;
}

size_t count_tokens(std::string_view s) {
    size_t n = 0;
    for_each_token(s, [&](std::string_view) { ++n; });
    return n;
}

bool has_token(std::string_view text, std::string_view folded_token) {
    bool found = false;
    for_each_token(text, [&](std::string_view t) {
        if (t == folded_token) found = true;
    });
    return found;
}

std::vector<std::string> extract_hashtags(std::string_view s) {
    std::vector<std::string> out;
    size_t i = 0;
    bool at_tag = false;
    std::string tag;
    while (i < s.size()) {
        uint32_t cp = decode_utf8(s, i);
        if (at_tag && is_word_codepoint(cp)) {
            encode_utf8(fold_codepoint(cp), tag);
            continue;
        }
        if (at_tag) {
            if (!tag.empty()) out.push_back(tag);
            tag.clear();
            at_tag = false;
        }
        if (cp == '#') at_tag = true;
    }
    if (at_tag && !tag.empty()) out.push_back(tag);
    return out;
}

std::string normalize_place_name(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    bool pending_space = false;
    while (i < s.size()) {
        uint32_t cp = decode_utf8(s, i);
        if (is_word_codepoint(cp)) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            encode_utf8(fold_codepoint(cp), out);
        } else {
            pending_space = true;
        }
    }
    return out;
}

}  // namespace sns
