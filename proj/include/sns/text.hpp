#ifndef SNS_TEXT_HPP
#define SNS_TEXT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace sns {

// Tokenization rules shared by relevance filtering and sentiment scoring:
// word tokens are maximal runs of word codepoints, folded to lowercase.
// Simple case folding covers ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic; accented letters are preserved ("huracán" stays distinct from
// "huracan"). '#' is a separator, so "#sandy" yields the token "sandy".

uint32_t fold_codepoint(uint32_t cp);
bool is_word_codepoint(uint32_t cp);

// Lowercase the whole string (word and non-word codepoints alike).
std::string fold_case(std::string_view s);

// Invokes fn(token) for each folded word token, in order.
void for_each_token(std::string_view s, const std::function<void(std::string_view)>& fn);

std::vector<std::string> tokenize(std::string_view s);

size_t count_tokens(std::string_view s);

// True when any token of the folded text equals `folded_token`.
bool has_token(std::string_view text, std::string_view folded_token);

// Normalization for gazetteer keys and self-reported locations: fold case,
// replace punctuation with spaces, collapse whitespace runs.
std::string normalize_place_name(std::string_view s);

// Folded hashtag bodies found in raw text ('#' followed by word codepoints).
std::vector<std::string> extract_hashtags(std::string_view s);

}  // namespace sns

#endif
