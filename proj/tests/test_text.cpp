#include <doctest.h>

#include "sns/text.hpp"

using namespace sns;

TEST_SUITE_BEGIN("text");

TEST_CASE("fold_case lowers ascii and accented latin") {
    CHECK(fold_case("SANDY") == "sandy");
    CHECK(fold_case("HURACÁN") == "huracán");  // Á -> á
    CHECK(fold_case("huracán") == "huracán");
    CHECK(fold_case("ŠKODA") == "škoda");  // Š -> š
    CHECK(fold_case("МОСКВА") ==
          "москва");  // МОСКВА -> москва
}

TEST_CASE("tokenize splits on punctuation and strips hashes") {
    CHECK(tokenize("Hurricane Sandy approaching!") ==
          std::vector<std::string>{"hurricane", "sandy", "approaching"});
    CHECK(tokenize("#Sandy hits NYC...") == std::vector<std::string>{"sandy", "hits", "nyc"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("--- !!! ---") == std::vector<std::string>{});
    CHECK(tokenize("don't") == std::vector<std::string>{"don", "t"});
}

TEST_CASE("accents are preserved, not stripped") {
    auto toks = tokenize("el huracán llegó");
    REQUIRE(toks.size() == 3);
    CHECK(toks[1] == "huracán");
    CHECK(has_token("EL HURACÁN", "huracán"));
    CHECK_FALSE(has_token("el huracan", "huracán"));
}

TEST_CASE("token boundaries: sand is not sandy") {
    CHECK(has_token("Hurricane Sandy approaching", "sandy"));
    CHECK_FALSE(has_token("beach sand today", "sandy"));
    CHECK_FALSE(has_token("sandyaid fundraiser", "sandy"));  // whole-token rule
}

TEST_CASE("count_tokens matches tokenize size") {
    const char* samples[] = {"good good bad day", "", "#a #b c", "¡hola! señor"};
    for (const char* s : samples) CHECK(count_tokens(s) == tokenize(s).size());
}

TEST_CASE("extract_hashtags folds and keeps word runs") {
    CHECK(extract_hashtags("see #Sandy and #NYC2012 now") ==
          std::vector<std::string>{"sandy", "nyc2012"});
    CHECK(extract_hashtags("## #") == std::vector<std::string>{});
    CHECK(extract_hashtags("tail #tag") == std::vector<std::string>{"tag"});
}

TEST_CASE("normalize_place_name strips punctuation and case") {
    CHECK(normalize_place_name("New York, NY") == "new york ny");
    CHECK(normalize_place_name("  Québec!! ") == "québec");
    CHECK(normalize_place_name("") == "");
}

TEST_SUITE_END();
