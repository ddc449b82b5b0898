#include <doctest.h>

#include <set>
#include <unordered_set>

#include "helpers.hpp"
#include "sns/errors.hpp"
#include "sns/ingest.hpp"
#include "sns/text.hpp"

using namespace sns;
using namespace sns::testing;

TEST_SUITE_BEGIN("ingest");

TEST_CASE("duplicate message ids keep the first occurrence") {
    const std::string data =
        R"({"id":"a","user":"u1","ts":"2012-10-30T01:00:00Z","text":"first"})"
        "\n"
        R"({"id":"b","user":"u2","ts":"2012-10-30T02:00:00Z","text":"second"})"
        "\n"
        R"({"id":"a","user":"u3","ts":"2012-10-30T03:00:00Z","text":"dup"})"
        "\n";
    auto result = parse_stream(data);
    CHECK(result.messages.size() == 2);
    CHECK(result.report.lines == 3);
    CHECK(result.report.parsed == 3);
    CHECK(result.report.duplicates == 1);
    for (const auto& m : result.messages) CHECK(m.text != "dup");
}

TEST_CASE("empty input yields empty lists") {
    auto result = parse_stream("");
    CHECK(result.messages.empty());
    CHECK(result.profiles.empty());
    CHECK(result.report.lines == 0);
}

TEST_CASE("malformed lines are skipped and counted") {
    const std::string data =
        R"({"id":"a","user":"u1","ts":"2012-10-30T01:00:00Z","text":"ok"})"
        "\n"
        "this is not json\n"
        R"({"id":"b","user":"u2","ts":"bogus-time","text":"bad ts"})"
        "\n"
        R"({"id":"c","user":"u2","ts":"2012-10-30T01:30:00Z","text":"ok"})"
        "\n"
        R"({"id":"d","user":"u2","ts":"2012-10-30T01:40:00Z","text":"ok"})"
        "\n";
    auto result = parse_stream(data);
    CHECK(result.messages.size() == 3);
    CHECK(result.report.malformed == 2);
    REQUIRE(result.report.malformed_samples.size() == 2);
    CHECK(result.report.malformed_samples[0] == "this is not json");
}

TEST_CASE("mostly-malformed input raises a suspicious-input error") {
    const std::string data =
        "garbage one\n"
        "garbage two\n"
        R"({"id":"a","user":"u1","ts":"2012-10-30T01:00:00Z","text":"ok"})"
        "\n";
    CHECK_THROWS_AS(parse_stream(data), DataError);
    try {
        parse_stream(data);
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("garbage one") != std::string::npos);
    }
}

TEST_CASE("profiles merge by user id with last-write-wins counts") {
    const std::string data =
        R"({"user":"u1","location":"New York, NY","friends":10,"followers":5})"
        "\n"
        R"({"user":"u1","friends":12,"followers":7})"
        "\n"
        R"({"user":"u2","location":"Boston"})"
        "\n";
    auto result = parse_stream(data);
    REQUIRE(result.profiles.size() == 2);
    CHECK(result.profiles[0].user_id == "u1");
    CHECK(result.profiles[0].friends_count == 12);
    CHECK(result.profiles[0].followers_count == 7);
    CHECK(result.profiles[0].self_location == "New York, NY");
    CHECK(result.profiles[1].self_location == "Boston");
}

TEST_CASE("message records can carry embedded profile fields") {
    const std::string data =
        R"({"id":"a","user":"u1","ts":1351555200,"text":"sandy","friends":3,"followers":9})"
        "\n";
    auto result = parse_stream(data);
    REQUIRE(result.messages.size() == 1);
    REQUIRE(result.profiles.size() == 1);
    CHECK(result.profiles[0].friends_count == 3);
    CHECK(result.profiles[0].followers_count == 9);
}

TEST_CASE("schema remapping via field map") {
    FieldMap f;
    f.id = "tweet_id";
    f.user = "uid";
    f.ts = "created_at";
    const std::string data =
        R"({"tweet_id":"x","uid":"u9","created_at":"2012-10-30T00:00:00Z","text":"sandy"})"
        "\n";
    auto result = parse_stream(data, f);
    REQUIRE(result.messages.size() == 1);
    CHECK(result.messages[0].offset_h == 0.0);
}

TEST_CASE("offset is exact to one second and epoch is configurable") {
    ParseOptions opts;
    opts.reference_epoch = civil_to_epoch_s(2012, 10, 30);
    const std::string data =
        R"({"id":"a","user":"u","ts":"2012-10-30T00:00:01Z","text":"t"})"
        "\n";
    auto result = parse_stream(data, {}, opts);
    CHECK(result.messages[0].offset_h == doctest::Approx(1.0 / 3600.0).epsilon(1e-12));
}

TEST_CASE("hashtags come from the field or from the text") {
    const std::string with_field =
        R"({"id":"a","user":"u","ts":0,"text":"x","hashtags":["#Sandy","NYC"]})"
        "\n";
    auto r1 = parse_stream(with_field);
    CHECK(r1.messages[0].hashtags == std::vector<std::string>{"sandy", "nyc"});

    const std::string from_text =
        R"({"id":"a","user":"u","ts":0,"text":"watch #Sandy now"})"
        "\n";
    auto r2 = parse_stream(from_text);
    CHECK(r2.messages[0].hashtags == std::vector<std::string>{"sandy"});
}

TEST_CASE("strict filter keeps whole-token sandy only") {
    std::vector<Message> msgs(3);
    msgs[0].message_id = "1";
    msgs[0].text = "Hurricane Sandy approaching";
    msgs[1].message_id = "2";
    msgs[1].text = "beach sand today";
    msgs[2].message_id = "3";
    msgs[2].text = "nothing here";
    msgs[2].hashtags = {"sandy"};

    auto kept = filter_relevance(msgs, FilterLevel::strict);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].message_id == "1");
    CHECK(kept[1].message_id == "3");  // hashtag form counts
}

TEST_CASE("moderate filter matches the accented keyword") {
    std::vector<Message> msgs(2);
    msgs[0].message_id = "1";
    msgs[0].text = "el HURACÁN llega";
    msgs[1].message_id = "2";
    msgs[1].text = "el huracan llega";  // unaccented: not a keyword
    auto kept = filter_relevance(msgs, FilterLevel::moderate);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].message_id == "1");
}

TEST_CASE("filter levels nest and are idempotent; none passes through") {
    auto msgs = random_messages(2000, 42);
    auto strict = filter_relevance(msgs, FilterLevel::strict);
    auto moderate = filter_relevance(msgs, FilterLevel::moderate);
    auto none = filter_relevance(msgs, FilterLevel::none);

    CHECK(none.size() == msgs.size());

    std::unordered_set<std::string> moderate_ids;
    for (const auto& m : moderate) moderate_ids.insert(m.message_id);
    for (const auto& m : strict) CHECK(moderate_ids.count(m.message_id) == 1);
    CHECK(strict.size() <= moderate.size());
    CHECK(moderate.size() <= msgs.size());

    CHECK(same_message_multiset(filter_relevance(strict, FilterLevel::strict), strict));
    CHECK(same_message_multiset(filter_relevance(moderate, FilterLevel::moderate), moderate));

    // Order is preserved.
    for (size_t i = 1; i < strict.size(); ++i)
        CHECK(std::stoul(strict[i - 1].message_id.substr(1)) <
              std::stoul(strict[i].message_id.substr(1)));
}

TEST_CASE("pre-event noise is suppressed by the strict filter") {
    // 20% of the stream is pre-event "storm"-only noise placed before -192 h;
    // the rest is on-topic traffic later on.
    Rng rng(7);
    std::vector<Message> msgs;
    for (int i = 0; i < 10000; ++i) {
        Message m;
        m.message_id = "m" + std::to_string(i);
        m.user_id = "u" + std::to_string(i % 500);
        if (i % 5 == 0) {
            m.offset_h = rng.uniform(-400, -192.01);
            m.text = "big storm rolling in";
        } else {
            m.offset_h = rng.uniform(-100, 150);
            m.text = i % 3 == 0 ? "sandy is coming" : "#sandy prep underway";
            m.hashtags = extract_hashtags(m.text);
        }
        m.timestamp = default_reference_epoch() + static_cast<int64_t>(m.offset_h * 3600);
        msgs.push_back(std::move(m));
    }
    auto kept = filter_relevance(msgs, FilterLevel::strict);

    // Brute-force oracle: token-scan every message independently.
    size_t expected = 0, early_survivors = 0;
    for (const auto& m : msgs) {
        bool hit = has_token(m.text, "sandy");
        for (const auto& h : m.hashtags) hit = hit || h == "sandy";
        if (hit) {
            ++expected;
            if (m.offset_h < -192) ++early_survivors;
        }
    }
    CHECK(kept.size() == expected);
    CHECK(static_cast<double>(early_survivors) < 0.01 * static_cast<double>(kept.size()));
}

TEST_CASE("keyword histogram bins with offset zero as boundary") {
    std::vector<Message> msgs(2);
    msgs[0].text = "storm watch";
    msgs[0].offset_h = 0.5;
    msgs[1].text = "storm again";
    msgs[1].offset_h = 1.5;
    auto hist = keyword_histogram(msgs, "storm", 1.0);
    REQUIRE(hist.solo.size() == 2);
    CHECK(hist.solo.at(0) == 1);
    CHECK(hist.solo.at(1) == 1);
    CHECK(hist.with_sandy.empty());
}

TEST_CASE("keyword histogram: absent keyword gives empty histogram") {
    auto msgs = random_messages(100, 3);
    auto hist = keyword_histogram(msgs, "zebra", 2.0);
    CHECK(hist.solo.empty());
    size_t total = 0;
    for (auto& [_, c] : hist.solo) total += c;
    CHECK(total == 0);
}

TEST_CASE("keyword histogram equals brute-force per-bin counts") {
    auto msgs = random_messages(5000, 11);
    const double bin_h = 6.0;
    auto hist = keyword_histogram(msgs, "storm", bin_h);

    std::map<int64_t, size_t> expect_solo, expect_both;
    for (const auto& m : msgs) {
        bool storm = has_token(m.text, "storm");
        for (const auto& h : m.hashtags) storm = storm || h == "storm";
        if (!storm) continue;
        bool sandy = has_token(m.text, "sandy");
        for (const auto& h : m.hashtags) sandy = sandy || h == "sandy";
        auto idx = static_cast<int64_t>(std::floor(m.offset_h / bin_h));
        ++expect_solo[idx];
        if (sandy) ++expect_both[idx];
    }
    CHECK(hist.solo == expect_solo);
    CHECK(hist.with_sandy == expect_both);

    size_t total = 0;
    for (auto& [_, c] : hist.solo) total += c;
    size_t matching = 0;
    for (const auto& m : msgs)
        if (message_matches(m, {"storm"})) ++matching;
    CHECK(total == matching);

    CHECK_THROWS_AS(keyword_histogram(msgs, "storm", 0.0), std::invalid_argument);
    CHECK_THROWS_AS(keyword_histogram(msgs, "storm", -1.0), std::invalid_argument);
}

TEST_CASE("serialize-parse round trip is a fixed point") {
    auto msgs = random_messages(3000, 99);
    auto first = parse_stream(to_jsonl(msgs));
    CHECK(first.report.malformed == 0);
    CHECK(same_message_multiset(first.messages, msgs));

    auto second = parse_stream(to_jsonl(first.messages));
    CHECK(same_message_multiset(second.messages, first.messages));
    // Canonical order makes the second pass byte-identical, not just equal.
    CHECK(to_jsonl(second.messages) == to_jsonl(first.messages));
}

TEST_CASE("parallel sharding does not change the output") {
    auto msgs = random_messages(6000, 5);
    auto data = to_jsonl(msgs);
    ParseOptions seq;
    seq.shards = 1;
    ParseOptions par;
    par.shards = 4;
    auto a = parse_stream(data, {}, seq);
    auto b = parse_stream(data, {}, par);
    REQUIRE(a.messages.size() == b.messages.size());
    for (size_t i = 0; i < a.messages.size(); ++i)
        CHECK(same_message(a.messages[i], b.messages[i]));
    CHECK(a.profiles.size() == b.profiles.size());
    CHECK(a.report.parsed == b.report.parsed);
}

TEST_SUITE_END();
