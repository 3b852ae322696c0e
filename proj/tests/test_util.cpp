#include <set>

#include "doctest.h"
#include "lsim/util/rng.hpp"
#include "lsim/util/text.hpp"
#include "support.hpp"

using namespace lsim;

TEST_SUITE("util") {
    TEST_CASE("streams are reproducible and keyed") {
        rng::Stream a(42), b(42);
        for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
        CHECK(rng::derive(1, {"x", "y"}) == rng::derive(1, {"x", "y"}));
        CHECK(rng::derive(1, {"x", "y"}) != rng::derive(1, {"y", "x"}));
        CHECK(rng::derive(1, {"xy"}) != rng::derive(1, {"x", "y"}));
        CHECK(rng::derive(1, {"x"}) != rng::derive(2, {"x"}));
    }

    TEST_CASE("below stays in range and reaches every value") {
        rng::Stream s(9);
        std::set<std::uint64_t> seen;
        for (int i = 0; i < 2000; ++i) {
            auto v = s.below(7);
            CHECK(v < 7);
            seen.insert(v);
        }
        CHECK(seen.size() == 7);
        for (int i = 0; i < 1000; ++i) {
            double u = s.uniform();
            CHECK(u >= 0.0);
            CHECK(u < 1.0);
        }
    }

    TEST_CASE("fnv1a known vectors") {
        CHECK(rng::fnv1a("") == 0xcbf29ce484222325ULL);
        CHECK(rng::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
        CHECK(rng::digest_hex("a") == "af63dc4c8601ec8c");
    }

    TEST_CASE("words and jaccard") {
        CHECK(text::words("Don't STOP, it's fine.") == std::vector<std::string>{"don't", "stop", "it's", "fine"});
        CHECK(text::collapse_whitespace("  a \t b\n c ") == "a b c");
        std::mt19937_64 gen(3);
        const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f", "g", "h"};
        for (int t = 0; t < 500; ++t) {
            std::set<std::string> x, y;
            for (const auto& w : pool) {
                if (gen() % 2) x.insert(w);
                if (gen() % 3 == 0) y.insert(w);
            }
            CHECK(text::jaccard(x, y) == lsim::testing::jaccard_oracle(x, y));
        }
    }

    TEST_CASE("utf-8 truncation keeps whole characters") {
        const std::string s = "ab\xC3\xA9" "cd";  // é is two bytes
        CHECK(text::truncate_utf8(s, 3) == "ab");
        CHECK(text::truncate_utf8(s, 4) == "ab\xC3\xA9");
        CHECK(text::truncate_utf8(s, 100) == s);
    }
}
