#include <doctest.h>

#include "fixtures.hpp"
#include "polydet/golden.hpp"

using namespace polydet;

TEST_CASE("golden vectors are reproduced") {
    const GoldenFile f = GoldenFile::load(fixture("golden_vectors.json"));
    CHECK(f.pack == "genus2_pack.json");
    for (const GoldenVector& v : f.vectors) {
        CAPTURE(v.key);
        const cplx got = evaluate_golden(v, genus2_pack());
        CAPTURE(got);
        CAPTURE(v.value);
        CHECK(golden_match(got, v.value));
    }
}

TEST_CASE("every golden op is covered by the checked-in file") {
    const GoldenFile f = GoldenFile::load(fixture("golden_vectors.json"));
    for (const std::string& op : golden_ops()) {
        CAPTURE(op);
        bool seen = false;
        for (const GoldenVector& v : f.vectors) seen = seen || v.op == op;
        CHECK(seen);
    }
}
