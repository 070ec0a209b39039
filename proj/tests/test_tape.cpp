#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catamatch/tape.hpp"

using namespace cm;

namespace {

const FieldSpec kSpec{101, 16};  // b = 4 bits per value

CatalyticTape::Recompute fixed_candidates(std::vector<std::vector<u64>> cands) {
    return [cands](const CompressionRecord&, const std::vector<u64>&) { return cands; };
}

} // namespace

TEST_CASE("bit vector append/read round trip") {
    BitVec v;
    v.append(0b101, 3);
    v.append(0b0110, 4);
    v.append(1, 1);
    CHECK(v.size_bits() == 8);
    CHECK(v.read(0, 3) == 0b101);
    CHECK(v.read(3, 4) == 0b0110);
    CHECK(v.read(7, 1) == 1);
    v.flip(7);
    CHECK(v.read(7, 1) == 0);
}

TEST_CASE("seeded tape is deterministic and in range") {
    const CatalyticTape t1 = CatalyticTape::from_seed(42, 5, 3, kSpec);
    const CatalyticTape t2 = CatalyticTape::from_seed(42, 5, 3, kSpec);
    CHECK(t1.snapshot_hash() == t2.snapshot_hash());
    for (std::size_t b = 0; b < 3; ++b) {
        CHECK(t1.values(b) == t2.values(b));
        for (u64 v : t1.values(b)) CHECK(v < kSpec.s);
    }
    const CatalyticTape t3 = CatalyticTape::from_seed(43, 5, 3, kSpec);
    CHECK(t1.snapshot_hash() != t3.snapshot_hash());
}

TEST_CASE("byte-backed tape decodes the bit stream") {
    const std::vector<std::uint8_t> zeros(16, 0);
    const CatalyticTape t = CatalyticTape::from_bytes(zeros, 4, 2, kSpec);
    for (std::size_t b = 0; b < 2; ++b)
        for (u64 v : t.values(b)) CHECK(v == 0);
    CHECK_THROWS_AS(CatalyticTape::from_bytes({0x00}, 4, 2, kSpec), InvalidInput);
}

TEST_CASE("explicit values are validated") {
    CHECK_NOTHROW(CatalyticTape::from_values({{1, 2}, {3, 4}}, kSpec));
    CHECK_THROWS_AS(CatalyticTape::from_values({{16, 0}}, kSpec), InvalidInput);
    CHECK_THROWS_AS(CatalyticTape::from_values({{1, 2}, {3}}, kSpec), InvalidInput);
}

TEST_CASE("compression must shrink unless growth is allowed") {
    CatalyticTape t = CatalyticTape::from_values({{7, 9, 3}}, kSpec);
    // layout 1 + 5 + 8 = 14 > 12: rejected
    CHECK_THROWS_AS(t.compress_block(0, CaseTag::TwoA, 1, 0, {1}, {1, 5}, {2, 3}),
                    ContractViolation);
    CHECK(t.pristine(0));
    // 1 + 2 + 8 = 11 < 12: accepted
    const auto& rec = t.compress_block(0, CaseTag::TwoA, 1, 0, {1}, {2}, {2});
    CHECK(rec.saved_bits() == 1);
    CHECK(!t.pristine(0));
    CHECK(t.remaining_values(0) == std::vector<u64>{7, 3});
    CHECK_THROWS_AS(t.values(0), ContractViolation);
    t.restore_block(0, fixed_candidates({{9}}));
    CHECK(t.pristine(0));
    CHECK(t.values(0) == std::vector<u64>{7, 9, 3});
    CHECK(t.verify_restored());
    CHECK(t.journal().size() == 1);
    CHECK(t.journal()[0].restored);
}

TEST_CASE("growth is allowed only on request and accounted honestly") {
    CatalyticTape t = CatalyticTape::from_values({{7, 9, 3}}, kSpec);
    const auto& rec = t.compress_block(0, CaseTag::EdTuple, 0, 0, {1}, {1, 5, 2}, {2, 9, 4}, true);
    CHECK(rec.saved_bits() == 12 - (2 + 9 + 4 + 8));
    CHECK(rec.saved_bits() < 0);
    t.restore_block(0, fixed_candidates({{9}}));
    CHECK(t.verify_restored());
}

TEST_CASE("restoration demands exactly one candidate") {
    CatalyticTape t = CatalyticTape::from_values({{7, 9, 3}}, kSpec);
    t.compress_block(0, CaseTag::TwoB, 1, 1, {0}, {2}, {2});
    CHECK_THROWS_AS(t.restore_block(0, fixed_candidates({})), UniquenessViolation);
    CHECK_THROWS_AS(t.restore_block(0, fixed_candidates({{7}, {8}})), UniquenessViolation);
    t.restore_block(0, fixed_candidates({{7}}));
    CHECK(t.verify_restored());
}

TEST_CASE("verify_restored sees single-bit damage") {
    CatalyticTape t = CatalyticTape::from_values({{7, 9, 3}}, kSpec);
    CHECK(t.verify_restored());
    t.flip_bit(0, 5);
    CHECK(!t.verify_restored());
    t.flip_bit(0, 5);
    CHECK(t.verify_restored());
}

TEST_CASE("restoring with the wrong value is caught by verification") {
    CatalyticTape t = CatalyticTape::from_values({{7, 9, 3}}, kSpec);
    t.compress_block(0, CaseTag::TwoA, 1, 0, {1}, {2}, {2});
    t.restore_block(0, fixed_candidates({{8}}));  // wrong unique candidate
    CHECK(t.pristine(0));
    CHECK(!t.verify_restored());
}

TEST_CASE("compact frees the saved bits and uncompact restores the layout") {
    CatalyticTape t = CatalyticTape::from_values({{7, 9, 3}, {1, 2, 3}, {4, 5, 6}}, kSpec);
    t.compress_block(0, CaseTag::TwoA, 1, 0, {1}, {2}, {2});
    t.compress_block(2, CaseTag::TwoB, 1, 1, {0}, {3}, {2});
    const long long freed = t.freed_bits();
    CHECK(freed == t.compact());
    CHECK_THROWS_AS(t.values(1), ContractViolation);  // no block access while compacted
    t.uncompact();
    CHECK(t.values(1) == std::vector<u64>{1, 2, 3});
    t.restore_block(0, fixed_candidates({{9}}));
    t.restore_block(2, fixed_candidates({{4}}));
    CHECK(t.verify_restored());
}

TEST_CASE("api misuse is rejected") {
    CatalyticTape t = CatalyticTape::from_values({{7, 9, 3}}, kSpec);
    CHECK_THROWS_AS(t.restore_block(0, fixed_candidates({{1}})), ContractViolation);
    t.compress_block(0, CaseTag::TwoA, 1, 0, {1}, {2}, {2});
    CHECK_THROWS_AS(t.compress_block(0, CaseTag::TwoA, 1, 0, {0}, {5}, {2}), ContractViolation);
}
