#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "catamatch/field.hpp"

namespace cm {

/// Append-only / random-access packed bit buffer (MSB-first within a value).
class BitVec {
public:
    void append(u64 value, unsigned bits);
    u64 read(std::size_t offset, unsigned bits) const;
    std::size_t size_bits() const noexcept { return bits_; }
    bool bit(std::size_t i) const;
    void flip(std::size_t i);
    bool operator==(const BitVec& o) const noexcept { return bits_ == o.bits_ && bytes_ == o.bytes_; }
    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

enum class CaseTag { TwoA, TwoB, TwoAPrime, TwoBPrime, PmEdge, EdTuple };

const char* case_tag_name(CaseTag t);

/// One journal entry: which block was compressed, under which case, with
/// which stored metadata, and the honest bit accounting for the rewrite.
struct CompressionRecord {
    std::size_t block = 0;
    CaseTag tag = CaseTag::TwoA;
    unsigned tag_bits = 0;      // width of the tag field on this tape (0 or 1 here)
    u64 tag_value = 0;
    std::vector<u64> meta;      // case-specific fields, fixed order
    std::vector<unsigned> meta_bits;
    std::vector<std::size_t> dropped;   // value positions removed, ascending
    u64 bits_before = 0;
    u64 bits_after = 0;
    bool restored = false;

    long long saved_bits() const {
        return static_cast<long long>(bits_before) - static_cast<long long>(bits_after);
    }
};

/// Simulated catalytic tape: N blocks of m values, each value b bits wide,
/// plus a snapshot taken at construction. Compression rewrites a block in a
/// shorter case-specific layout; restoration must bring every bit back to
/// the snapshot, which verify_restored checks by full comparison. The rank
/// scratch block B of the model is ordinary workspace here and excluded from
/// the snapshot contract (tracked only by the advisory accounting).
class CatalyticTape {
public:
    static CatalyticTape from_seed(u64 seed, std::size_t values_per_block,
                                   std::size_t blocks, const FieldSpec& spec);
    /// Interprets raw bytes as a bit stream, b bits per value, modulo s.
    /// Throws InvalidInput when the buffer is too short.
    static CatalyticTape from_bytes(const std::vector<std::uint8_t>& bytes,
                                    std::size_t values_per_block,
                                    std::size_t blocks, const FieldSpec& spec);
    /// Explicit values (already in [0, s)); used to engineer adversarial tapes.
    static CatalyticTape from_values(const std::vector<std::vector<u64>>& blocks,
                                     const FieldSpec& spec);

    std::size_t block_count() const noexcept { return block_bits_.size(); }
    std::size_t values_per_block() const noexcept { return m_; }
    const FieldSpec& spec() const noexcept { return spec_; }

    bool pristine(std::size_t t) const;
    /// Decoded values of a pristine block; ContractViolation while compressed.
    std::vector<u64> values(std::size_t t) const;

    /// Rewrites block t in the compressed layout
    ///   [tag][meta...][remaining values]. The caller supplies the layout
    /// widths; meta and meta_bits must have equal length. bits_after must be
    /// strictly smaller than bits_before unless allow_growth is set (the
    /// growth path is only for desk-scale ED-TUPLE records; accounting stays
    /// honest either way).
    const CompressionRecord& compress_block(std::size_t t, CaseTag tag, unsigned tag_bits,
                                            u64 tag_value,
                                            std::vector<std::size_t> dropped,
                                            std::vector<u64> meta,
                                            std::vector<unsigned> meta_bits,
                                            bool allow_growth = false);

    /// Maps the journal record plus the surviving values to the candidate
    /// tuples for the dropped values. Restoration demands exactly one.
    using Recompute = std::function<std::vector<std::vector<u64>>(
        const CompressionRecord&, const std::vector<u64>&)>;

    /// Recomputes the forgotten values and rewrites block t pristine.
    /// UniquenessViolation when the callback yields zero or >= 2 candidates.
    void restore_block(std::size_t t, const Recompute& recompute);

    /// Surviving values of a compressed block, in original order with the
    /// dropped positions absent (diagnostic / restoration view).
    std::vector<u64> remaining_values(std::size_t t) const;
    const CompressionRecord& record_for(std::size_t t) const;

    /// True iff every block is pristine and bit-identical to the snapshot.
    bool verify_restored() const;

    const std::vector<CompressionRecord>& journal() const noexcept { return journal_; }
    std::size_t compressed_count() const;
    /// Net bits currently freed by live (unrestored) compressions.
    long long freed_bits() const;

    /// Compute-branch helper: shifts all blocks into one contiguous buffer
    /// and returns the freed bit count granted to the fallback as scratch.
    u64 compact();
    void uncompact();

    /// Test hook: flips one bit of a block in place.
    void flip_bit(std::size_t t, std::size_t bit);

    u64 snapshot_hash() const noexcept { return snapshot_hash_; }

private:
    CatalyticTape(std::size_t m, FieldSpec spec) : m_(m), spec_(spec) {}
    void finish_init();
    BitVec encode_values(const std::vector<u64>& vals) const;

    std::size_t m_;
    FieldSpec spec_;
    std::vector<BitVec> block_bits_;
    std::vector<int> live_record_;       // journal index per block, -1 if pristine
    std::vector<BitVec> snapshot_;
    u64 snapshot_hash_ = 0;
    std::vector<CompressionRecord> journal_;
    bool compacted_ = false;
    BitVec arena_;
};

} // namespace cm
