#include "catamatch/tape.hpp"

#include <algorithm>
#include <random>

#include "catamatch/errors.hpp"

namespace cm {

void BitVec::append(u64 value, unsigned bits) {
    if (bits > 64) throw InvalidInput("BitVec::append: width > 64");
    if (bits < 64 && (value >> bits) != 0)
        throw InvalidInput("BitVec::append: value does not fit the field width");
    for (unsigned k = bits; k-- > 0;) {
        if (bits_ % 8 == 0) bytes_.push_back(0);
        if ((value >> k) & 1u)
            bytes_[bits_ / 8] |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
        ++bits_;
    }
}

u64 BitVec::read(std::size_t offset, unsigned bits) const {
    if (bits > 64 || offset + bits > bits_) throw InvalidInput("BitVec::read out of range");
    u64 v = 0;
    for (unsigned k = 0; k < bits; ++k) {
        const std::size_t i = offset + k;
        v = (v << 1) | ((bytes_[i / 8] >> (7 - i % 8)) & 1u);
    }
    return v;
}

bool BitVec::bit(std::size_t i) const {
    if (i >= bits_) throw InvalidInput("BitVec::bit out of range");
    return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
}

void BitVec::flip(std::size_t i) {
    if (i >= bits_) throw InvalidInput("BitVec::flip out of range");
    bytes_[i / 8] ^= static_cast<std::uint8_t>(0x80u >> (i % 8));
}

const char* case_tag_name(CaseTag t) {
    switch (t) {
        case CaseTag::TwoA: return "2A";
        case CaseTag::TwoB: return "2B";
        case CaseTag::TwoAPrime: return "2A'";
        case CaseTag::TwoBPrime: return "2B'";
        case CaseTag::PmEdge: return "PM-EDGE";
        case CaseTag::EdTuple: return "ED-TUPLE";
    }
    return "?";
}

static u64 fnv1a_bits(const std::vector<BitVec>& blocks) {
    u64 h = 1469598103934665603ull;
    for (const auto& b : blocks) {
        for (std::uint8_t byte : b.bytes()) {
            h ^= byte;
            h *= 1099511628211ull;
        }
        h ^= b.size_bits();
        h *= 1099511628211ull;
    }
    return h;
}

BitVec CatalyticTape::encode_values(const std::vector<u64>& vals) const {
    BitVec bv;
    for (u64 v : vals) bv.append(v, spec_.b);
    return bv;
}

void CatalyticTape::finish_init() {
    live_record_.assign(block_bits_.size(), -1);
    snapshot_ = block_bits_;
    snapshot_hash_ = fnv1a_bits(snapshot_);
}

CatalyticTape CatalyticTape::from_seed(u64 seed, std::size_t values_per_block,
                                       std::size_t blocks, const FieldSpec& spec) {
    CatalyticTape t(values_per_block, spec);
    std::mt19937_64 rng(seed);
    t.block_bits_.reserve(blocks);
    for (std::size_t i = 0; i < blocks; ++i) {
        std::vector<u64> vals(values_per_block);
        for (auto& v : vals) {
            // Draw b bits, then fold into [0, s). Every residue is reachable.
            u64 raw = spec.b == 0 ? 0 : (rng() & ((spec.b == 64 ? ~0ull : (1ull << spec.b) - 1)));
            v = spec.s == 0 ? 0 : raw % spec.s;
        }
        t.block_bits_.push_back(t.encode_values(vals));
    }
    t.finish_init();
    return t;
}

CatalyticTape CatalyticTape::from_bytes(const std::vector<std::uint8_t>& bytes,
                                        std::size_t values_per_block,
                                        std::size_t blocks, const FieldSpec& spec) {
    const std::size_t need_bits = blocks * values_per_block * spec.b;
    if (bytes.size() * 8 < need_bits)
        throw InvalidInput("tape file too short: need " + std::to_string((need_bits + 7) / 8) +
                           " bytes, got " + std::to_string(bytes.size()));
    CatalyticTape t(values_per_block, spec);
    BitVec all;
    for (std::uint8_t by : bytes) all.append(by, 8);
    std::size_t off = 0;
    for (std::size_t i = 0; i < blocks; ++i) {
        std::vector<u64> vals(values_per_block);
        for (auto& v : vals) {
            const u64 raw = spec.b == 0 ? 0 : all.read(off, spec.b);
            off += spec.b;
            v = raw % spec.s;
        }
        t.block_bits_.push_back(t.encode_values(vals));
    }
    t.finish_init();
    return t;
}

CatalyticTape CatalyticTape::from_values(const std::vector<std::vector<u64>>& blocks,
                                         const FieldSpec& spec) {
    if (blocks.empty()) throw InvalidInput("tape needs at least one block");
    CatalyticTape t(blocks.front().size(), spec);
    for (const auto& vals : blocks) {
        if (vals.size() != t.m_) throw InvalidInput("tape blocks must have equal length");
        for (u64 v : vals)
            if (v >= spec.s) throw InvalidInput("tape value outside the value set");
        t.block_bits_.push_back(t.encode_values(vals));
    }
    t.finish_init();
    return t;
}

bool CatalyticTape::pristine(std::size_t t) const {
    if (t >= block_bits_.size()) throw InvalidInput("tape block index out of range");
    return live_record_[t] < 0;
}

std::vector<u64> CatalyticTape::values(std::size_t t) const {
    if (compacted_) throw ContractViolation("tape is compacted");
    if (!pristine(t)) throw ContractViolation("reading values of a compressed block");
    std::vector<u64> vals(m_);
    for (std::size_t i = 0; i < m_; ++i) vals[i] = block_bits_[t].read(i * spec_.b, spec_.b);
    return vals;
}

const CompressionRecord& CatalyticTape::compress_block(
    std::size_t t, CaseTag tag, unsigned tag_bits, u64 tag_value,
    std::vector<std::size_t> dropped, std::vector<u64> meta,
    std::vector<unsigned> meta_bits, bool allow_growth) {
    if (compacted_) throw ContractViolation("tape is compacted");
    if (!pristine(t)) throw ContractViolation("block is already compressed");
    if (meta.size() != meta_bits.size())
        throw ContractViolation("meta and meta_bits lengths differ");
    std::sort(dropped.begin(), dropped.end());
    if (std::adjacent_find(dropped.begin(), dropped.end()) != dropped.end())
        throw ContractViolation("duplicate dropped position");
    if (!dropped.empty() && dropped.back() >= m_)
        throw ContractViolation("dropped position out of range");

    const std::vector<u64> vals = values(t);

    CompressionRecord rec;
    rec.block = t;
    rec.tag = tag;
    rec.tag_bits = tag_bits;
    rec.tag_value = tag_value;
    rec.meta = std::move(meta);
    rec.meta_bits = std::move(meta_bits);
    rec.dropped = std::move(dropped);
    rec.bits_before = block_bits_[t].size_bits();

    BitVec bv;
    bv.append(tag_value, tag_bits);
    for (std::size_t i = 0; i < rec.meta.size(); ++i) bv.append(rec.meta[i], rec.meta_bits[i]);
    std::size_t d = 0;
    for (std::size_t i = 0; i < m_; ++i) {
        if (d < rec.dropped.size() && rec.dropped[d] == i) {
            ++d;
            continue;
        }
        bv.append(vals[i], spec_.b);
    }
    rec.bits_after = bv.size_bits();
    if (!allow_growth && rec.bits_after >= rec.bits_before)
        throw ContractViolation("compressed layout is not smaller than the block (" +
                                std::to_string(rec.bits_after) + " >= " +
                                std::to_string(rec.bits_before) + " bits)");

    block_bits_[t] = std::move(bv);
    journal_.push_back(std::move(rec));
    live_record_[t] = static_cast<int>(journal_.size() - 1);
    return journal_.back();
}

std::vector<u64> CatalyticTape::remaining_values(std::size_t t) const {
    if (compacted_) throw ContractViolation("tape is compacted");
    if (pristine(t)) throw ContractViolation("block is not compressed");
    const CompressionRecord& rec = journal_[static_cast<std::size_t>(live_record_[t])];
    std::size_t off = rec.tag_bits;
    for (unsigned w : rec.meta_bits) off += w;
    std::vector<u64> vals;
    vals.reserve(m_ - rec.dropped.size());
    for (std::size_t i = 0; i < m_ - rec.dropped.size(); ++i) {
        vals.push_back(block_bits_[t].read(off, spec_.b));
        off += spec_.b;
    }
    return vals;
}

const CompressionRecord& CatalyticTape::record_for(std::size_t t) const {
    if (pristine(t)) throw ContractViolation("block is not compressed");
    return journal_[static_cast<std::size_t>(live_record_[t])];
}

void CatalyticTape::restore_block(std::size_t t, const Recompute& recompute) {
    if (compacted_) throw ContractViolation("tape is compacted");
    if (pristine(t)) throw ContractViolation("restoring a pristine block");
    const std::size_t rec_idx = static_cast<std::size_t>(live_record_[t]);
    const CompressionRecord& rec = journal_[rec_idx];
    const std::vector<u64> rest = remaining_values(t);

    const auto candidates = recompute(rec, rest);
    if (candidates.size() != 1)
        throw UniquenessViolation(std::string("case ") + case_tag_name(rec.tag) + ", block " +
                                  std::to_string(t) + ": " + std::to_string(candidates.size()) +
                                  " candidates for the dropped values (expected exactly 1)");
    const std::vector<u64>& filled = candidates.front();
    if (filled.size() != rec.dropped.size())
        throw ContractViolation("restoration candidate has wrong arity");

    std::vector<u64> vals(m_);
    std::size_t d = 0, r = 0;
    for (std::size_t i = 0; i < m_; ++i) {
        if (d < rec.dropped.size() && rec.dropped[d] == i)
            vals[i] = filled[d++];
        else
            vals[i] = rest[r++];
    }
    block_bits_[t] = encode_values(vals);
    live_record_[t] = -1;
    journal_[rec_idx].restored = true;
}

bool CatalyticTape::verify_restored() const {
    if (compacted_) return false;
    for (std::size_t t = 0; t < block_bits_.size(); ++t) {
        if (live_record_[t] >= 0) return false;
        if (!(block_bits_[t] == snapshot_[t])) return false;
    }
    return true;
}

std::size_t CatalyticTape::compressed_count() const {
    std::size_t n = 0;
    for (int r : live_record_)
        if (r >= 0) ++n;
    return n;
}

long long CatalyticTape::freed_bits() const {
    long long total = 0;
    for (int r : live_record_)
        if (r >= 0) total += journal_[static_cast<std::size_t>(r)].saved_bits();
    return total;
}

u64 CatalyticTape::compact() {
    if (compacted_) throw ContractViolation("tape is already compacted");
    // Shift every block flush into one contiguous buffer; the difference to
    // the pristine footprint is the scratch granted to the compute branch.
    arena_ = BitVec{};
    u64 pristine_bits = 0;
    for (std::size_t t = 0; t < block_bits_.size(); ++t) {
        const BitVec& b = block_bits_[t];
        for (std::size_t i = 0; i < b.size_bits(); ++i)
            arena_.append(b.bit(i) ? 1 : 0, 1);
        pristine_bits += snapshot_[t].size_bits();
    }
    compacted_ = true;
    return pristine_bits - arena_.size_bits();
}

void CatalyticTape::uncompact() {
    if (!compacted_) throw ContractViolation("tape is not compacted");
    std::size_t off = 0;
    for (std::size_t t = 0; t < block_bits_.size(); ++t) {
        const std::size_t want = live_record_[t] < 0
                                     ? snapshot_[t].size_bits()
                                     : journal_[static_cast<std::size_t>(live_record_[t])].bits_after;
        BitVec b;
        for (std::size_t i = 0; i < want; ++i) b.append(arena_.bit(off + i) ? 1 : 0, 1);
        off += want;
        block_bits_[t] = std::move(b);
    }
    arena_ = BitVec{};
    compacted_ = false;
}

void CatalyticTape::flip_bit(std::size_t t, std::size_t bit) {
    if (t >= block_bits_.size()) throw InvalidInput("tape block index out of range");
    block_bits_[t].flip(bit);
}

} // namespace cm
