#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "pms8/alphabet.hpp"

namespace pms8 {

// Reference to one window of length l inside the input set.
struct LmerRef {
    uint32_t seq = 0;
    uint32_t offset = 0;
    bool operator==(const LmerRef&) const = default;
};

// For every 16-bit value x, counts_[x] is the number of non-zero b-bit groups
// among the floor(16/b) groups of x, and masks_[x] has bit g set iff group g
// is non-zero. XOR-ing two packed windows and looking up the result counts
// mismatching symbols in one step.
class GroupPopcountTable {
public:
    explicit GroupPopcountTable(int bits_per_symbol);

    int group_width() const { return width_; }
    int groups_per_window() const { return groups_; }

    uint32_t count(uint16_t x) const { return counts_[x]; }
    uint16_t nonzero_groups(uint16_t x) const { return masks_[x]; }

    // 2^16 one-byte counts plus 2^16 two-byte masks, in 8-byte words
    static uint64_t table_words() { return ((uint64_t{1} << 16) * 3) / 8; }

private:
    int width_;
    int groups_;
    std::vector<uint8_t> counts_;
    std::vector<uint16_t> masks_;
};

// n input strings of uniform length m, bit-packed at bits_per_symbol bits per
// code so that a 16-bit window can be extracted at any symbol offset. The
// window at offset j covers symbols j .. j+symbols_per_group16-1 (zero-padded
// past the end of the string); extraction is one unaligned 32-bit load.
class PackedSequenceSet {
public:
    PackedSequenceSet(std::vector<std::string> sequences, Alphabet alphabet, int motif_length);

    int count() const { return n_; }
    int length() const { return m_; }
    int motif_length() const { return l_; }
    int windows_per_seq() const { return m_ - l_ + 1; }
    int64_t total_lmers() const { return int64_t(n_) * windows_per_seq(); }
    const Alphabet& alphabet() const { return alpha_; }
    const std::vector<std::string>& raw() const { return raw_; }

    uint32_t lmer_id(uint32_t seq, uint32_t offset) const {
        return seq * static_cast<uint32_t>(windows_per_seq()) + offset;
    }
    LmerRef ref_of(uint32_t id) const { return refs_[id]; }

    uint8_t code_at(uint32_t seq, uint32_t pos) const { return codes_[size_t(seq) * m_ + pos]; }
    const uint8_t* codes_row(uint32_t seq) const { return codes_.data() + size_t(seq) * m_; }

    uint16_t window16(uint32_t seq, uint32_t sym_offset) const {
        const uint32_t bit = sym_offset * static_cast<uint32_t>(bits_);
        uint32_t v;
        std::memcpy(&v, packed_.data() + size_t(seq) * stride_ + (bit >> 3), sizeof v);
        return static_cast<uint16_t>((v >> (bit & 7)) & window_mask_);
    }

    // raw 64-bit chunk starting at a symbol offset (no masking); covers up to
    // symbols_per_word64() whole symbols minus the shift spill
    uint64_t window64(uint32_t seq, uint32_t sym_offset) const {
        const uint32_t bit = sym_offset * static_cast<uint32_t>(bits_);
        uint64_t v;
        std::memcpy(&v, packed_.data() + size_t(seq) * stride_ + (bit >> 3), sizeof v);
        return v >> (bit & 7);
    }

    // whole symbols per usable 64-bit chunk (7 bits may spill into the shift)
    int symbols_per_word64() const { return (64 - 7) / bits_; }
    int chunks64() const { return (l_ + symbols_per_word64() - 1) / symbols_per_word64(); }
    // bit at each group's lowest position, over a full 64-bit chunk
    uint64_t group_lsb64() const { return group_lsb64_; }
    // mask covering nsym packed symbols of a chunk
    uint64_t chunk_mask(int nsym) const {
        const int bits = nsym * bits_;
        return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
    }

    // mask covering the low nsym symbols of a window
    uint16_t symbol_mask(int nsym) const {
        return static_cast<uint16_t>((uint32_t{1} << (nsym * bits_)) - 1);
    }

    // group decomposition of an l-mer: full 16-bit windows plus a masked tail
    int full_groups() const { return l_ / group_; }
    int tail_symbols() const { return l_ % group_; }
    uint16_t tail_mask() const { return tail_mask_; }

    std::string decode_window(uint32_t seq, uint32_t offset, int len) const;

    uint64_t packed_words() const;  // 8-byte words held by packed + code storage

private:
    Alphabet alpha_;
    std::vector<std::string> raw_;
    std::vector<uint8_t> codes_;   // n*m symbol codes
    std::vector<uint8_t> packed_;  // n*stride bytes, zero padded
    std::vector<LmerRef> refs_;    // id -> (seq, offset) without the division
    size_t stride_ = 0;
    int n_ = 0, m_ = 0, l_ = 0;
    int bits_ = 0, group_ = 0;
    uint32_t window_mask_ = 0;
    uint16_t tail_mask_ = 0;
    uint64_t group_lsb64_ = 0;
};

// lowest bit of every non-zero b-bit group, for a chunk already masked to
// whole symbols
inline uint64_t nonzero_groups64(uint64_t x, int bits, uint64_t lsb) {
    uint64_t y = x;
    for (int i = 1; i < bits; ++i) y |= x >> i;
    return y & lsb;
}

// l-mer packed into 64-bit chunks of symbols_per_word64() symbols each
struct PackedChunks {
    std::array<uint64_t, 32> c{};
};

void pack_candidate64(const PackedSequenceSet& set, const uint8_t* codes, PackedChunks& out);

// popcount-based distance; exact, no tables
inline int hamming64_unchecked(const PackedSequenceSet& set, LmerRef a, LmerRef b) {
    const int bits = set.alphabet().bits_per_symbol();
    const int spw = set.symbols_per_word64();
    const uint64_t lsb = set.group_lsb64();
    const int l = set.motif_length();
    int dist = 0;
    for (int pos = 0; pos < l; pos += spw) {
        const uint64_t mask = set.chunk_mask(std::min(spw, l - pos));
        const uint64_t x = (set.window64(a.seq, a.offset + static_cast<uint32_t>(pos)) ^
                            set.window64(b.seq, b.offset + static_cast<uint32_t>(pos))) &
                           mask;
        dist += std::popcount(nonzero_groups64(x, bits, lsb));
    }
    return dist;
}

inline int hamming64_cand(const PackedSequenceSet& set, const PackedChunks& cand, LmerRef b) {
    const int bits = set.alphabet().bits_per_symbol();
    const int spw = set.symbols_per_word64();
    const uint64_t lsb = set.group_lsb64();
    const int l = set.motif_length();
    int dist = 0;
    for (int pos = 0, w = 0; pos < l; pos += spw, ++w) {
        const uint64_t mask = set.chunk_mask(std::min(spw, l - pos));
        const uint64_t x =
            (cand.c[static_cast<size_t>(w)] ^ set.window64(b.seq, b.offset + static_cast<uint32_t>(pos))) & mask;
        dist += std::popcount(nonzero_groups64(x, bits, lsb));
    }
    return dist;
}

// Candidate l-mer packed into the same window layout as the input set, so it
// can be matched against input windows at group stride.
struct PackedWindows {
    std::array<uint16_t, 64> win{};
    int groups = 0;
};

void pack_candidate(const PackedSequenceSet& set, const uint8_t* codes, PackedWindows& out);

// Table-driven Hamming distance between two l-mers of the set. The checked
// variant validates offsets; the unchecked one is the hot path.
int hamming(const PackedSequenceSet& set, const GroupPopcountTable& table, LmerRef a, LmerRef b);

inline int hamming_unchecked(const PackedSequenceSet& set, const GroupPopcountTable& table,
                             LmerRef a, LmerRef b) {
    const int g = set.alphabet().symbols_per_group16();
    const int full = set.full_groups();
    int dist = 0;
    uint32_t pos = 0;
    for (int i = 0; i < full; ++i, pos += g)
        dist += table.count(static_cast<uint16_t>(set.window16(a.seq, a.offset + pos) ^
                                                  set.window16(b.seq, b.offset + pos)));
    if (set.tail_symbols() > 0)
        dist += table.count(static_cast<uint16_t>(
            (set.window16(a.seq, a.offset + pos) ^ set.window16(b.seq, b.offset + pos)) &
            set.tail_mask()));
    return dist;
}

// distance between a packed candidate and an input l-mer, stopping early once
// the running count exceeds cap (returns cap+1 in that case)
inline int hamming_capped(const PackedSequenceSet& set, const GroupPopcountTable& table,
                          const PackedWindows& cand, LmerRef b, int cap) {
    const int g = set.alphabet().symbols_per_group16();
    const int full = set.full_groups();
    int dist = 0;
    uint32_t pos = 0;
    for (int i = 0; i < full; ++i, pos += g) {
        dist += table.count(static_cast<uint16_t>(cand.win[i] ^ set.window16(b.seq, b.offset + pos)));
        if (dist > cap) return cap + 1;
    }
    if (set.tail_symbols() > 0) {
        dist += table.count(static_cast<uint16_t>(
            (cand.win[full] ^ set.window16(b.seq, b.offset + pos)) & set.tail_mask()));
        if (dist > cap) return cap + 1;
    }
    return dist;
}

}  // namespace pms8
