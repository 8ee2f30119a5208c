#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace pms8 {

// Symbol set with a dense code assignment. Codes follow the order of the
// symbol string, so DNA "ACGT" maps A=0, C=1, G=2, T=3. bits_per_symbol() is
// the smallest b with 2^b >= size(); symbols_per_group16() is how many whole
// symbols fit in one 16-bit window (8 for DNA, 3 for protein).
class Alphabet {
public:
    static Alphabet dna();
    static Alphabet protein();
    static Alphabet custom(std::string_view symbols);
    // accepts "dna", "protein" or "custom:<symbols>"
    static Alphabet named(std::string_view name);

    int size() const { return static_cast<int>(symbols_.size()); }
    int bits_per_symbol() const { return bits_; }
    int symbols_per_group16() const { return group_; }

    bool contains(char c) const { return code_of_[static_cast<uint8_t>(c)] >= 0; }
    // throws std::invalid_argument on a foreign symbol
    uint8_t code(char c) const;
    char symbol(uint8_t code) const { return symbols_[code]; }
    const std::string& symbols() const { return symbols_; }
    const std::string& name() const { return name_; }

    std::string decode(const uint8_t* codes, int len) const;

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
    Alphabet(std::string symbols, std::string name);

    std::string symbols_;
    std::string name_;
    std::array<int16_t, 256> code_of_{};
    int bits_ = 0;
    int group_ = 0;
};

}  // namespace pms8
