#include "pms8/alphabet.hpp"

#include <cctype>
#include <stdexcept>

namespace pms8 {

Alphabet::Alphabet(std::string symbols, std::string name)
    : symbols_(std::move(symbols)), name_(std::move(name)) {
    if (symbols_.size() < 2)
        throw std::invalid_argument("alphabet needs at least 2 symbols, got \"" + symbols_ + "\"");
    code_of_.fill(-1);
    for (size_t i = 0; i < symbols_.size(); ++i) {
        const auto c = static_cast<uint8_t>(symbols_[i]);
        if (code_of_[c] >= 0)
            throw std::invalid_argument(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
        code_of_[c] = static_cast<int16_t>(i);
    }
    bits_ = 1;
    while ((size_t{1} << bits_) < symbols_.size()) ++bits_;
    if (bits_ > 16)
        throw std::invalid_argument("alphabet too large: " + std::to_string(symbols_.size()) + " symbols");
    group_ = 16 / bits_;
}

uint8_t Alphabet::code(char c) const {
    const int16_t v = code_of_[static_cast<uint8_t>(c)];
    if (v < 0)
        throw std::invalid_argument(std::string("symbol '") + c + "' not in alphabet " + name_);
    return static_cast<uint8_t>(v);
}

std::string Alphabet::decode(const uint8_t* codes, int len) const {
    std::string out(static_cast<size_t>(len), '\0');
    for (int i = 0; i < len; ++i) out[static_cast<size_t>(i)] = symbols_[codes[i]];
    return out;
}

Alphabet Alphabet::dna() { return Alphabet("ACGT", "dna"); }

Alphabet Alphabet::protein() { return Alphabet("ACDEFGHIKLMNPQRSTVWY", "protein"); }

Alphabet Alphabet::custom(std::string_view symbols) {
    std::string up(symbols);
    for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return Alphabet(up, "custom:" + up);
}

Alphabet Alphabet::named(std::string_view name) {
    if (name == "dna") return dna();
    if (name == "protein") return protein();
    constexpr std::string_view prefix = "custom:";
    if (name.substr(0, prefix.size()) == prefix) return custom(name.substr(prefix.size()));
    throw std::invalid_argument("unknown alphabet \"" + std::string(name) +
                                "\" (expected dna, protein or custom:<symbols>)");
}

}  // namespace pms8
