#include "pms8/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pms8 {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void upcase(std::string& s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void parse_comment(const std::string& line, SequenceFile& out) {
    // "; key=value" annotations; anything else is a free-form comment
    std::string body = strip(line.substr(1));
    size_t eq = body.find('=');
    if (eq == std::string::npos || eq == 0) return;
    out.metadata[strip(body.substr(0, eq))] = strip(body.substr(eq + 1));
}

}  // namespace

SequenceFile parse_fasta(const std::string& text) {
    SequenceFile out;
    std::istringstream in(text);
    std::string line;
    std::string current;
    bool have_record = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == ';') {
            if (!have_record) parse_comment(line, out);
            continue;
        }
        if (line[0] == '>') {
            if (have_record) out.sequences.push_back(std::move(current));
            current.clear();
            have_record = true;
            out.names.push_back(strip(line.substr(1)));
            continue;
        }
        if (!have_record)
            throw std::runtime_error("malformed FASTA: sequence data before any '>' header at line " +
                                     std::to_string(lineno));
        std::string chunk = strip(line);
        upcase(chunk);
        current += chunk;
    }
    if (have_record) out.sequences.push_back(std::move(current));
    if (out.sequences.empty()) throw std::runtime_error("malformed FASTA: no records found");
    for (size_t i = 0; i < out.sequences.size(); ++i)
        if (out.sequences[i].empty())
            throw std::runtime_error("malformed FASTA: record " + std::to_string(i + 1) + " (" +
                                     out.names[i] + ") is empty");
    return out;
}

SequenceFile parse_plain(const std::string& text) {
    SequenceFile out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string s = strip(line);
        if (s.empty() || s[0] == ';') {
            if (!s.empty()) parse_comment(s, out);
            continue;
        }
        upcase(s);
        out.sequences.push_back(std::move(s));
    }
    if (out.sequences.empty()) throw std::runtime_error("no sequences found");
    return out;
}

SequenceFile read_fasta(const std::string& path) { return parse_fasta(slurp(path)); }

SequenceFile read_plain(const std::string& path) { return parse_plain(slurp(path)); }

SequenceFile read_sequences(const std::string& path) {
    const std::string text = slurp(path);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string s = strip(line);
        if (s.empty() || s[0] == ';') continue;  // comments may precede either format
        return s[0] == '>' ? parse_fasta(text) : parse_plain(text);
    }
    return parse_plain(text);
}

void write_fasta(const std::string& path, const std::vector<std::string>& names,
                 const std::vector<std::string>& sequences,
                 const std::vector<std::pair<std::string, std::string>>& metadata) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& [k, v] : metadata) out << "; " << k << "=" << v << "\n";
    constexpr size_t wrap = 70;
    for (size_t i = 0; i < sequences.size(); ++i) {
        out << ">" << (i < names.size() ? names[i] : "seq_" + std::to_string(i)) << "\n";
        const std::string& s = sequences[i];
        for (size_t pos = 0; pos < s.size(); pos += wrap)
            out << s.substr(pos, wrap) << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace pms8
