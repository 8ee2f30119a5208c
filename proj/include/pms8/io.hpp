#pragma once

#include <map>
#include <string>
#include <vector>

namespace pms8 {

// Sequences read from disk, uppercase-normalized. metadata holds any
// "; key=value" comment lines found before the first record.
struct SequenceFile {
    std::vector<std::string> names;
    std::vector<std::string> sequences;
    std::map<std::string, std::string> metadata;
};

SequenceFile read_fasta(const std::string& path);
// one sequence per line; blank lines and ';' comments are skipped
SequenceFile read_plain(const std::string& path);
// sniffs the format: '>' record marker means FASTA, anything else plain text
SequenceFile read_sequences(const std::string& path);

SequenceFile parse_fasta(const std::string& text);
SequenceFile parse_plain(const std::string& text);

void write_fasta(const std::string& path, const std::vector<std::string>& names,
                 const std::vector<std::string>& sequences,
                 const std::vector<std::pair<std::string, std::string>>& metadata);

}  // namespace pms8
