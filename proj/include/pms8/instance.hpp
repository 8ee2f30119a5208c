#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pms8/problem.hpp"

namespace pms8 {

using BigCount = boost::multiprecision::cpp_int;

enum class MutationMode {
    at_most_d,   // d positions rewritten with uniform symbols (may keep the old one)
    exactly_d,   // d positions forced to a different symbol
};

struct PlantedInstanceSpec {
    int n = 20;
    int m = 600;
    int l = 0;
    int d = 0;
    Alphabet alphabet = Alphabet::dna();
    uint64_t seed = 0;
    MutationMode mutation = MutationMode::at_most_d;
};

struct PlantedInstance {
    Problem problem;
    std::string motif;
    std::vector<int> positions;  // planted window offset per sequence
    PlantedInstanceSpec spec;
};

// i.i.d. uniform background, one uniform random motif, a mutated copy planted
// at a uniform random offset in each sequence. Byte-reproducible from seed on
// any platform (mt19937_64 stream + rejection sampling).
PlantedInstance generate_planted_instance(const PlantedInstanceSpec& spec);

// unbiased draw in [0, bound) consuming the engine deterministically
uint64_t bounded_draw(std::mt19937_64& rng, uint64_t bound);

// |{v : Hd(u,v) <= d}| = sum_{i<=d} C(l,i) (sigma-1)^i, exact
BigCount neighborhood_size(int l, int d, int sigma);

// Background-chance motif statistics for an n x m instance.
struct SpuriousModel {
    BigCount neighborhood = 0;        // N_d
    double per_lmer_probability = 0;  // p = N_d / sigma^l
    double per_string_probability = 0;  // q = 1 - (1-p)^(m-l+1)
    double expectation = 0;           // E = sigma^l * q^n
    double log_expectation = 0;       // natural log of E
};

SpuriousModel spurious_model(int n, int m, int l, int d, int sigma);
double expected_spurious_motifs(int n, int m, int l, int d, int sigma);

// Smallest d whose expected chance-motif count reaches 1. Follows the
// convention behind the standard benchmark series, which counts a window and
// its reverse orientation per position (2(m-l+1) trials per sequence);
// expected_spurious_motifs() above stays single-orientation.
int smallest_challenging_d(int l, int n, int m, int sigma);

struct GridCell {
    int l = 0;
    int d = 0;
    double expectation = 0;
    bool excluded = false;
};

// Marks (l,d) cells whose expected chance-motif count exceeds cap.
std::vector<GridCell> annotate_spurious_grid(std::span<const std::pair<int, int>> grid, double cap,
                                             int n, int m, int sigma);

}  // namespace pms8
