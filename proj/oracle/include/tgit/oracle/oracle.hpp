// Brute-force reference for semistable loci, used only by tests.
//
// Bounded enumeration of monomial sections: every chart it reports satisfies
// the definition clause by clause, so its loci are inner bounds.
#pragma once

#include "tgit/integer.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <vector>

namespace tgit::oracle {

using Face = std::vector<std::size_t>;

/// Plain problem data. `faces` lists every cone of the fan by ray indices.
struct Instance {
    std::size_t lattice_rank = 0;
    std::vector<IntVector> rays;
    std::vector<Face> faces;
    /// d rows of length lattice_rank: the weight map on exponents.
    std::vector<IntVector> weight_rows;
    /// Divisor coefficient vectors; one entry is the single-divisor case.
    std::vector<IntVector> divisors;
    /// One character shift per divisor (empty = canonical).
    std::vector<IntVector> shifts;
    bool group = false;
};

struct SearchBounds {
    long long n_max = 4;
    long long box = 8;
    long long degree_box = 3;
};

struct Witness {
    Face chart;
    std::vector<long long> degree;
    std::vector<std::vector<long long>> monomials;
};

struct Locus {
    std::set<Face> faces;
    std::map<Face, Witness> witnesses;
};

Locus enumerate_witnesses(const Instance& instance, const SearchBounds& bounds);

struct Sample {
    std::vector<long long> character;
    std::set<Face> locus;
};

/// Trivial-bundle loci at every character in [-resolution, resolution]^d.
/// `instance` supplies the fan and the weight map; its divisors are ignored.
std::vector<Sample> sample_chambers(const Instance& instance, long long resolution, const SearchBounds& bounds);

}  // namespace tgit::oracle
