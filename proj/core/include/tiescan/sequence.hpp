#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace tiescan {

// One observation: a numeric vector (rows == 1) or a dense row-major
// matrix. Adjacency matrices are stored with 0/1 entries. Equality is
// exact and elementwise; this is what defines a "repeat".
struct Observation {
    std::vector<double> data;
    int rows = 1;
    int cols = 0;

    bool operator==(const Observation& other) const = default;
    bool operator<(const Observation& other) const;

    static Observation vector(std::vector<double> values);
    static Observation matrix(std::vector<double> values, int rows, int cols);
};

using ObservationSequence = std::vector<Observation>;

// Time-ordered sequence collapsed to categories of exactly equal values.
// Category indices are assigned in order of first appearance.
struct CategorizedSequence {
    std::vector<int> labels; // size n, values in [0, K)
    std::vector<int> counts; // size K, counts[k] = multiplicity m_k

    int n() const { return static_cast<int>(labels.size()); }
    int K() const { return static_cast<int>(counts.size()); }

    void validate() const;
};

struct Categorized {
    CategorizedSequence seq;
    ObservationSequence representatives; // one per category, first occurrence
};

Categorized categorize(const ObservationSequence& observations);

// Convenience for already-discrete data (tests, permutation internals).
CategorizedSequence sequence_from_labels(std::vector<int> labels);

// A split of the sequence into group 1 and group 2. Single-change t puts
// positions 1..t (1-based) into group 1. An interval (t1, t2) puts the
// half-open block [t1, t2), i.e. positions t1..t2-1, into group 1; with
// this convention interval (1, t+1) and single-change t coincide.
struct GroupSplit {
    enum class Kind { single, interval };
    Kind kind = Kind::single;
    int t = 0;
    int t1 = 0;
    int t2 = 0;

    static GroupSplit at(int t);
    static GroupSplit interval(int t1, int t2);

    int group1_size() const;
    bool contains(int position_1based) const;
    void validate(int n) const;
};

// Per-category counts (n1, n2) of the two groups under a split.
std::pair<std::vector<int>, std::vector<int>>
contingency_at(const CategorizedSequence& seq, const GroupSplit& split);

CategorizedSequence reverse(const CategorizedSequence& seq);

} // namespace tiescan
